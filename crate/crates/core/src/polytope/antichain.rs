use std::fmt;

use crate::error::{Error, Result};

/// Pairwise incomparable points of `{0..k}^2`, other than `{(0,0)}`.
///
/// Points are kept sorted by first coordinate, so second coordinates strictly
/// decrease along the list.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Antichain {
    points: Vec<(u32, u32)>,
}

impl Antichain {
    pub fn new(k: u32, mut points: Vec<(u32, u32)>) -> Result<Self> {
        if points.is_empty() {
            return Err(Error::InvalidAntichain("no points".into()));
        }
        if let Some(p) = points.iter().find(|(a, b)| *a > k || *b > k) {
            return Err(Error::InvalidAntichain(format!("{p:?} exceeds level {k}")));
        }
        points.sort_unstable();
        points.dedup();
        for w in points.windows(2) {
            let ((a0, b0), (a1, b1)) = (w[0], w[1]);
            // sorted by first coordinate, so a0 <= a1; comparable iff b0 <= b1
            if b0 <= b1 {
                return Err(Error::InvalidAntichain(format!(
                    "({a0},{b0}) and ({a1},{b1}) are comparable"
                )));
            }
        }
        if points == [(0, 0)] {
            return Err(Error::InvalidAntichain(
                "{(0,0)} does not give a normalized capacity".into(),
            ));
        }
        Ok(Antichain { points })
    }

    pub fn points(&self) -> &[(u32, u32)] {
        &self.points
    }

    pub fn len(&self) -> usize {
        self.points.len()
    }

    pub fn is_empty(&self) -> bool {
        self.points.is_empty()
    }

    /// True for `{(l,0)}` and `{(0,l)}`, whose vertices depend on one attribute.
    pub fn is_on_axis(&self) -> bool {
        self.points.len() == 1 && (self.points[0].0 == 0 || self.points[0].1 == 0)
    }

    /// Joins of consecutive points, `x^l ∨ x^{l+1}`.
    pub fn consecutive_joins(&self) -> Vec<(u32, u32)> {
        self.points
            .windows(2)
            .map(|w| (w[0].0.max(w[1].0), w[0].1.max(w[1].1)))
            .collect()
    }
}

impl fmt::Display for Antichain {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str("{")?;
        for (i, (a, b)) in self.points.iter().enumerate() {
            if i > 0 {
                f.write_str(", ")?;
            }
            write!(f, "({a},{b})")?;
        }
        f.write_str("}")
    }
}

fn combinations(pool: u32, size: usize) -> Vec<Vec<u32>> {
    crate::gai::subsets_of_size(pool as usize, size)
        .into_iter()
        .map(|c| c.into_iter().map(|x| x as u32).collect())
        .collect()
}

/// Every antichain of `{0..k}^2` except `{(0,0)}`, ordered by size and then
/// lexicographically by sorted points.
///
/// An antichain of size `l` pairs `l` distinct first coordinates, increasing,
/// with `l` distinct second coordinates, decreasing, so there are
/// `C(k+1, l)^2` of them.
pub fn enumerate_antichains(k: u32) -> Vec<Antichain> {
    let mut out = Vec::new();
    for size in 1..=(k as usize + 1) {
        let choices = combinations(k + 1, size);
        let mut group: Vec<Antichain> = Vec::with_capacity(choices.len() * choices.len());
        for firsts in &choices {
            for seconds in &choices {
                let points: Vec<(u32, u32)> = firsts
                    .iter()
                    .zip(seconds.iter().rev())
                    .map(|(&a, &b)| (a, b))
                    .collect();
                if points == [(0, 0)] {
                    continue;
                }
                group.push(Antichain { points });
            }
        }
        group.sort();
        out.extend(group);
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    /// Every subset of the `(k+1)^2` grid that is an antichain.
    fn exhaustive(k: u32) -> Vec<Vec<(u32, u32)>> {
        let grid: Vec<(u32, u32)> = (0..=k).flat_map(|a| (0..=k).map(move |b| (a, b))).collect();
        let mut found = Vec::new();
        for mask in 1u64..(1u64 << grid.len()) {
            let pts: Vec<(u32, u32)> = (0..grid.len())
                .filter(|i| mask & (1 << i) != 0)
                .map(|i| grid[i])
                .collect();
            let incomparable = pts.iter().enumerate().all(|(i, p)| {
                pts[i + 1..].iter().all(|q| {
                    !((p.0 <= q.0 && p.1 <= q.1) || (q.0 <= p.0 && q.1 <= p.1))
                })
            });
            if incomparable && pts != [(0, 0)] {
                found.push(pts);
            }
        }
        found
    }

    #[test]
    fn k1_list() {
        let all = enumerate_antichains(1);
        let pts: Vec<_> = all.iter().map(|a| a.points().to_vec()).collect();
        assert_eq!(
            pts,
            vec![vec![(0, 1)], vec![(1, 0)], vec![(1, 1)], vec![(0, 1), (1, 0)]]
        );
    }

    #[test]
    fn matches_exhaustive_search() {
        for k in 1..=3 {
            let mut expected = exhaustive(k);
            expected.sort();
            let mut got: Vec<_> = enumerate_antichains(k)
                .into_iter()
                .map(|a| a.points().to_vec())
                .collect();
            got.sort();
            assert_eq!(got, expected, "k = {k}");
        }
    }

    #[test]
    fn per_size_counts_for_k3() {
        let all = enumerate_antichains(3);
        let counts: Vec<usize> = (1..=4).map(|l| all.iter().filter(|a| a.len() == l).count()).collect();
        // the size-1 class drops {(0,0)}
        assert_eq!(counts, vec![15, 36, 16, 1]);
        assert_eq!(all.len(), 68);
    }

    #[test]
    fn validation() {
        assert!(Antichain::new(2, vec![(0, 0)]).is_err());
        assert!(Antichain::new(2, vec![(1, 1), (2, 2)]).is_err());
        assert!(Antichain::new(2, vec![(3, 0)]).is_err());
        assert!(Antichain::new(2, vec![]).is_err());
        let a = Antichain::new(2, vec![(2, 1), (1, 2)]).unwrap();
        assert_eq!(a.points(), &[(1, 2), (2, 1)]);
        assert_eq!(a.consecutive_joins(), vec![(2, 2)]);
        assert!(!a.is_on_axis());
        assert!(Antichain::new(2, vec![(0, 2)]).unwrap().is_on_axis());
    }
}
