use dashu_int::UBig;

use super::antichain::{enumerate_antichains, Antichain};
use crate::error::{Error, Result};
use crate::kary::{zeta, GridPoint, KaryCapacity, MobiusMap};
use crate::rational::Rational;

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub enum VertexSupport {
    /// The unanimity game at `threshold` on one axis.
    Singleton { attribute: usize, threshold: u32 },
    /// Minimal winning coalitions `antichain`, read on axes `(first, second)`.
    Pair {
        first: usize,
        second: usize,
        antichain: Antichain,
    },
}

impl VertexSupport {
    pub fn attributes(&self) -> Vec<usize> {
        match self {
            VertexSupport::Singleton { attribute, .. } => vec![*attribute],
            VertexSupport::Pair { first, second, .. } => vec![*first, *second],
        }
    }

    /// Minimal winning coalitions projected on the support, as `(a, b)` pairs;
    /// a singleton threshold `l` reads `(l, 0)`.
    pub fn projected_antichain(&self) -> Vec<(u32, u32)> {
        match self {
            VertexSupport::Singleton { threshold, .. } => vec![(*threshold, 0)],
            VertexSupport::Pair { antichain, .. } => antichain.points().to_vec(),
        }
    }
}

/// A 0-1-valued 2-additive k-ary capacity supported on at most two
/// attributes: an extreme point of the 2-additive capacity polytope.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct VertexCapacity {
    n: usize,
    k: u32,
    support: VertexSupport,
    mobius: MobiusMap,
}

impl VertexCapacity {
    pub fn n(&self) -> usize {
        self.n
    }

    pub fn k(&self) -> u32 {
        self.k
    }

    pub fn support(&self) -> &VertexSupport {
        &self.support
    }

    /// `+1` on the minimal winning coalitions, `-1` on consecutive joins.
    pub fn mobius(&self) -> &MobiusMap {
        &self.mobius
    }

    /// Minimal winning coalitions as full grid points.
    pub fn minimal_winning(&self) -> Vec<GridPoint> {
        self.support
            .projected_antichain()
            .into_iter()
            .map(|(a, b)| self.lift(a, b))
            .collect()
    }

    fn lift(&self, a: u32, b: u32) -> GridPoint {
        let mut coords = vec![0u32; self.n];
        match &self.support {
            VertexSupport::Singleton { attribute, .. } => coords[*attribute] = a,
            VertexSupport::Pair { first, second, .. } => {
                coords[*first] = a;
                coords[*second] = b;
            }
        }
        GridPoint::new(coords)
    }

    /// Whether `z` dominates a minimal winning coalition.
    pub fn wins(&self, z: &[u32]) -> bool {
        match &self.support {
            VertexSupport::Singleton {
                attribute,
                threshold,
            } => z[*attribute] >= *threshold,
            VertexSupport::Pair {
                first,
                second,
                antichain,
            } => antichain
                .points()
                .iter()
                .any(|&(a, b)| z[*first] >= a && z[*second] >= b),
        }
    }

    pub fn capacity(&self) -> KaryCapacity {
        KaryCapacity::new_unchecked(zeta(&self.mobius))
    }
}

fn build(n: usize, k: u32, support: VertexSupport) -> VertexCapacity {
    let mut vertex = VertexCapacity {
        n,
        k,
        support,
        mobius: MobiusMap::zero(n, k).expect("valid grid"),
    };
    let mut atoms: Vec<(GridPoint, Rational)> = vertex
        .minimal_winning()
        .into_iter()
        .map(|p| (p, Rational::ONE))
        .collect();
    if let VertexSupport::Pair { antichain, .. } = &vertex.support {
        for (a, b) in antichain.consecutive_joins() {
            atoms.push((vertex.lift(a, b), Rational::NEG_ONE));
        }
    }
    vertex.mobius = MobiusMap::new(n, k, atoms).expect("atoms lie on the grid");
    vertex
}

/// The unanimity vertex `u_{l e_i}`.
pub fn singleton_vertex(n: usize, k: u32, attribute: usize, threshold: u32) -> Result<VertexCapacity> {
    check_grid(n, k)?;
    if attribute >= n || threshold == 0 || threshold > k {
        return Err(Error::InvalidArgument(format!(
            "no singleton vertex on attribute {attribute} at level {threshold} for n={n}, k={k}"
        )));
    }
    Ok(build(
        n,
        k,
        VertexSupport::Singleton {
            attribute,
            threshold,
        },
    ))
}

/// The vertex whose minimal winning coalitions are `antichain` read on axes
/// `(first, second)`. On-axis antichains give singleton vertices.
pub fn vertex_from_antichain(
    antichain: &Antichain,
    pair: (usize, usize),
    n: usize,
    k: u32,
) -> Result<VertexCapacity> {
    check_grid(n, k)?;
    let (first, second) = pair;
    if first >= second || second >= n {
        return Err(Error::InvalidArgument(format!(
            "attribute pair ({first}, {second}) must satisfy first < second < {n}"
        )));
    }
    let antichain = Antichain::new(k, antichain.points().to_vec())?;
    if antichain.is_on_axis() {
        let (a, b) = antichain.points()[0];
        return if b == 0 {
            singleton_vertex(n, k, first, a)
        } else {
            singleton_vertex(n, k, second, b)
        };
    }
    Ok(build(
        n,
        k,
        VertexSupport::Pair {
            first,
            second,
            antichain,
        },
    ))
}

fn check_grid(n: usize, k: u32) -> Result<()> {
    if n == 0 || k == 0 {
        return Err(Error::InvalidArgument(format!("need n >= 1 and k >= 1, got n={n}, k={k}")));
    }
    Ok(())
}

/// The `<=`-minimal points where a 0-1-valued capacity equals 1, in grid
/// order. By monotonicity a winning point is minimal iff its lower covers lose.
pub fn minimal_winning_coalitions(v: &KaryCapacity) -> Result<Vec<GridPoint>> {
    let shape = v.shape();
    let mut out = Vec::new();
    for (idx, value) in v.values().iter().enumerate() {
        if !(value.is_zero() || value.is_one()) {
            return Err(Error::NotZeroOne {
                point: shape.point(idx).to_string(),
                value: value.to_string(),
            });
        }
        if !value.is_one() {
            continue;
        }
        let coords = shape.coords(idx);
        let minimal = (0..coords.len())
            .filter(|&axis| coords[axis] > 0)
            .all(|axis| v.values()[idx - shape.stride(axis)].is_zero());
        if minimal {
            out.push(GridPoint::new(coords));
        }
    }
    Ok(out)
}

/// Vertex counts of the 2-additive capacity polytope.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct VertexCensus {
    pub n: usize,
    pub k: u32,
    pub per_singleton: UBig,
    /// Vertices with support inside a fixed pair, singletons included.
    pub per_pair: UBig,
    pub total: UBig,
}

pub(crate) fn binomial(n: u64, r: u64) -> UBig {
    let r = r.min(n.saturating_sub(r));
    let mut acc = UBig::ONE;
    for i in 0..r {
        acc = acc * UBig::from(n - i) / UBig::from(i + 1);
    }
    acc
}

/// Closed-form census: `k` singleton vertices per attribute,
/// `C(2k+2, k+1) - 2` per pair, and
/// `total = [C(2k+2, k+1) - 2] n(n-1)/2 - k n (n-2)`.
pub fn count_vertices(n: usize, k: u32) -> Result<VertexCensus> {
    if n < 2 || k == 0 {
        return Err(Error::InvalidArgument(format!(
            "vertex census needs n >= 2 and k >= 1, got n={n}, k={k}"
        )));
    }
    let kk = UBig::from(k);
    let per_pair = binomial(2 * k as u64 + 2, k as u64 + 1) - UBig::from(2u8);
    let pairs = UBig::from(n) * UBig::from(n - 1) / UBig::from(2u8);
    let total = (&per_pair - UBig::from(2u8) * &kk) * pairs + &kk * UBig::from(n);
    Ok(VertexCensus {
        n,
        k,
        per_singleton: kk,
        per_pair,
        total,
    })
}

/// Deterministic stream of every vertex: supports in lexicographic order
/// (`[0], [0,1], [0,2], .., [1], [1,2], ..`), thresholds ascending for
/// singletons, antichain order for pairs. On-axis antichains are only
/// emitted as singletons.
pub fn enumerate_vertices(n: usize, k: u32) -> Result<Vertices> {
    count_vertices(n, k)?;
    let antichains = enumerate_antichains(k)
        .into_iter()
        .filter(|a| !a.is_on_axis())
        .collect();
    let mut supports = Vec::new();
    for i in 0..n {
        supports.push((i, None));
        for j in i + 1..n {
            supports.push((i, Some(j)));
        }
    }
    Ok(Vertices {
        n,
        k,
        antichains,
        supports,
        support: 0,
        item: 0,
    })
}

pub struct Vertices {
    n: usize,
    k: u32,
    antichains: Vec<Antichain>,
    supports: Vec<(usize, Option<usize>)>,
    support: usize,
    item: usize,
}

impl Iterator for Vertices {
    type Item = VertexCapacity;

    fn next(&mut self) -> Option<VertexCapacity> {
        loop {
            let &(i, j) = self.supports.get(self.support)?;
            let len = match j {
                None => self.k as usize,
                Some(_) => self.antichains.len(),
            };
            if self.item >= len {
                self.support += 1;
                self.item = 0;
                continue;
            }
            let item = self.item;
            self.item += 1;
            let support = match j {
                None => VertexSupport::Singleton {
                    attribute: i,
                    threshold: item as u32 + 1,
                },
                Some(j) => VertexSupport::Pair {
                    first: i,
                    second: j,
                    antichain: self.antichains[item].clone(),
                },
            };
            return Some(build(self.n, self.k, support));
        }
    }
}
