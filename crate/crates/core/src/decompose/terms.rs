//! Variables and monotonicity rows for singleton and pair term tables, shared
//! by the decomposition and elicitation programs.

use std::ops::Range;

use crate::lp::{LinearProgram, Relation, VarId};
use crate::rational::Rational;

/// Where each table entry lives in the program. Origin entries are pinned to
/// zero and have no variable.
#[derive(Clone, Debug)]
pub(crate) struct TermLayout {
    pub bounds: Vec<u32>,
    /// `singles[i][l]` for `l` in `0..=m_i`.
    pub singles: Vec<Vec<Option<VarId>>>,
    /// Pairs `(i, j)`, `i < j`, in lexicographic order; tables row-major in
    /// `(a, b)` with `b` fastest.
    pub pairs: Vec<(usize, usize, Vec<Option<VarId>>)>,
    pub monotonicity_rows: Range<usize>,
}

impl TermLayout {
    pub fn pair_entry(&self, pair: usize, a: u32, b: u32) -> Option<VarId> {
        let (_, j, table) = &self.pairs[pair];
        table[a as usize * (self.bounds[*j] as usize + 1) + b as usize]
    }

    /// Coefficients of `U(z)`: one lookup per term whose entry is not an origin.
    pub fn lookup(&self, z: &[u32]) -> Vec<(VarId, Rational)> {
        let mut out = Vec::new();
        for (i, table) in self.singles.iter().enumerate() {
            if let Some(var) = table[z[i] as usize] {
                out.push((var, Rational::ONE));
            }
        }
        for (p, (i, j, _)) in self.pairs.iter().enumerate() {
            if let Some(var) = self.pair_entry(p, z[*i], z[*j]) {
                out.push((var, Rational::ONE));
            }
        }
        out
    }

    /// Reads the tables from a solved point, zero at the origins.
    pub fn read(&self, point: &[Rational]) -> (Vec<Vec<Rational>>, Vec<Vec<Rational>>) {
        let get = |slot: &Option<VarId>| slot.map_or(Rational::ZERO, |v| point[v.0].clone());
        let singles = self.singles.iter().map(|t| t.iter().map(get).collect()).collect();
        let pairs = self.pairs.iter().map(|(_, _, t)| t.iter().map(get).collect()).collect();
        (singles, pairs)
    }
}

/// Adds table variables in `[0, 1]` and one `>= 0` row per covering pair of
/// each table.
pub(crate) fn add_monotone_terms(lp: &mut LinearProgram, bounds: &[u32]) -> TermLayout {
    let n = bounds.len();
    let unit = || (Some(Rational::ZERO), Some(Rational::ONE));
    let mut singles = Vec::with_capacity(n);
    for (i, &m) in bounds.iter().enumerate() {
        let mut table = vec![None];
        for l in 1..=m {
            let (lo, hi) = unit();
            table.push(Some(lp.add_variable(format!("s{i}_{l}"), lo, hi)));
        }
        singles.push(table);
    }
    let mut pairs = Vec::with_capacity(n * n.saturating_sub(1) / 2);
    for i in 0..n {
        for j in i + 1..n {
            let mut table = Vec::with_capacity((bounds[i] as usize + 1) * (bounds[j] as usize + 1));
            for a in 0..=bounds[i] {
                for b in 0..=bounds[j] {
                    if a == 0 && b == 0 {
                        table.push(None);
                    } else {
                        let (lo, hi) = unit();
                        table.push(Some(lp.add_variable(format!("p{i}_{j}_{a}_{b}"), lo, hi)));
                    }
                }
            }
            pairs.push((i, j, table));
        }
    }

    let start = lp.num_constraints();
    let step = |lp: &mut LinearProgram, name: String, lower: Option<VarId>, upper: VarId| {
        let mut terms = vec![(upper, Rational::ONE)];
        if let Some(lower) = lower {
            terms.push((lower, Rational::NEG_ONE));
        }
        lp.add_constraint(name, terms, Relation::Ge, Rational::ZERO);
    };
    for (i, table) in singles.iter().enumerate() {
        for l in 1..table.len() {
            step(lp, format!("mono_s{i}_{l}"), table[l - 1], table[l].expect("off origin"));
        }
    }
    for (i, j, table) in &pairs {
        let width = bounds[*j] as usize + 1;
        for a in 0..=bounds[*i] as usize {
            for b in 0..width {
                let here = table[a * width + b];
                if a > 0 {
                    let upper = here.expect("off origin");
                    step(lp, format!("mono_p{i}_{j}_{a}_{b}_a"), table[(a - 1) * width + b], upper);
                }
                if b > 0 {
                    let upper = here.expect("off origin");
                    step(lp, format!("mono_p{i}_{j}_{a}_{b}_b"), table[a * width + b - 1], upper);
                }
            }
        }
    }
    let end = lp.num_constraints();
    TermLayout {
        bounds: bounds.to_vec(),
        singles,
        pairs,
        monotonicity_rows: start..end,
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::decompose::constraint_census;

    #[test]
    fn row_count_matches_census() {
        for bounds in [vec![1, 1], vec![1, 2, 3], vec![4; 5], vec![2, 1, 3, 1]] {
            let mut lp = LinearProgram::new();
            let layout = add_monotone_terms(&mut lp, &bounds);
            let census = constraint_census(&bounds).unwrap();
            assert_eq!(
                dashu_int::UBig::from(layout.monotonicity_rows.len()),
                census.decomposed_monotonicity_constraints
            );
            // pinned origins account for the difference in variables
            let origins = bounds.len() + bounds.len() * (bounds.len() - 1) / 2;
            assert_eq!(
                dashu_int::UBig::from(lp.num_variables() + origins),
                census.variables
            );
        }
    }

    #[test]
    fn pairs_follow_lexicographic_order() {
        let mut lp = LinearProgram::new();
        let layout = add_monotone_terms(&mut lp, &[1, 1, 1, 1]);
        let order: Vec<_> = layout.pairs.iter().map(|(i, j, _)| (*i, *j)).collect();
        assert_eq!(order, vec![(0, 1), (0, 2), (0, 3), (1, 2), (1, 3), (2, 3)]);
    }

    #[test]
    fn singleton_support_lookup() {
        // u_i(z_i) + sum_l u_il(z_i, 0) at z = 2 e_1 on three attributes
        let mut lp = LinearProgram::new();
        let layout = add_monotone_terms(&mut lp, &[2, 2, 2]);
        let terms = layout.lookup(&[0, 2, 0]);
        assert_eq!(terms.len(), 3);
        let names: Vec<_> = terms.iter().map(|(v, _)| lp.variable(*v).name.clone()).collect();
        assert_eq!(names, vec!["s1_2", "p0_1_0_2", "p1_2_2_0"]);
    }
}
