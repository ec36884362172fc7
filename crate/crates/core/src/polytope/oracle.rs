//! Brute-force oracles for the vertex theory; small grids only.

use crate::error::{Error, Result};
use crate::kary::{
    check_capacity, ensure_two_additive, mobius, GridShape, KaryCapacity, KaryGame,
};
use crate::lp::{solve_with, LinearProgram, LpOptions, LpStatus, Relation, Sense, VarId};
use crate::rational::{is_positive, Rational};

/// Largest grid accepted by [`is_extreme_bruteforce`].
pub const EXTREME_GRID_LIMIT: usize = 1000;

/// Largest grid accepted by [`enumerate_01_2additive_bruteforce`]; the search
/// space is `2^{(k+1)^n}` assignments.
pub const ENUMERATION_GRID_LIMIT: usize = 20;

/// Whether `v` is an extreme point of the 2-additive capacity polytope.
///
/// Searches, in Möbius coordinates restricted to atoms of support size 1 or 2,
/// for a nonzero `d` with `v + d` and `v - d` both monotone and normalized:
/// `|D(z + 1_i) - D(z)| <= v(z + 1_i) - v(z)` on covering pairs and
/// `D(top) = 0`. The feasible set is symmetric, so `v` is extreme iff every
/// coordinate of `d` has maximum zero.
pub fn is_extreme_bruteforce(v: &KaryCapacity) -> Result<bool> {
    let shape = v.shape();
    if shape.len() > EXTREME_GRID_LIMIT {
        return Err(Error::BudgetExceeded {
            what: "extremality oracle grid",
            required: shape.len().to_string(),
            limit: EXTREME_GRID_LIMIT.to_string(),
        });
    }
    let report = check_capacity(v);
    if !report.is_capacity() {
        return Err(Error::NotACapacity(Box::new(report)));
    }
    ensure_two_additive(v)?;

    let mut lp = LinearProgram::new();
    let atoms: Vec<(Vec<u32>, VarId)> = shape
        .points()
        .filter(|p| (1..=2).contains(&p.iter().filter(|&&c| c > 0).count()))
        .map(|p| {
            let var = lp.add_variable(
                format!("d{}", crate::kary::format_coords(&p)),
                Some(Rational::NEG_ONE),
                Some(Rational::ONE),
            );
            (p, var)
        })
        .collect();
    // D(z) = sum of d_a over atoms a <= z
    let below = |z: &[u32]| -> Vec<(VarId, Rational)> {
        atoms
            .iter()
            .filter(|(a, _)| a.iter().zip(z).all(|(x, y)| x <= y))
            .map(|(_, var)| (*var, Rational::ONE))
            .collect()
    };
    for z in shape.points() {
        let idx = shape.index(&z);
        for axis in 0..z.len() {
            if z[axis] == shape.bound(axis) {
                continue;
            }
            let mut up = z.clone();
            up[axis] += 1;
            let slack = &v.values()[idx + shape.stride(axis)] - &v.values()[idx];
            // atoms below `up` but not below `z`
            let diff: Vec<(VarId, Rational)> = atoms
                .iter()
                .filter(|(a, _)| a[axis] == up[axis] && a.iter().zip(&up).all(|(x, y)| x <= y))
                .map(|(_, var)| (*var, Rational::ONE))
                .collect();
            if diff.is_empty() {
                continue;
            }
            let neg = diff.iter().map(|(var, c)| (*var, -c)).collect();
            lp.add_constraint("up", diff, Relation::Le, slack.clone());
            lp.add_constraint("down", neg, Relation::Le, slack);
        }
    }
    lp.add_constraint("top", below(&shape.top()), Relation::Eq, Rational::ZERO);

    for (_, var) in &atoms {
        lp.set_objective(Sense::Maximize, vec![(*var, Rational::ONE)]);
        let outcome = solve_with(&lp, &LpOptions::bare(LpOptions::default().max_pivots))?;
        match outcome.status {
            LpStatus::Optimal => {
                if is_positive(outcome.objective_value.as_ref().expect("optimal value")) {
                    return Ok(false);
                }
            }
            status => {
                return Err(Error::Lp(crate::lp::LpError::Internal(format!(
                    "perturbation program ended {status:?}"
                ))))
            }
        }
    }
    Ok(true)
}

/// Every 0-1-valued 2-additive k-ary capacity on `{0..k}^n`, by exhaustive
/// search over up-sets with monotone pruning, in lexicographic order of value
/// tables.
pub fn enumerate_01_2additive_bruteforce(n: usize, k: u32) -> Result<Vec<KaryCapacity>> {
    let shape = GridShape::uniform(n, k)?;
    if shape.len() > ENUMERATION_GRID_LIMIT {
        return Err(Error::BudgetExceeded {
            what: "0-1 capacity enumeration grid",
            required: shape.len().to_string(),
            limit: ENUMERATION_GRID_LIMIT.to_string(),
        });
    }
    let mut found = Vec::new();
    let mut table = vec![false; shape.len()];
    search(&shape, 1, &mut table, &mut found);
    Ok(found)
}

fn search(shape: &GridShape, idx: usize, table: &mut Vec<bool>, found: &mut Vec<KaryCapacity>) {
    if idx == shape.len() {
        if !table[idx - 1] {
            return;
        }
        let values = table
            .iter()
            .map(|&b| if b { Rational::ONE } else { Rational::ZERO })
            .collect();
        let game = KaryGame::new(shape.n(), shape.bound(0), values).expect("zero at the origin");
        if mobius(&game).degree() <= 2 {
            found.push(KaryCapacity::new_unchecked(game));
        }
        return;
    }
    let forced = (0..shape.n())
        .any(|axis| shape.coord(idx, axis) > 0 && table[idx - shape.stride(axis)]);
    if !forced {
        table[idx] = false;
        search(shape, idx + 1, table, found);
    }
    table[idx] = true;
    search(shape, idx + 1, table, found);
    table[idx] = false;
}
