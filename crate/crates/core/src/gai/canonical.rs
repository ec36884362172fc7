use std::collections::BTreeMap;

use super::model::{GaiModel, GaiTerm, TabulatedFunction};
use crate::error::{Error, Result};
use crate::rational::Rational;

/// Canonical decomposition along the ordered `scopes`, anchored at `anchor`:
/// `u_j(x) = sum over K ⊆ {1..j-1} of (-1)^|K| U(x[S_j ∩ (∩_{k∈K} S_k)])`,
/// where `x[A]` keeps `x` on `A` and takes the anchor elsewhere.
///
/// The terms depend on the order of `scopes`; their sum equals `U` whenever the
/// scopes cover its dependence structure.
pub fn canonical_decomposition(
    u: &TabulatedFunction,
    scopes: &[Vec<usize>],
    anchor: &[u32],
) -> Result<GaiModel> {
    let space = u.space();
    space.check(anchor)?;
    for scope in scopes {
        space.check_scope(scope)?;
    }
    let mut terms = Vec::with_capacity(scopes.len());
    for (j, scope) in scopes.iter().enumerate() {
        if scope.len() > 31 {
            return Err(Error::InvalidArgument(format!("scope {scope:?} is too wide")));
        }
        // net inclusion-exclusion sign per subset of S_j, as bitmasks over
        // positions in S_j
        let full: u32 = (1u32 << scope.len()) - 1;
        let mut signs: BTreeMap<u32, i64> = BTreeMap::from([(full, 1)]);
        for earlier in &scopes[..j] {
            let mask: u32 = scope
                .iter()
                .enumerate()
                .filter(|(_, a)| earlier.contains(a))
                .map(|(pos, _)| 1u32 << pos)
                .fold(0, |acc, b| acc | b);
            let mut next = signs.clone();
            for (&subset, &sign) in &signs {
                *next.entry(subset & mask).or_insert(0) -= sign;
            }
            next.retain(|_, s| *s != 0);
            signs = next;
        }
        let mut point = anchor.to_vec();
        let term = GaiTerm::from_fn(space, scope.clone(), |local| {
            let mut acc = Rational::ZERO;
            for (&subset, &sign) in &signs {
                for (pos, &attr) in scope.iter().enumerate() {
                    point[attr] = if subset & (1 << pos) != 0 {
                        local[pos]
                    } else {
                        anchor[attr]
                    };
                }
                acc += u.value_at(&point) * Rational::from(sign);
            }
            acc
        })?;
        terms.push(term);
    }
    GaiModel::new(space.clone(), terms)
}
