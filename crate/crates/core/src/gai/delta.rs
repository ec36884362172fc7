use std::fmt;

use super::model::{AttributeSpace, GaiModel, GaiTerm, TabulatedFunction};
use crate::error::{Error, Result};
use crate::kary::{advance, format_coords};
use crate::rational::Rational;

/// Two contexts at which the same variation over `scope` differs.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DeltaWitness {
    pub scope: Vec<usize>,
    pub from: Vec<u32>,
    pub to: Vec<u32>,
    pub context: Vec<u32>,
    pub other_context: Vec<u32>,
    pub value: Rational,
    pub other_value: Rational,
}

impl fmt::Display for DeltaWitness {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "variation over {:?} from ({}) to ({}) is {} at ({}) but {} at ({})",
            self.scope,
            format_coords(&self.from),
            format_coords(&self.to),
            self.value,
            format_coords(&self.context),
            self.other_value,
            format_coords(&self.other_context),
        )
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum AdditivityCheck {
    Additive,
    Witnessed(Box<DeltaWitness>),
}

impl AdditivityCheck {
    pub fn is_additive(&self) -> bool {
        matches!(self, AdditivityCheck::Additive)
    }
}

/// All `k`-subsets of `0..n` in lexicographic order.
pub(crate) fn subsets_of_size(n: usize, k: usize) -> Vec<Vec<usize>> {
    let mut out = Vec::new();
    if k > n {
        return out;
    }
    let mut current: Vec<usize> = (0..k).collect();
    loop {
        out.push(current.clone());
        let Some(pos) = (0..k).rev().find(|&i| current[i] < n - k + i) else {
            return out;
        };
        current[pos] += 1;
        for i in pos + 1..k {
            current[i] = current[i - 1] + 1;
        }
    }
}

/// Unchecked alternating sum; `point` is overwritten on `scope` and restored.
fn variation(u: &TabulatedFunction, scope: &[usize], from: &[u32], to: &[u32], point: &mut [u32]) -> Rational {
    let saved: Vec<u32> = scope.iter().map(|&i| point[i]).collect();
    let mut acc = Rational::ZERO;
    for mask in 0u32..(1 << scope.len()) {
        for (pos, &attr) in scope.iter().enumerate() {
            point[attr] = if mask & (1 << pos) != 0 { to[pos] } else { from[pos] };
        }
        let value = u.value_at(point);
        // sign (-1)^{|P \ T|}, T being the positions taken from `to`
        if (scope.len() - mask.count_ones() as usize).is_multiple_of(2) {
            acc += value;
        } else {
            acc -= value;
        }
    }
    for (pos, &attr) in scope.iter().enumerate() {
        point[attr] = saved[pos];
    }
    acc
}

/// Variation of `u` over `scope` from `from` to `to` (both indexed like
/// `scope`) in the context `base`; `base` is ignored on `scope`.
pub fn delta_variation(
    u: &TabulatedFunction,
    scope: &[usize],
    from: &[u32],
    to: &[u32],
    base: &[u32],
) -> Result<Rational> {
    let space = u.space();
    space.check_scope(scope)?;
    space.check(base)?;
    for partial in [from, to] {
        if partial.len() != scope.len() {
            return Err(Error::LengthMismatch {
                expected: scope.len(),
                actual: partial.len(),
            });
        }
        for (&attr, &level) in scope.iter().zip(partial) {
            if level > space.m(attr) {
                return Err(Error::OutOfRange {
                    point: format_coords(partial),
                    bounds: format_coords(&scope.iter().map(|&i| space.m(i)).collect::<Vec<_>>()),
                });
            }
        }
    }
    let mut point = base.to_vec();
    Ok(variation(u, scope, from, to, &mut point))
}

/// Whether every variation over `p` attributes is independent of the
/// remaining coordinates.
///
/// Only unit steps on `P` and unit context changes are compared: a general
/// variation telescopes into unit cells, and a general context change into
/// single-coordinate moves, so this is equivalent to the full quantifier.
pub fn is_p_additive_function(u: &TabulatedFunction, p: usize) -> Result<AdditivityCheck> {
    let space = u.space();
    let n = space.n();
    if p == 0 || p > n {
        return Err(Error::InvalidArgument(format!("p must lie in 1..={n}, got {p}")));
    }
    let bounds = space.bounds();
    for scope in subsets_of_size(n, p) {
        if scope.iter().any(|&i| bounds[i] == 0) {
            continue;
        }
        for other in (0..n).filter(|i| !scope.contains(i) && bounds[*i] > 0) {
            // x ranges over the box with x_P < m_P and x_other < m_other
            let mut limits = bounds.to_vec();
            for &i in scope.iter().chain([&other]) {
                limits[i] -= 1;
            }
            let mut x = vec![0u32; n];
            loop {
                let from: Vec<u32> = scope.iter().map(|&i| x[i]).collect();
                let to: Vec<u32> = from.iter().map(|l| l + 1).collect();
                let here = variation(u, &scope, &from, &to, &mut x);
                x[other] += 1;
                let there = variation(u, &scope, &from, &to, &mut x);
                x[other] -= 1;
                if here != there {
                    let mut other_context = x.clone();
                    other_context[other] += 1;
                    return Ok(AdditivityCheck::Witnessed(Box::new(DeltaWitness {
                        scope,
                        from,
                        to,
                        context: x,
                        other_context,
                        value: here,
                        other_value: there,
                    })));
                }
                if !advance(&mut x, &limits) {
                    break;
                }
            }
        }
    }
    Ok(AdditivityCheck::Additive)
}

/// Rebuilds a p-additive `u` as terms `u_S(x_S) = Δ_{0_S}^{x_S} u(0)` over
/// every scope with `0 < |S| <= p`; the constant `u(0)` is added to the term
/// of attribute 0.
pub fn delta_decomposition(u: &TabulatedFunction, p: usize) -> Result<GaiModel> {
    if let AdditivityCheck::Witnessed(witness) = is_p_additive_function(u, p)? {
        return Err(Error::NotPAdditive { p, witness });
    }
    let space: &AttributeSpace = u.space();
    let n = space.n();
    let origin_value = u.value_at(&vec![0; n]).clone();
    let zeros = vec![0u32; p];
    let mut terms = Vec::new();
    let mut point = vec![0u32; n];
    for size in 1..=p {
        for scope in subsets_of_size(n, size) {
            let add_constant = scope == [0];
            let term = GaiTerm::from_fn(space, scope.clone(), |local| {
                let value = variation(u, &scope, &zeros[..size], local, &mut point);
                if add_constant {
                    value + &origin_value
                } else {
                    value
                }
            })?;
            terms.push(term);
        }
    }
    GaiModel::new(space.clone(), terms)
}
