use dashu_int::UBig;

use crate::error::{Error, Result};

/// Sizes of the monotone-decomposition formulation against the full-grid
/// monotonicity system.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ConstraintCensus {
    /// Table entries of all singleton and pair terms, origins included.
    pub variables: UBig,
    /// Covering pairs of the whole grid.
    pub full_monotonicity_constraints: UBig,
    /// Covering pairs inside the term tables.
    pub decomposed_monotonicity_constraints: UBig,
}

/// Census for per-attribute level bounds `m_i`:
/// `sum (m_i+1) + sum_{i<j} (m_i+1)(m_j+1)` variables,
/// `sum_i m_i prod_{j != i} (m_j+1)` full rows and
/// `sum m_i + sum_{i<j} [m_i(m_j+1) + m_j(m_i+1)]` decomposed rows.
pub fn constraint_census(bounds: &[u32]) -> Result<ConstraintCensus> {
    if bounds.len() < 2 || bounds.contains(&0) {
        return Err(Error::InvalidArgument(format!(
            "census needs n >= 2 attributes with m_i >= 1, got {bounds:?}"
        )));
    }
    let m: Vec<UBig> = bounds.iter().map(|&b| UBig::from(b)).collect();
    let one = UBig::ONE;
    let mut variables = UBig::ZERO;
    let mut decomposed = UBig::ZERO;
    for i in 0..m.len() {
        variables += &m[i] + &one;
        decomposed += &m[i];
        for j in i + 1..m.len() {
            variables += (&m[i] + &one) * (&m[j] + &one);
            decomposed += &m[i] * (&m[j] + &one) + &m[j] * (&m[i] + &one);
        }
    }
    let mut full = UBig::ZERO;
    for i in 0..m.len() {
        let mut term = m[i].clone();
        for (j, mj) in m.iter().enumerate() {
            if j != i {
                term *= mj + &one;
            }
        }
        full += term;
    }
    Ok(ConstraintCensus {
        variables,
        full_monotonicity_constraints: full,
        decomposed_monotonicity_constraints: decomposed,
    })
}

/// Uniform closed forms: `n(k+1)(2+(k+1)(n-1))/2` variables,
/// `n k (k+1)^(n-1)` full rows, `n k [(n-1)(k+1)+1]` decomposed rows.
pub fn constraint_census_uniform(n: usize, k: u32) -> Result<ConstraintCensus> {
    if n < 2 || k == 0 {
        return Err(Error::InvalidArgument(format!(
            "census needs n >= 2 and k >= 1, got n={n}, k={k}"
        )));
    }
    let nn = UBig::from(n);
    let kk = UBig::from(k);
    let k1 = UBig::from(k + 1);
    let n1 = UBig::from(n - 1);
    let variables = &nn * &k1 * (UBig::from(2u8) + &k1 * &n1) / UBig::from(2u8);
    let full = &nn * &kk * k1.pow(n - 1);
    let decomposed = &nn * &kk * (&n1 * &k1 + UBig::ONE);
    Ok(ConstraintCensus {
        variables,
        full_monotonicity_constraints: full,
        decomposed_monotonicity_constraints: decomposed,
    })
}
