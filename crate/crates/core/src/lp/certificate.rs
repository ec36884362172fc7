//! Exactly verifiable certificates for infeasible, unbounded and optimal
//! outcomes.
//!
//! Row multipliers follow one sign convention throughout: `y_r >= 0` on `<=`
//! rows, `y_r <= 0` on `>=` rows, free on `=` rows, so that every feasible `x`
//! satisfies `sum_r y_r a_r.x <= sum_r y_r b_r`. Variable bounds enter through
//! the box `[lower, upper]` rather than through explicit multipliers.

use super::program::{LinearProgram, Relation, Sense, VarId};
use super::solve::{solve_with, LpOptions, LpStatus};
use super::LpError;
use crate::rational::{is_negative, is_positive, Rational};

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Certificate {
    Farkas(FarkasCertificate),
    Unbounded(UnboundedRay),
    Dual(DualCertificate),
}

/// Row multipliers whose combination `g.x <= beta` has no solution in the
/// variable box.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FarkasCertificate {
    pub multipliers: Vec<Rational>,
}

/// A recession direction along which the objective improves without bound.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct UnboundedRay {
    pub direction: Vec<Rational>,
}

/// Row multipliers proving that no feasible point beats the reported
/// objective value.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DualCertificate {
    pub multipliers: Vec<Rational>,
}

fn signs_ok(lp: &LinearProgram, y: &[Rational]) -> bool {
    y.len() == lp.num_constraints()
        && lp.constraints().iter().zip(y).all(|(row, y)| match row.relation {
            Relation::Le => !is_negative(y),
            Relation::Ge => !is_positive(y),
            Relation::Eq => true,
        })
}

/// `(sum_r y_r a_r, sum_r y_r b_r)`.
fn combine(lp: &LinearProgram, y: &[Rational]) -> (Vec<Rational>, Rational) {
    let mut g = vec![Rational::ZERO; lp.num_variables()];
    let mut beta = Rational::ZERO;
    for (row, y) in lp.constraints().iter().zip(y) {
        if y.is_zero() {
            continue;
        }
        for (var, coef) in &row.terms {
            g[var.0] += y * coef;
        }
        beta += y * &row.rhs;
    }
    (g, beta)
}

/// Supremum of `h.x` over the variable box, `None` when unbounded above.
fn box_sup(lp: &LinearProgram, h: &[Rational]) -> Option<Rational> {
    let mut acc = Rational::ZERO;
    for (var, c) in lp.variables().iter().zip(h) {
        if is_positive(c) {
            acc += c * var.upper.as_ref()?;
        } else if is_negative(c) {
            acc += c * var.lower.as_ref()?;
        }
    }
    Some(acc)
}

impl FarkasCertificate {
    pub fn verify(&self, lp: &LinearProgram) -> bool {
        if !signs_ok(lp, &self.multipliers) {
            return false;
        }
        let (g, beta) = combine(lp, &self.multipliers);
        // infeasible iff inf over the box of g.x exceeds beta
        let neg: Vec<Rational> = g.iter().map(|c| -c).collect();
        match box_sup(lp, &neg) {
            Some(sup) => -sup > beta,
            None => false,
        }
    }
}

impl UnboundedRay {
    pub fn verify(&self, lp: &LinearProgram) -> bool {
        let d = &self.direction;
        if d.len() != lp.num_variables() {
            return false;
        }
        let Some(objective) = lp.objective() else {
            return false;
        };
        for (var, di) in lp.variables().iter().zip(d) {
            if (var.lower.is_some() && is_negative(di)) || (var.upper.is_some() && is_positive(di)) {
                return false;
            }
        }
        for row in lp.constraints() {
            if !row.relation.holds(&row.activity(d), &Rational::ZERO) {
                return false;
            }
        }
        let gain = objective.value(d);
        match objective.sense {
            Sense::Maximize => is_positive(&gain),
            Sense::Minimize => is_negative(&gain),
        }
    }
}

impl DualCertificate {
    /// Checks that the multipliers bound the objective by exactly `value`.
    pub fn verify(&self, lp: &LinearProgram, value: &Rational) -> bool {
        let Some(objective) = lp.objective() else {
            return false;
        };
        if !signs_ok(lp, &self.multipliers) {
            return false;
        }
        let flip = objective.sense == Sense::Minimize;
        let mut h = vec![Rational::ZERO; lp.num_variables()];
        for (var, c) in &objective.terms {
            h[var.0] += if flip { -c } else { c.clone() };
        }
        let (g, beta) = combine(lp, &self.multipliers);
        for (hi, gi) in h.iter_mut().zip(&g) {
            *hi -= gi;
        }
        let target = if flip { -value } else { value.clone() };
        match box_sup(lp, &h) {
            Some(sup) => beta + sup == target,
            None => false,
        }
    }
}

/// Adds one multiplier variable per row, signed per the module convention.
fn multiplier_variables(lp: &LinearProgram, aux: &mut LinearProgram) -> Vec<VarId> {
    lp.constraints()
        .iter()
        .enumerate()
        .map(|(r, row)| {
            let (lo, hi) = match row.relation {
                Relation::Le => (Some(Rational::ZERO), None),
                Relation::Ge => (None, Some(Rational::ZERO)),
                Relation::Eq => (None, None),
            };
            aux.add_variable(format!("y{r}"), lo, hi)
        })
        .collect()
}

/// Column sums `sum_r y_r a_rj` as sparse term lists, one per variable.
fn column_terms(lp: &LinearProgram, y: &[VarId]) -> Vec<Vec<(VarId, Rational)>> {
    let mut cols = vec![Vec::new(); lp.num_variables()];
    for (r, row) in lp.constraints().iter().enumerate() {
        for (var, coef) in &row.terms {
            cols[var.0].push((y[r], coef.clone()));
        }
    }
    cols
}

pub(crate) fn farkas_certificate(
    lp: &LinearProgram,
    max_pivots: usize,
) -> Result<FarkasCertificate, LpError> {
    let mut aux = LinearProgram::new();
    let y = multiplier_variables(lp, &mut aux);
    // g_j = p_j - q_j with p_j paired to a finite lower bound, q_j to an upper
    let mut separation: Vec<(VarId, Rational)> = Vec::new();
    for (j, mut terms) in column_terms(lp, &y).into_iter().enumerate() {
        let var = lp.variable(VarId(j));
        if let Some(lo) = &var.lower {
            let p = aux.add_variable(format!("p{j}"), Some(Rational::ZERO), None);
            terms.push((p, Rational::NEG_ONE));
            separation.push((p, lo.clone()));
        }
        if let Some(hi) = &var.upper {
            let q = aux.add_variable(format!("q{j}"), Some(Rational::ZERO), None);
            terms.push((q, Rational::ONE));
            separation.push((q, -hi));
        }
        aux.add_constraint(format!("col{j}"), terms, Relation::Eq, Rational::ZERO);
    }
    for (r, row) in lp.constraints().iter().enumerate() {
        separation.push((y[r], -&row.rhs));
    }
    aux.add_constraint("gap", separation, Relation::Ge, Rational::ONE);

    let outcome = solve_with(&aux, &LpOptions::bare(max_pivots))?;
    if outcome.status != LpStatus::Feasible {
        return Err(LpError::Internal(
            "no Farkas certificate for an infeasible program".into(),
        ));
    }
    let point = outcome.point.expect("feasible outcome has a point");
    let certificate = FarkasCertificate {
        multipliers: y.iter().map(|v| point[v.0].clone()).collect(),
    };
    if !certificate.verify(lp) {
        return Err(LpError::Internal("Farkas certificate failed verification".into()));
    }
    Ok(certificate)
}

pub(crate) fn dual_certificate(
    lp: &LinearProgram,
    value: &Rational,
    max_pivots: usize,
) -> Result<DualCertificate, LpError> {
    let objective = lp.objective().expect("optimal outcome has an objective");
    let flip = objective.sense == Sense::Minimize;
    let mut c = vec![Rational::ZERO; lp.num_variables()];
    for (var, coef) in &objective.terms {
        c[var.0] += if flip { -coef } else { coef.clone() };
    }

    let mut aux = LinearProgram::new();
    let y = multiplier_variables(lp, &mut aux);
    // minimize sum y b + sum p u - sum q l subject to sum y a + p - q = c
    let mut bound: Vec<(VarId, Rational)> = lp
        .constraints()
        .iter()
        .enumerate()
        .map(|(r, row)| (y[r], row.rhs.clone()))
        .collect();
    for (j, mut terms) in column_terms(lp, &y).into_iter().enumerate() {
        let var = lp.variable(VarId(j));
        if let Some(hi) = &var.upper {
            let p = aux.add_variable(format!("p{j}"), Some(Rational::ZERO), None);
            terms.push((p, Rational::ONE));
            bound.push((p, hi.clone()));
        }
        if let Some(lo) = &var.lower {
            let q = aux.add_variable(format!("q{j}"), Some(Rational::ZERO), None);
            terms.push((q, Rational::NEG_ONE));
            bound.push((q, -lo));
        }
        aux.add_constraint(format!("col{j}"), terms, Relation::Eq, c[j].clone());
    }
    aux.set_objective(Sense::Minimize, bound);

    let outcome = solve_with(&aux, &LpOptions::bare(max_pivots))?;
    if outcome.status != LpStatus::Optimal {
        return Err(LpError::Internal(format!(
            "dual program ended {:?}",
            outcome.status
        )));
    }
    let point = outcome.point.expect("optimal outcome has a point");
    let certificate = DualCertificate {
        multipliers: y.iter().map(|v| point[v.0].clone()).collect(),
    };
    if !certificate.verify(lp, value) {
        return Err(LpError::Internal("dual certificate failed verification".into()));
    }
    Ok(certificate)
}
