use std::collections::{BTreeMap, BTreeSet};

use super::certificate::{dual_certificate, farkas_certificate, Certificate, UnboundedRay};
use super::program::{LinearProgram, Relation, Sense};
use super::simplex::{solve_standard, SimplexResult, StandardForm};
use super::LpError;
use crate::rational::Rational;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum LpStatus {
    Optimal,
    /// A feasible point of a program without objective.
    Feasible,
    Infeasible,
    Unbounded,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LpOutcome {
    pub status: LpStatus,
    /// Indexed like the program's variables.
    pub point: Option<Vec<Rational>>,
    pub objective_value: Option<Rational>,
    pub certificate: Option<Certificate>,
    pub pivots: usize,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LpOptions {
    pub max_pivots: usize,
    /// Produce Farkas certificates for infeasible programs.
    pub infeasibility_certificate: bool,
    /// Produce dual certificates for optimal programs with at most this many
    /// variables.
    pub dual_certificate_limit: usize,
}

impl Default for LpOptions {
    fn default() -> Self {
        LpOptions {
            max_pivots: 250_000,
            infeasibility_certificate: true,
            dual_certificate_limit: 100,
        }
    }
}

impl LpOptions {
    /// No certificates at all; used for the auxiliary certificate programs.
    pub fn bare(max_pivots: usize) -> Self {
        LpOptions {
            max_pivots,
            infeasibility_certificate: false,
            dual_certificate_limit: 0,
        }
    }
}

pub fn solve(lp: &LinearProgram) -> Result<LpOutcome, LpError> {
    solve_with(lp, &LpOptions::default())
}

pub fn solve_with(lp: &LinearProgram, options: &LpOptions) -> Result<LpOutcome, LpError> {
    lp.validate()?;
    let (core, pivots) = solve_core(lp, options.max_pivots)?;
    match core {
        Core::Infeasible => {
            let certificate = if options.infeasibility_certificate {
                Some(Certificate::Farkas(farkas_certificate(lp, options.max_pivots)?))
            } else {
                None
            };
            Ok(LpOutcome {
                status: LpStatus::Infeasible,
                point: None,
                objective_value: None,
                certificate,
                pivots,
            })
        }
        Core::Unbounded(point, direction) => {
            check_point(lp, &point)?;
            let ray = UnboundedRay { direction };
            if !ray.verify(lp) {
                return Err(LpError::Internal("unbounded ray failed verification".into()));
            }
            Ok(LpOutcome {
                status: LpStatus::Unbounded,
                point: Some(point),
                objective_value: None,
                certificate: Some(Certificate::Unbounded(ray)),
                pivots,
            })
        }
        Core::Solved(point) => {
            check_point(lp, &point)?;
            let Some(objective) = lp.objective() else {
                return Ok(LpOutcome {
                    status: LpStatus::Feasible,
                    point: Some(point),
                    objective_value: None,
                    certificate: None,
                    pivots,
                });
            };
            let value = objective.value(&point);
            let certificate = if lp.num_variables() <= options.dual_certificate_limit {
                Some(Certificate::Dual(dual_certificate(lp, &value, options.max_pivots)?))
            } else {
                None
            };
            Ok(LpOutcome {
                status: LpStatus::Optimal,
                point: Some(point),
                objective_value: Some(value),
                certificate,
                pivots,
            })
        }
    }
}

fn check_point(lp: &LinearProgram, point: &[Rational]) -> Result<(), LpError> {
    match lp.first_violation(point) {
        None => Ok(()),
        Some(v) => Err(LpError::Internal(format!(
            "recovered point violates {v:?}"
        ))),
    }
}

pub(crate) enum Core {
    Solved(Vec<Rational>),
    Infeasible,
    Unbounded(Vec<Rational>, Vec<Rational>),
}

struct Row {
    terms: BTreeMap<usize, Rational>,
    relation: Relation,
    rhs: Rational,
}

/// `x_var = constant + sum coefs * x`, in variables alive at elimination time.
struct Elimination {
    var: usize,
    constant: Rational,
    coefs: Vec<(usize, Rational)>,
}

/// How a surviving variable maps to standard-form columns.
enum Shift {
    /// `x = offset + y`
    Up(Rational, usize),
    /// `x = offset - y`
    Down(Rational, usize),
    /// `x = y_plus - y_minus`
    Free(usize, usize),
}

fn merge_terms(terms: &[(super::VarId, Rational)]) -> BTreeMap<usize, Rational> {
    let mut out: BTreeMap<usize, Rational> = BTreeMap::new();
    for (var, coef) in terms {
        *out.entry(var.0).or_insert(Rational::ZERO) += coef;
    }
    out.retain(|_, c| !c.is_zero());
    out
}

/// Equality elimination, bound shifting and the simplex, with the point and
/// ray mapped back to the original variables.
pub(crate) fn solve_core(lp: &LinearProgram, limit: usize) -> Result<(Core, usize), LpError> {
    let nvars = lp.num_variables();
    let mut rows: Vec<Option<Row>> = lp
        .constraints()
        .iter()
        .map(|c| {
            Some(Row {
                terms: merge_terms(&c.terms),
                relation: c.relation,
                rhs: c.rhs.clone(),
            })
        })
        .collect();
    let maximize = lp.objective().is_none_or(|o| o.sense == Sense::Maximize);
    let mut objective = lp
        .objective()
        .map(|o| merge_terms(&o.terms))
        .unwrap_or_default();
    if !maximize {
        for c in objective.values_mut() {
            *c = -&*c;
        }
    }

    let mut col_rows: Vec<BTreeSet<usize>> = vec![BTreeSet::new(); nvars];
    let mut eq_count = vec![0usize; nvars];
    let mut equalities: BTreeSet<usize> = BTreeSet::new();
    for (idx, row) in rows.iter().enumerate() {
        let row = row.as_ref().expect("fresh rows");
        for &v in row.terms.keys() {
            col_rows[v].insert(idx);
            if row.relation == Relation::Eq {
                eq_count[v] += 1;
            }
        }
        if row.relation == Relation::Eq {
            equalities.insert(idx);
        }
    }

    let mut eliminated = vec![false; nvars];
    let mut eliminations: Vec<Elimination> = Vec::new();
    while !equalities.is_empty() {
        let pick = *equalities
            .iter()
            .min_by_key(|&&r| (rows[r].as_ref().expect("live row").terms.len(), r))
            .expect("nonempty");
        equalities.remove(&pick);
        let row = rows[pick].take().expect("live row");
        for &v in row.terms.keys() {
            col_rows[v].remove(&pick);
            eq_count[v] -= 1;
        }
        if row.terms.is_empty() {
            if row.rhs.is_zero() {
                continue;
            }
            return Ok((Core::Infeasible, 0));
        }
        let var = *row
            .terms
            .keys()
            .min_by_key(|&&v| (eq_count[v], v))
            .expect("nonempty row");
        let pivot = row.terms[&var].clone();
        let constant = &row.rhs / &pivot;
        let coefs: Vec<(usize, Rational)> = row
            .terms
            .iter()
            .filter(|(&v, _)| v != var)
            .map(|(&v, c)| (v, -(c / &pivot)))
            .collect();

        let touched: Vec<usize> = col_rows[var].iter().copied().collect();
        for r in touched {
            let target = rows[r].as_mut().expect("indexed rows are live");
            let is_eq = target.relation == Relation::Eq;
            let factor = target.terms.remove(&var).expect("indexed");
            col_rows[var].remove(&r);
            if is_eq {
                eq_count[var] -= 1;
            }
            target.rhs -= &factor * &constant;
            for (v, c) in &coefs {
                let entry = target.terms.entry(*v).or_insert(Rational::ZERO);
                let was_zero = entry.is_zero();
                *entry += &factor * c;
                let now_zero = entry.is_zero();
                if now_zero {
                    target.terms.remove(v);
                }
                match (was_zero, now_zero) {
                    (true, false) => {
                        col_rows[*v].insert(r);
                        if is_eq {
                            eq_count[*v] += 1;
                        }
                    }
                    (false, true) => {
                        col_rows[*v].remove(&r);
                        if is_eq {
                            eq_count[*v] -= 1;
                        }
                    }
                    _ => {}
                }
            }
        }
        if let Some(factor) = objective.remove(&var) {
            for (v, c) in &coefs {
                let entry = objective.entry(*v).or_insert(Rational::ZERO);
                *entry += &factor * c;
                if entry.is_zero() {
                    objective.remove(v);
                }
            }
        }

        let declared = lp.variable(super::VarId(var));
        for (bound, relation) in [(&declared.lower, Relation::Ge), (&declared.upper, Relation::Le)] {
            let Some(bound) = bound else { continue };
            let terms: BTreeMap<usize, Rational> = coefs.iter().cloned().collect();
            let rhs = bound - &constant;
            if terms.is_empty() {
                if !relation.holds(&Rational::ZERO, &rhs) {
                    return Ok((Core::Infeasible, 0));
                }
                continue;
            }
            let idx = rows.len();
            for &v in terms.keys() {
                col_rows[v].insert(idx);
            }
            rows.push(Some(Row {
                terms,
                relation,
                rhs,
            }));
        }
        eliminated[var] = true;
        eliminations.push(Elimination {
            var,
            constant,
            coefs,
        });
    }

    let mut shifts: Vec<Option<Shift>> = (0..nvars).map(|_| None).collect();
    let mut columns = 0usize;
    let mut std_rows: Vec<Vec<(usize, Rational)>> = Vec::new();
    let mut std_rhs: Vec<Rational> = Vec::new();
    for v in 0..nvars {
        if eliminated[v] {
            continue;
        }
        let declared = lp.variable(super::VarId(v));
        let shift = match (&declared.lower, &declared.upper) {
            (Some(lo), hi) => {
                if let Some(hi) = hi {
                    std_rows.push(vec![(columns, Rational::ONE)]);
                    std_rhs.push(hi - lo);
                }
                Shift::Up(lo.clone(), columns)
            }
            (None, Some(hi)) => Shift::Down(hi.clone(), columns),
            (None, None) => {
                columns += 1;
                Shift::Free(columns - 1, columns)
            }
        };
        columns += 1;
        shifts[v] = Some(shift);
    }

    let convert = |terms: &BTreeMap<usize, Rational>| -> (Vec<(usize, Rational)>, Rational) {
        let mut out = Vec::with_capacity(terms.len());
        let mut offset = Rational::ZERO;
        for (&v, c) in terms {
            match shifts[v].as_ref().expect("surviving variable") {
                Shift::Up(o, col) => {
                    offset += c * o;
                    out.push((*col, c.clone()));
                }
                Shift::Down(o, col) => {
                    offset += c * o;
                    out.push((*col, -c));
                }
                Shift::Free(plus, minus) => {
                    out.push((*plus, c.clone()));
                    out.push((*minus, -c));
                }
            }
        }
        (out, offset)
    };

    for row in rows.into_iter().flatten() {
        let (terms, offset) = convert(&row.terms);
        let rhs = &row.rhs - &offset;
        if terms.is_empty() {
            if !row.relation.holds(&Rational::ZERO, &rhs) {
                return Ok((Core::Infeasible, 0));
            }
            continue;
        }
        match row.relation {
            Relation::Le => {
                std_rows.push(terms);
                std_rhs.push(rhs);
            }
            Relation::Ge => {
                std_rows.push(terms.into_iter().map(|(c, a)| (c, -a)).collect());
                std_rhs.push(-rhs);
            }
            Relation::Eq => unreachable!("equalities were eliminated"),
        }
    }
    let (cost_terms, _) = convert(&objective);
    let mut cost = vec![Rational::ZERO; columns];
    for (col, c) in cost_terms {
        cost[col] += c;
    }

    let form = StandardForm {
        columns,
        rows: std_rows,
        rhs: std_rhs,
        cost,
    };
    let (result, pivots) = solve_standard(&form, limit)?;

    let recover = |y: &[Rational], homogeneous: bool| -> Vec<Rational> {
        let mut x = vec![Rational::ZERO; nvars];
        for v in 0..nvars {
            let Some(shift) = &shifts[v] else { continue };
            x[v] = match shift {
                Shift::Up(_, col) if homogeneous => y[*col].clone(),
                Shift::Up(o, col) => o + &y[*col],
                Shift::Down(_, col) if homogeneous => -&y[*col],
                Shift::Down(o, col) => o - &y[*col],
                Shift::Free(plus, minus) => &y[*plus] - &y[*minus],
            };
        }
        for e in eliminations.iter().rev() {
            let mut value = if homogeneous {
                Rational::ZERO
            } else {
                e.constant.clone()
            };
            for (v, c) in &e.coefs {
                value += c * &x[*v];
            }
            x[e.var] = value;
        }
        x
    };

    let core = match result {
        SimplexResult::Optimal(y) => Core::Solved(recover(&y, false)),
        SimplexResult::Infeasible => Core::Infeasible,
        SimplexResult::Unbounded(y, ray) => Core::Unbounded(recover(&y, false), recover(&ray, true)),
    };
    Ok((core, pivots))
}
