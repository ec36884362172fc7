use std::collections::BTreeMap;
use std::ops::Range;

use super::dataset::PreferenceDataset;
use crate::decompose::{add_monotone_terms, MonotoneGaiDecomposition, TermLayout};
use crate::error::{Error, Result};
use crate::lp::{
    solve_with, Certificate, DualCertificate, FarkasCertificate, LinearProgram, LpError,
    LpOptions, LpStatus, Relation, Sense, VarId,
};
use crate::rational::{is_positive, Rational};

/// The max-margin program: term tables, a shared margin `delta` in `[0, 1]`
/// and category thresholds.
#[derive(Clone, Debug)]
pub struct ElicitationLp {
    program: LinearProgram,
    layout: TermLayout,
    margin: VarId,
    thresholds: Vec<VarId>,
}

impl ElicitationLp {
    pub fn program(&self) -> &LinearProgram {
        &self.program
    }

    pub fn into_program(self) -> LinearProgram {
        self.program
    }

    pub fn monotonicity_rows(&self) -> Range<usize> {
        self.layout.monotonicity_rows.clone()
    }

    pub fn margin(&self) -> VarId {
        self.margin
    }

    /// `thresholds()[c - 1]` separates category `c - 1` from `c`.
    pub fn thresholds(&self) -> &[VarId] {
        &self.thresholds
    }

    fn model(&self, point: &[Rational]) -> MonotoneGaiDecomposition {
        let (singletons, pairs) = self.layout.read(point);
        MonotoneGaiDecomposition::new(self.layout.bounds.clone(), singletons, pairs)
            .expect("layout shapes")
    }
}

/// `U(better) - U(worse)` with shared entries cancelled.
fn difference(layout: &TermLayout, better: &[u32], worse: &[u32]) -> Vec<(VarId, Rational)> {
    let mut acc: BTreeMap<VarId, Rational> = BTreeMap::new();
    for (var, c) in layout.lookup(better) {
        *acc.entry(var).or_insert(Rational::ZERO) += c;
    }
    for (var, c) in layout.lookup(worse) {
        *acc.entry(var).or_insert(Rational::ZERO) -= c;
    }
    acc.into_iter().filter(|(_, c)| !c.is_zero()).collect()
}

fn with(mut terms: Vec<(VarId, Rational)>, var: VarId, coef: Rational) -> Vec<(VarId, Rational)> {
    terms.push((var, coef));
    terms
}

/// Relation rows shared by the max-margin and soft programs. `separation`
/// is the margin term of strict and lower category rows; `slack` yields a
/// fresh nonnegative variable added to each relation row, if any.
fn add_relations(
    lp: &mut LinearProgram,
    layout: &TermLayout,
    data: &PreferenceDataset,
    thresholds: &[VarId],
    separation: &Separation,
    mut slack: impl FnMut(&mut LinearProgram, String) -> Option<VarId>,
) {
    let mut row = |lp: &mut LinearProgram,
                   name: String,
                   mut terms: Vec<(VarId, Rational)>,
                   separated: bool,
                   relation: Relation| {
        let sign = if relation == Relation::Ge { Rational::ONE } else { Rational::NEG_ONE };
        if let Some(s) = slack(lp, format!("slack_{name}")) {
            terms.push((s, sign.clone()));
        }
        let mut rhs = Rational::ZERO;
        if separated {
            match separation {
                Separation::Variable(delta) => terms.push((*delta, -sign)),
                Separation::Fixed(margin) => rhs = margin.clone(),
            }
        }
        lp.add_constraint(name, terms, relation, rhs);
    };
    for (r, (better, worse)) in data.strict().iter().enumerate() {
        let terms = difference(layout, better.coords(), worse.coords());
        row(lp, format!("strict{r}"), terms, true, Relation::Ge);
    }
    for (r, (better, worse)) in data.weak().iter().enumerate() {
        let terms = difference(layout, better.coords(), worse.coords());
        row(lp, format!("weak{r}"), terms, false, Relation::Ge);
    }
    for (r, (x, c)) in data.assignments().iter().enumerate() {
        let utility = layout.lookup(x.coords());
        if *c > 0 {
            let terms = with(utility.clone(), thresholds[c - 1], Rational::NEG_ONE);
            row(lp, format!("cat{r}_lower"), terms, true, Relation::Ge);
        }
        if *c < thresholds.len() {
            let terms = with(utility, thresholds[*c], Rational::NEG_ONE);
            row(lp, format!("cat{r}_upper"), terms, false, Relation::Le);
        }
    }
}

enum Separation {
    Variable(VarId),
    Fixed(Rational),
}

/// Term tables and thresholds common to both programs: monotonicity rows,
/// `U(top) = 1` and ordered thresholds in `[0, 1]`.
fn base(data: &PreferenceDataset) -> Result<(LinearProgram, TermLayout, Vec<VarId>)> {
    if data.is_empty() {
        return Err(Error::InvalidArgument("the dataset has no relations".into()));
    }
    let bounds = data.space().bounds().to_vec();
    let mut lp = LinearProgram::new();
    let layout = add_monotone_terms(&mut lp, &bounds);
    lp.add_constraint("normalization", layout.lookup(&bounds), Relation::Eq, Rational::ONE);
    let thresholds: Vec<VarId> = (1..data.categories())
        .map(|c| lp.add_variable(format!("t{c}"), Some(Rational::ZERO), Some(Rational::ONE)))
        .collect();
    for (c, pair) in thresholds.windows(2).enumerate() {
        lp.add_constraint(
            format!("order_t{}", c + 1),
            vec![(pair[1], Rational::ONE), (pair[0], Rational::NEG_ONE)],
            Relation::Ge,
            Rational::ZERO,
        );
    }
    Ok((lp, layout, thresholds))
}

/// Monotone term tables normalized to `U(top) = 1`, with
/// `U(better) - U(worse) >= delta` per strict pair, `>= 0` per weak pair and
/// `t_c + delta <= U(x) <= t_{c+1}` per assignment to category `c`; maximizes
/// `delta`. Without strict pairs or separated categories `delta` is pinned
/// to zero.
pub fn build_elicitation_lp(data: &PreferenceDataset) -> Result<ElicitationLp> {
    let (mut lp, layout, thresholds) = base(data)?;
    let upper = if data.has_separations() { Rational::ONE } else { Rational::ZERO };
    let margin = lp.add_variable("delta", Some(Rational::ZERO), Some(upper));
    add_relations(&mut lp, &layout, data, &thresholds, &Separation::Variable(margin), |_, _| None);
    lp.set_objective(Sense::Maximize, vec![(margin, Rational::ONE)]);
    Ok(ElicitationLp {
        program: lp,
        layout,
        margin,
        thresholds,
    })
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum ElicitationStatus {
    Consistent,
    InfeasibleWithCertificate,
}

/// Why no model separates the data.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum InconsistencyCertificate {
    /// The relations cannot hold even with zero margin.
    Farkas(FarkasCertificate),
    /// Row multipliers bounding the margin by zero.
    MarginBound(DualCertificate),
}

impl InconsistencyCertificate {
    /// Checks the certificate against the program built from `data`.
    pub fn verify(&self, data: &PreferenceDataset) -> bool {
        let Ok(built) = build_elicitation_lp(data) else {
            return false;
        };
        match self {
            InconsistencyCertificate::Farkas(f) => f.verify(built.program()),
            InconsistencyCertificate::MarginBound(d) => d.verify(built.program(), &Rational::ZERO),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ElicitationResult {
    pub status: ElicitationStatus,
    /// Present when consistent.
    pub model: Option<MonotoneGaiDecomposition>,
    /// Smallest strict separation achieved; zero without separations.
    pub margin: Option<Rational>,
    /// Category thresholds `t_1 <= .. <= t_{C-1}`.
    pub thresholds: Vec<Rational>,
    /// Present when inconsistent.
    pub certificate: Option<InconsistencyCertificate>,
}

impl ElicitationResult {
    pub fn is_consistent(&self) -> bool {
        self.status == ElicitationStatus::Consistent
    }

    fn inconsistent(certificate: InconsistencyCertificate) -> Self {
        ElicitationResult {
            status: ElicitationStatus::InfeasibleWithCertificate,
            model: None,
            margin: None,
            thresholds: Vec::new(),
            certificate: Some(certificate),
        }
    }
}

/// Fits a monotone 2-additive model by maximizing the strict-preference
/// margin.
pub fn elicit(data: &PreferenceDataset) -> Result<ElicitationResult> {
    elicit_with(data, LpOptions::default().max_pivots)
}

pub fn elicit_with(data: &PreferenceDataset, max_pivots: usize) -> Result<ElicitationResult> {
    let built = build_elicitation_lp(data)?;
    let options = LpOptions {
        max_pivots,
        infeasibility_certificate: true,
        dual_certificate_limit: usize::MAX,
    };
    let outcome = solve_with(built.program(), &options)?;
    let missing = || Error::Lp(LpError::Internal("solver returned no certificate".into()));
    match outcome.status {
        LpStatus::Infeasible => match outcome.certificate {
            Some(Certificate::Farkas(f)) => {
                Ok(ElicitationResult::inconsistent(InconsistencyCertificate::Farkas(f)))
            }
            _ => Err(missing()),
        },
        LpStatus::Optimal => {
            let point = outcome.point.expect("optimal point");
            let margin = point[built.margin.0].clone();
            if data.has_separations() && !is_positive(&margin) {
                return match outcome.certificate {
                    Some(Certificate::Dual(d)) => Ok(ElicitationResult::inconsistent(
                        InconsistencyCertificate::MarginBound(d),
                    )),
                    _ => Err(missing()),
                };
            }
            let model = built.model(&point);
            let thresholds: Vec<Rational> =
                built.thresholds.iter().map(|t| point[t.0].clone()).collect();
            check_fit(data, &model, &thresholds, &margin)?;
            Ok(ElicitationResult {
                status: ElicitationStatus::Consistent,
                model: Some(model),
                margin: Some(margin),
                thresholds,
                certificate: None,
            })
        }
        status => Err(Error::Lp(LpError::Internal(format!(
            "bounded elicitation program ended {status:?}"
        )))),
    }
}

/// Re-evaluates every relation on the fitted tables.
fn check_fit(
    data: &PreferenceDataset,
    model: &MonotoneGaiDecomposition,
    thresholds: &[Rational],
    margin: &Rational,
) -> Result<()> {
    let u = |x: &crate::gai::Alternative| model.evaluate_unchecked(x.coords());
    let fail = |what: String| Err(Error::Lp(LpError::Internal(format!("fitted model breaks {what}"))));
    if let Some(v) = model.invariant_violations().first() {
        return fail(v.clone());
    }
    for (b, w) in data.strict() {
        if u(b) - u(w) < *margin {
            return fail(format!("{b} > {w}"));
        }
    }
    for (b, w) in data.weak() {
        if u(b) < u(w) {
            return fail(format!("{b} >= {w}"));
        }
    }
    for (x, c) in data.assignments() {
        let value = u(x);
        if *c > 0 && value < &thresholds[c - 1] + margin {
            return fail(format!("the lower threshold of {x}"));
        }
        if *c < thresholds.len() && value > thresholds[*c] {
            return fail(format!("the upper threshold of {x}"));
        }
    }
    Ok(())
}

/// Least-violation fit for inconsistent data.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SoftElicitation {
    pub model: MonotoneGaiDecomposition,
    pub thresholds: Vec<Rational>,
    /// Slack per relation row, in row order: strict pairs, weak pairs, then
    /// lower and upper category rows.
    pub slacks: Vec<Rational>,
    pub total_violation: Rational,
}

/// Relations with one nonnegative slack each and a fixed strict `margin`;
/// minimizes the total slack. Always feasible.
pub fn elicit_soft(data: &PreferenceDataset, margin: &Rational) -> Result<SoftElicitation> {
    if !is_positive(margin) {
        return Err(Error::InvalidArgument(format!("margin {margin} must be positive")));
    }
    let (mut lp, layout, thresholds) = base(data)?;
    let mut slacks = Vec::new();
    add_relations(
        &mut lp,
        &layout,
        data,
        &thresholds,
        &Separation::Fixed(margin.clone()),
        |lp, name| {
            let s = lp.add_variable(name, Some(Rational::ZERO), None);
            slacks.push(s);
            Some(s)
        },
    );
    lp.set_objective(Sense::Minimize, slacks.iter().map(|&s| (s, Rational::ONE)).collect());
    let outcome = solve_with(&lp, &LpOptions::bare(LpOptions::default().max_pivots))?;
    if outcome.status != LpStatus::Optimal {
        return Err(Error::Lp(LpError::Internal(format!(
            "soft elicitation program ended {:?}",
            outcome.status
        ))));
    }
    let point = outcome.point.expect("optimal point");
    let (singletons, pairs) = layout.read(&point);
    let model = MonotoneGaiDecomposition::new(layout.bounds.clone(), singletons, pairs)?;
    Ok(SoftElicitation {
        model,
        thresholds: thresholds.iter().map(|t| point[t.0].clone()).collect(),
        slacks: slacks.iter().map(|s| point[s.0].clone()).collect(),
        total_violation: outcome.objective_value.expect("optimal value"),
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::decompose::constraint_census;
    use crate::gai::AttributeSpace;
    use crate::kary::GridPoint;
    use crate::rational::ratio;

    fn p(c: &[u32]) -> GridPoint {
        GridPoint::new(c.to_vec())
    }

    fn dataset(
        bounds: &[u32],
        strict: &[(&[u32], &[u32])],
        weak: &[(&[u32], &[u32])],
        assignments: &[(&[u32], usize)],
    ) -> PreferenceDataset {
        PreferenceDataset::new(
            AttributeSpace::from_bounds(bounds).unwrap(),
            strict.iter().map(|(a, b)| (p(a), p(b))).collect(),
            weak.iter().map(|(a, b)| (p(a), p(b))).collect(),
            assignments.iter().map(|(x, c)| (p(x), *c)).collect(),
        )
        .unwrap()
    }

    #[test]
    fn monotonicity_rows_match_census() {
        let data = dataset(&[1, 2, 3], &[(&[1, 0, 0], &[0, 0, 1])], &[], &[]);
        let built = build_elicitation_lp(&data).unwrap();
        let census = constraint_census(&[1, 2, 3]).unwrap();
        assert_eq!(
            dashu_int::UBig::from(built.monotonicity_rows().len()),
            census.decomposed_monotonicity_constraints
        );
    }

    #[test]
    fn top_over_bottom_reaches_full_margin() {
        let data = dataset(&[2, 2], &[(&[2, 2], &[0, 0])], &[], &[]);
        let result = elicit(&data).unwrap();
        assert!(result.is_consistent());
        assert_eq!(result.margin, Some(Rational::ONE));
    }

    #[test]
    fn weak_only_is_consistent_with_zero_margin() {
        let data = dataset(&[1, 1], &[], &[(&[1, 0], &[0, 1])], &[]);
        let built = build_elicitation_lp(&data).unwrap();
        assert_eq!(built.program().variable(built.margin()).upper, Some(Rational::ZERO));
        let result = elicit(&data).unwrap();
        assert!(result.is_consistent());
        assert_eq!(result.margin, Some(Rational::ZERO));
    }

    #[test]
    fn opposite_strict_pairs_are_refuted() {
        let data = dataset(&[2, 1], &[(&[2, 0], &[0, 1]), (&[0, 1], &[2, 0])], &[], &[]);
        let result = elicit(&data).unwrap();
        assert_eq!(result.status, ElicitationStatus::InfeasibleWithCertificate);
        let certificate = result.certificate.unwrap();
        assert!(matches!(certificate, InconsistencyCertificate::MarginBound(_)));
        assert!(certificate.verify(&data));
    }

    #[test]
    fn bottom_weakly_above_top_is_infeasible() {
        let data = dataset(&[1, 1], &[], &[(&[0, 0], &[1, 1])], &[]);
        let result = elicit(&data).unwrap();
        let certificate = result.certificate.unwrap();
        assert!(matches!(certificate, InconsistencyCertificate::Farkas(_)));
        assert!(certificate.verify(&data));
    }

    #[test]
    fn monotonicity_refutes_dominated_preference() {
        // (0,0) can never beat (1,0) strictly
        let data = dataset(&[1, 1], &[(&[0, 0], &[1, 0])], &[], &[]);
        let result = elicit(&data).unwrap();
        assert!(!result.is_consistent());
        assert!(result.certificate.unwrap().verify(&data));
    }

    #[test]
    fn categories_are_separated_by_thresholds() {
        let data = dataset(
            &[2, 2],
            &[],
            &[],
            &[(&[0, 1], 0), (&[1, 1], 1), (&[2, 2], 2), (&[2, 1], 1)],
        );
        let result = elicit(&data).unwrap();
        assert!(result.is_consistent());
        let model = result.model.unwrap();
        let t = &result.thresholds;
        assert_eq!(t.len(), 2);
        assert!(t[0] <= t[1]);
        let margin = result.margin.unwrap();
        assert!(is_positive(&margin));
        assert!(model.evaluate(&[0, 1]).unwrap() <= t[0]);
        assert!(model.evaluate(&[1, 1]).unwrap() >= &t[0] + &margin);
    }

    #[test]
    fn soft_fit_absorbs_a_contradiction() {
        let data = dataset(&[1, 1], &[(&[1, 0], &[0, 1]), (&[0, 1], &[1, 0])], &[], &[]);
        let fit = elicit_soft(&data, &ratio(1, 10)).unwrap();
        assert_eq!(fit.slacks.len(), 2);
        assert_eq!(fit.total_violation, ratio(1, 5));
        assert!(fit.model.is_valid());
        assert!(elicit_soft(&data, &Rational::ZERO).is_err());
    }

    #[test]
    fn empty_dataset_is_rejected() {
        let data = dataset(&[1, 1], &[], &[], &[]);
        assert!(build_elicitation_lp(&data).is_err());
    }
}
