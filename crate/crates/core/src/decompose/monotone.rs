use std::ops::Range;

use super::terms::{add_monotone_terms, TermLayout};
use crate::error::{Error, Result};
use crate::gai::{AttributeSpace, TabulatedFunction};
use crate::kary::{
    check_capacity, ensure_two_additive, zeta, GridPoint, KaryCapacity, MobiusMap,
};
use crate::lp::{solve_with, LinearProgram, LpError, LpOptions, LpStatus, Relation, Sense};
use crate::rational::{is_negative, Rational};

/// Interaction term `u_ij` on levels `0..=m_i` by `0..=m_j`, row-major with
/// the second level fastest.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PairTerm {
    pub i: usize,
    pub j: usize,
    width: usize,
    values: Vec<Rational>,
}

impl PairTerm {
    pub fn values(&self) -> &[Rational] {
        &self.values
    }

    pub fn value(&self, a: u32, b: u32) -> &Rational {
        &self.values[a as usize * self.width + b as usize]
    }

    /// `(a, b)` of a row-major position.
    pub fn levels(&self, position: usize) -> (u32, u32) {
        ((position / self.width) as u32, (position % self.width) as u32)
    }
}

/// `U(x) = sum_i u_i(x_i) + sum_{i<j} u_ij(x_i, x_j)` with one table per
/// attribute and one per attribute pair.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MonotoneGaiDecomposition {
    bounds: Vec<u32>,
    singletons: Vec<Vec<Rational>>,
    pairs: Vec<PairTerm>,
}

impl MonotoneGaiDecomposition {
    /// `pairs` lists the tables for `(0,1), (0,2), .., (n-2,n-1)` in order.
    pub fn new(
        bounds: Vec<u32>,
        singletons: Vec<Vec<Rational>>,
        pairs: Vec<Vec<Rational>>,
    ) -> Result<Self> {
        let n = bounds.len();
        if n == 0 || bounds.contains(&0) {
            return Err(Error::InvalidShape(format!("bounds {bounds:?}")));
        }
        if singletons.len() != n {
            return Err(Error::LengthMismatch {
                expected: n,
                actual: singletons.len(),
            });
        }
        for (table, &m) in singletons.iter().zip(&bounds) {
            if table.len() != m as usize + 1 {
                return Err(Error::LengthMismatch {
                    expected: m as usize + 1,
                    actual: table.len(),
                });
            }
        }
        if pairs.len() != n * (n - 1) / 2 {
            return Err(Error::LengthMismatch {
                expected: n * (n - 1) / 2,
                actual: pairs.len(),
            });
        }
        let mut tables = pairs.into_iter();
        let mut terms = Vec::with_capacity(n * (n - 1) / 2);
        for i in 0..n {
            for j in i + 1..n {
                let values = tables.next().expect("counted above");
                let width = bounds[j] as usize + 1;
                let expected = (bounds[i] as usize + 1) * width;
                if values.len() != expected {
                    return Err(Error::LengthMismatch {
                        expected,
                        actual: values.len(),
                    });
                }
                terms.push(PairTerm { i, j, width, values });
            }
        }
        Ok(MonotoneGaiDecomposition {
            bounds,
            singletons,
            pairs: terms,
        })
    }

    pub fn zero(bounds: Vec<u32>) -> Result<Self> {
        let singletons = bounds.iter().map(|&m| vec![Rational::ZERO; m as usize + 1]).collect();
        let mut pairs = Vec::new();
        for i in 0..bounds.len() {
            for j in i + 1..bounds.len() {
                pairs.push(vec![
                    Rational::ZERO;
                    (bounds[i] as usize + 1) * (bounds[j] as usize + 1)
                ]);
            }
        }
        Self::new(bounds, singletons, pairs)
    }

    pub fn n(&self) -> usize {
        self.bounds.len()
    }

    /// Largest level bound.
    pub fn k(&self) -> u32 {
        self.bounds.iter().copied().max().unwrap_or(0)
    }

    pub fn bounds(&self) -> &[u32] {
        &self.bounds
    }

    pub fn is_uniform(&self) -> bool {
        self.bounds.iter().all(|&m| m == self.bounds[0])
    }

    pub fn singleton(&self, i: usize) -> &[Rational] {
        &self.singletons[i]
    }

    pub fn singletons(&self) -> &[Vec<Rational>] {
        &self.singletons
    }

    pub fn pairs(&self) -> &[PairTerm] {
        &self.pairs
    }

    pub fn pair(&self, i: usize, j: usize) -> &PairTerm {
        assert!(i < j && j < self.n(), "pair ({i}, {j}) out of range");
        let n = self.n();
        &self.pairs[i * (2 * n - i - 1) / 2 + (j - i - 1)]
    }

    pub(crate) fn singleton_mut(&mut self, i: usize) -> &mut [Rational] {
        &mut self.singletons[i]
    }

    pub(crate) fn pair_mut(&mut self, i: usize, j: usize, a: u32, b: u32) -> &mut Rational {
        let n = self.n();
        let term = &mut self.pairs[i * (2 * n - i - 1) / 2 + (j - i - 1)];
        &mut term.values[a as usize * term.width + b as usize]
    }

    pub fn evaluate(&self, x: &[u32]) -> Result<Rational> {
        if x.len() != self.n() {
            return Err(Error::LengthMismatch {
                expected: self.n(),
                actual: x.len(),
            });
        }
        if x.iter().zip(&self.bounds).any(|(c, m)| c > m) {
            return Err(Error::OutOfRange {
                point: crate::kary::format_coords(x),
                bounds: crate::kary::format_coords(&self.bounds),
            });
        }
        Ok(self.evaluate_unchecked(x))
    }

    pub(crate) fn evaluate_unchecked(&self, x: &[u32]) -> Rational {
        let mut total = Rational::ZERO;
        for (i, table) in self.singletons.iter().enumerate() {
            total += &table[x[i] as usize];
        }
        for term in &self.pairs {
            total += term.value(x[term.i], x[term.j]);
        }
        total
    }

    /// Broken table invariants: each table must be zero at its origin, within
    /// `[0, 1]` and nondecreasing along both coordinates.
    pub fn invariant_violations(&self) -> Vec<String> {
        let mut out = Vec::new();
        let in_unit = |v: &Rational| !is_negative(v) && v <= &Rational::ONE;
        for (i, table) in self.singletons.iter().enumerate() {
            if !table[0].is_zero() {
                out.push(format!("u_{i}(0) = {} is not zero", table[0]));
            }
            for (l, v) in table.iter().enumerate() {
                if !in_unit(v) {
                    out.push(format!("u_{i}({l}) = {v} is outside [0, 1]"));
                }
                if l > 0 && v < &table[l - 1] {
                    out.push(format!("u_{i} decreases from level {} to {l}", l - 1));
                }
            }
        }
        for term in &self.pairs {
            let (i, j) = (term.i, term.j);
            if !term.values[0].is_zero() {
                out.push(format!("u_{i}_{j}(0,0) = {} is not zero", term.values[0]));
            }
            for (pos, v) in term.values.iter().enumerate() {
                let (a, b) = term.levels(pos);
                if !in_unit(v) {
                    out.push(format!("u_{i}_{j}({a},{b}) = {v} is outside [0, 1]"));
                }
                if a > 0 && v < term.value(a - 1, b) {
                    out.push(format!("u_{i}_{j} decreases from ({},{b}) to ({a},{b})", a - 1));
                }
                if b > 0 && v < term.value(a, b - 1) {
                    out.push(format!("u_{i}_{j} decreases from ({a},{}) to ({a},{b})", b - 1));
                }
            }
        }
        out
    }

    pub fn is_valid(&self) -> bool {
        self.invariant_violations().is_empty()
    }

    /// Möbius coefficients of the summed terms, on the uniform grid.
    pub fn mobius(&self) -> Result<MobiusMap> {
        if !self.is_uniform() {
            return Err(Error::InvalidArgument(format!(
                "level bounds {:?} are not uniform",
                self.bounds
            )));
        }
        let n = self.n();
        let k = self.bounds[0];
        let lift = |pairs: &[(usize, u32)]| {
            let mut coords = vec![0u32; n];
            for &(axis, level) in pairs {
                coords[axis] = level;
            }
            GridPoint::new(coords)
        };
        let mut atoms = Vec::new();
        for (i, table) in self.singletons.iter().enumerate() {
            for l in 1..table.len() {
                atoms.push((lift(&[(i, l as u32)]), &table[l] - &table[l - 1]));
            }
        }
        for term in &self.pairs {
            let zero = Rational::ZERO;
            let at = |a: i64, b: i64| {
                if a < 0 || b < 0 {
                    &zero
                } else {
                    term.value(a as u32, b as u32)
                }
            };
            for a in 0..=k {
                for b in 0..=k {
                    if a == 0 && b == 0 {
                        continue;
                    }
                    let (x, y) = (a as i64, b as i64);
                    let d = at(x, y) - at(x - 1, y) - at(x, y - 1) + at(x - 1, y - 1);
                    atoms.push((lift(&[(term.i, a), (term.j, b)]), d));
                }
            }
        }
        MobiusMap::new(n, k, atoms)
    }

    /// Tabulates the utility over the full product of level ranges.
    pub fn to_tabulated(&self) -> Result<TabulatedFunction> {
        let space = AttributeSpace::from_bounds(&self.bounds)?;
        Ok(TabulatedFunction::from_fn(space, |x| self.evaluate_unchecked(x)))
    }
}

/// Pointwise sum of the term tables over the full grid; must be a capacity.
pub fn recompose(d: &MonotoneGaiDecomposition) -> Result<KaryCapacity> {
    let game = zeta(&d.mobius()?);
    KaryCapacity::try_new(game)
}

/// The feasibility program behind [`monotone_decompose`].
#[derive(Clone, Debug)]
pub struct MonotoneLp {
    program: LinearProgram,
    layout: TermLayout,
    equality_rows: Range<usize>,
}

impl MonotoneLp {
    pub fn program(&self) -> &LinearProgram {
        &self.program
    }

    pub fn into_program(self) -> LinearProgram {
        self.program
    }

    pub fn monotonicity_rows(&self) -> Range<usize> {
        self.layout.monotonicity_rows.clone()
    }

    pub fn equality_rows(&self) -> Range<usize> {
        self.equality_rows.clone()
    }

    fn decomposition(&self, point: &[Rational]) -> MonotoneGaiDecomposition {
        let (singletons, pairs) = self.layout.read(point);
        MonotoneGaiDecomposition::new(self.layout.bounds.clone(), singletons, pairs)
            .expect("layout shapes")
    }
}

/// Grid points with one or two nonzero coordinates, singletons first.
pub(crate) fn low_support_points(bounds: &[u32]) -> Vec<Vec<u32>> {
    let n = bounds.len();
    let mut out = Vec::new();
    for i in 0..n {
        for l in 1..=bounds[i] {
            let mut z = vec![0; n];
            z[i] = l;
            out.push(z);
        }
    }
    for i in 0..n {
        for j in i + 1..n {
            for a in 1..=bounds[i] {
                for b in 1..=bounds[j] {
                    let mut z = vec![0; n];
                    z[i] = a;
                    z[j] = b;
                    out.push(z);
                }
            }
        }
    }
    out
}

fn validate(v: &KaryCapacity) -> Result<()> {
    let report = check_capacity(v);
    if !report.is_capacity() {
        return Err(Error::NotACapacity(Box::new(report)));
    }
    ensure_two_additive(v)?;
    Ok(())
}

/// Term variables in `[0, 1]`, monotonicity rows per table and one equality
/// row per grid point of support at most two. Validates `v` first.
pub fn build_monotone_lp(v: &KaryCapacity) -> Result<MonotoneLp> {
    validate(v)?;
    Ok(build_unchecked(v))
}

fn build_unchecked(v: &KaryCapacity) -> MonotoneLp {
    let bounds = vec![v.k(); v.n()];
    let mut program = LinearProgram::new();
    let layout = add_monotone_terms(&mut program, &bounds);
    let start = program.num_constraints();
    for z in low_support_points(&bounds) {
        let name = format!("eq_{}", crate::kary::format_coords(&z).replace(',', "_"));
        program.add_constraint(name, layout.lookup(&z), Relation::Eq, v.value_at(&z).clone());
    }
    let end = program.num_constraints();
    MonotoneLp {
        program,
        layout,
        equality_rows: start..end,
    }
}

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub enum DecomposeObjective {
    /// Any feasible point.
    #[default]
    Feasibility,
    /// Minimize `sum_{i<j} u_ij(k, k)`, biasing toward small interactions.
    MinimizePairTops,
}

#[derive(Clone, Debug)]
pub struct DecomposeOptions {
    pub objective: DecomposeObjective,
    pub max_pivots: usize,
}

impl Default for DecomposeOptions {
    fn default() -> Self {
        DecomposeOptions {
            objective: DecomposeObjective::Feasibility,
            max_pivots: LpOptions::default().max_pivots,
        }
    }
}

/// Nonnegative nondecreasing singleton and pair tables summing to `v`.
pub fn monotone_decompose(v: &KaryCapacity) -> Result<MonotoneGaiDecomposition> {
    monotone_decompose_with(v, &DecomposeOptions::default())
}

pub fn monotone_decompose_with(
    v: &KaryCapacity,
    options: &DecomposeOptions,
) -> Result<MonotoneGaiDecomposition> {
    let mut built = build_monotone_lp(v)?;
    if options.objective == DecomposeObjective::MinimizePairTops {
        let k = v.k();
        let tops = (0..built.layout.pairs.len())
            .filter_map(|p| built.layout.pair_entry(p, k, k))
            .map(|var| (var, Rational::ONE))
            .collect();
        built.program.set_objective(Sense::Minimize, tops);
    }
    let outcome = solve_with(&built.program, &LpOptions::bare(options.max_pivots))?;
    let point = match outcome.status {
        LpStatus::Optimal | LpStatus::Feasible => outcome.point.expect("solved point"),
        LpStatus::Infeasible => {
            return Err(Error::DecompositionInfeasible(
                "the decomposition program is infeasible on a validated 2-additive capacity"
                    .into(),
            ))
        }
        LpStatus::Unbounded => {
            return Err(Error::Lp(LpError::Internal(
                "bounded decomposition program reported unbounded".into(),
            )))
        }
    };
    let d = built.decomposition(&point);
    let violations = d.invariant_violations();
    if let Some(first) = violations.first() {
        return Err(Error::DecompositionInfeasible(format!("solver output breaks {first}")));
    }
    for z in low_support_points(d.bounds()) {
        if &d.evaluate_unchecked(&z) != v.value_at(&z) {
            return Err(Error::DecompositionInfeasible(format!(
                "solver output misses v at {}",
                crate::kary::format_coords(&z)
            )));
        }
    }
    Ok(d)
}
