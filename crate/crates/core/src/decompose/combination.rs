use rand::Rng;

use super::monotone::{low_support_points, MonotoneGaiDecomposition};
use crate::error::{Error, Result};
use crate::kary::{check_capacity, ensure_two_additive, zeta, KaryCapacity, MobiusMap};
use crate::lp::{solve_with, LinearProgram, LpError, LpOptions, LpStatus, Relation};
use crate::polytope::{count_vertices, enumerate_vertices, VertexCapacity, VertexSupport};
use crate::rational::{is_positive, Rational};

/// Largest vertex list [`vertex_decompose`] will put into one program.
pub const VERTEX_BUDGET: usize = 5000;

/// Vertices with positive weights summing to one.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ConvexCombination {
    n: usize,
    k: u32,
    atoms: Vec<(VertexCapacity, Rational)>,
}

impl ConvexCombination {
    pub fn new(n: usize, k: u32, atoms: Vec<(VertexCapacity, Rational)>) -> Result<Self> {
        if atoms.is_empty() {
            return Err(Error::InvalidArgument("a convex combination needs an atom".into()));
        }
        let mut total = Rational::ZERO;
        for (vertex, weight) in &atoms {
            if vertex.n() != n || vertex.k() != k {
                return Err(Error::InvalidArgument(format!(
                    "vertex on n={}, k={} in a combination on n={n}, k={k}",
                    vertex.n(),
                    vertex.k()
                )));
            }
            if !is_positive(weight) {
                return Err(Error::InvalidArgument(format!("weight {weight} is not positive")));
            }
            total += weight;
        }
        if !total.is_one() {
            return Err(Error::InvalidArgument(format!("weights sum to {total}, not 1")));
        }
        Ok(ConvexCombination { n, k, atoms })
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn k(&self) -> u32 {
        self.k
    }

    pub fn atoms(&self) -> &[(VertexCapacity, Rational)] {
        &self.atoms
    }

    pub fn mobius(&self) -> MobiusMap {
        let mut total = MobiusMap::zero(self.n, self.k).expect("valid grid");
        for (vertex, weight) in &self.atoms {
            total.add_scaled(vertex.mobius(), weight);
        }
        total
    }

    /// The weighted sum of the atoms.
    pub fn capacity(&self) -> KaryCapacity {
        KaryCapacity::new_unchecked(zeta(&self.mobius()))
    }

    /// Groups atoms by support: a singleton atom adds its weight to `u_i` at
    /// levels from its threshold up; a pair atom adds it to `u_ij` where it
    /// wins.
    pub fn to_decomposition(&self) -> MonotoneGaiDecomposition {
        let mut d = MonotoneGaiDecomposition::zero(vec![self.k; self.n]).expect("valid bounds");
        for (vertex, weight) in &self.atoms {
            match vertex.support() {
                VertexSupport::Singleton {
                    attribute,
                    threshold,
                } => {
                    for value in &mut d.singleton_mut(*attribute)[*threshold as usize..] {
                        *value += weight;
                    }
                }
                VertexSupport::Pair { first, second, .. } => {
                    let mut z = vec![0u32; self.n];
                    for a in 0..=self.k {
                        for b in 0..=self.k {
                            z[*first] = a;
                            z[*second] = b;
                            if vertex.wins(&z) {
                                *d.pair_mut(*first, *second, a, b) += weight;
                            }
                        }
                    }
                }
            }
        }
        d
    }

    /// `count` distinct vertices drawn uniformly, with random positive integer
    /// weights normalized to one.
    pub fn random<R: Rng + ?Sized>(n: usize, k: u32, count: usize, rng: &mut R) -> Result<Self> {
        let vertices: Vec<VertexCapacity> = enumerate_vertices(n, k)?.collect();
        let count = count.clamp(1, vertices.len());
        let picks = rand::seq::index::sample(rng, vertices.len(), count);
        let raw: Vec<u64> = (0..count).map(|_| rng.random_range(1..=100)).collect();
        let total: u64 = raw.iter().sum();
        let mut indices = picks.into_vec();
        indices.sort_unstable();
        let atoms = indices
            .into_iter()
            .zip(raw)
            .map(|(idx, w)| (vertices[idx].clone(), Rational::from_parts(w.into(), total.into())))
            .collect();
        Self::new(n, k, atoms)
    }
}

/// Writes `v` as a convex combination of enumerated vertices by solving for
/// the weights; equality is imposed on points of support at most two.
pub fn vertex_decompose(v: &KaryCapacity) -> Result<ConvexCombination> {
    let (n, k) = (v.n(), v.k());
    let census = count_vertices(n, k)?;
    if census.total > dashu_int::UBig::from(VERTEX_BUDGET) {
        return Err(Error::BudgetExceeded {
            what: "vertex list",
            required: census.total.to_string(),
            limit: VERTEX_BUDGET.to_string(),
        });
    }
    let report = check_capacity(v);
    if !report.is_capacity() {
        return Err(Error::NotACapacity(Box::new(report)));
    }
    ensure_two_additive(v)?;

    let vertices: Vec<VertexCapacity> = enumerate_vertices(n, k)?.collect();
    let mut lp = LinearProgram::new();
    let weights: Vec<_> = (0..vertices.len())
        .map(|e| lp.add_variable(format!("w{e}"), Some(Rational::ZERO), None))
        .collect();
    lp.add_constraint(
        "total",
        weights.iter().map(|&w| (w, Rational::ONE)).collect(),
        Relation::Eq,
        Rational::ONE,
    );
    for z in low_support_points(&vec![k; n]) {
        let terms = vertices
            .iter()
            .zip(&weights)
            .filter(|(vertex, _)| vertex.wins(&z))
            .map(|(_, &w)| (w, Rational::ONE))
            .collect();
        lp.add_constraint("point", terms, Relation::Eq, v.value_at(&z).clone());
    }
    let outcome = solve_with(&lp, &LpOptions::bare(LpOptions::default().max_pivots))?;
    let point = match outcome.status {
        LpStatus::Optimal | LpStatus::Feasible => outcome.point.expect("solved point"),
        LpStatus::Infeasible => {
            return Err(Error::DecompositionInfeasible(
                "no convex combination of vertices matches the capacity".into(),
            ))
        }
        LpStatus::Unbounded => {
            return Err(Error::Lp(LpError::Internal(
                "feasibility program reported unbounded".into(),
            )))
        }
    };
    let atoms = vertices
        .into_iter()
        .zip(point)
        .filter(|(_, w)| is_positive(w))
        .collect();
    ConvexCombination::new(n, k, atoms)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::decompose::recompose;
    use crate::kary::{unanimity, GridPoint, KaryGame};
    use crate::rational::ratio;
    use rand::SeedableRng;

    #[test]
    fn vertex_is_its_own_combination() {
        for vertex in enumerate_vertices(2, 2).unwrap() {
            let v = vertex.capacity();
            let c = vertex_decompose(&v).unwrap();
            assert_eq!(c.capacity().as_game(), v.as_game());
        }
    }

    #[test]
    fn half_and_half() {
        let a = unanimity(2, 1, &GridPoint::new(vec![1, 0])).unwrap();
        let b = unanimity(2, 1, &GridPoint::new(vec![0, 1])).unwrap();
        let mut v = KaryGame::zero(2, 1).unwrap();
        v.add_scaled(&a, &ratio(1, 2));
        v.add_scaled(&b, &ratio(1, 2));
        let v = KaryCapacity::try_new(v).unwrap();
        let c = vertex_decompose(&v).unwrap();
        let total = c.atoms().iter().fold(Rational::ZERO, |acc, (_, w)| acc + w);
        assert!(total.is_one());
        assert_eq!(c.capacity().as_game(), v.as_game());
    }

    #[test]
    fn grouping_gives_valid_tables() {
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(7);
        for _ in 0..10 {
            let c = ConvexCombination::random(3, 2, 4, &mut rng).unwrap();
            let v = c.capacity();
            let d = c.to_decomposition();
            assert!(d.is_valid(), "{:?}", d.invariant_violations());
            assert_eq!(recompose(&d).unwrap().as_game(), v.as_game());
            let oracle = vertex_decompose(&v).unwrap();
            assert_eq!(oracle.capacity().as_game(), v.as_game());
            assert!(oracle.to_decomposition().is_valid());
        }
    }

    #[test]
    fn rejects_bad_weights() {
        let vertex = enumerate_vertices(2, 1).unwrap().next().unwrap();
        assert!(ConvexCombination::new(2, 1, vec![(vertex.clone(), ratio(1, 2))]).is_err());
        assert!(ConvexCombination::new(2, 1, vec![(vertex.clone(), ratio(-1, 1))]).is_err());
        assert!(ConvexCombination::new(3, 1, vec![(vertex, ratio(1, 1))]).is_err());
    }

    #[test]
    fn budget_guard() {
        let v = unanimity(8, 4, &GridPoint::new(vec![1, 0, 0, 0, 0, 0, 0, 0])).unwrap();
        assert!(matches!(vertex_decompose(&v), Err(Error::BudgetExceeded { .. })));
    }
}
