use rand::Rng;

use super::dataset::PreferenceDataset;
use crate::decompose::{ConvexCombination, MonotoneGaiDecomposition};
use crate::error::{Error, Result};
use crate::gai::AttributeSpace;
use crate::kary::GridPoint;
use crate::rational::Rational;

/// A random monotone model on per-attribute bounds: a random vertex
/// combination on the uniform grid of the largest bound, grouped into tables,
/// cut to each attribute's range and rescaled so that `U(top) = 1`.
pub fn random_ground_truth<R: Rng + ?Sized>(
    bounds: &[u32],
    atoms: usize,
    rng: &mut R,
) -> Result<MonotoneGaiDecomposition> {
    let n = bounds.len();
    let k = bounds.iter().copied().max().unwrap_or(0);
    if n < 2 || bounds.contains(&0) {
        return Err(Error::InvalidArgument(format!(
            "ground truth needs n >= 2 attributes with m_i >= 1, got {bounds:?}"
        )));
    }
    loop {
        let wide = ConvexCombination::random(n, k, atoms, rng)?.to_decomposition();
        let singletons: Vec<Vec<Rational>> = (0..n)
            .map(|i| wide.singleton(i)[..=bounds[i] as usize].to_vec())
            .collect();
        let pairs: Vec<Vec<Rational>> = wide
            .pairs()
            .iter()
            .map(|t| {
                let mut table = Vec::new();
                for a in 0..=bounds[t.i] {
                    for b in 0..=bounds[t.j] {
                        table.push(t.value(a, b).clone());
                    }
                }
                table
            })
            .collect();
        let cut = MonotoneGaiDecomposition::new(bounds.to_vec(), singletons, pairs)?;
        let top = cut.evaluate_unchecked(bounds);
        if top.is_zero() {
            continue;
        }
        let scale = |t: &[Rational]| t.iter().map(|v| v / &top).collect::<Vec<_>>();
        let singletons = cut.singletons().iter().map(|t| scale(t)).collect();
        let pairs = cut.pairs().iter().map(|t| scale(t.values())).collect();
        return MonotoneGaiDecomposition::new(bounds.to_vec(), singletons, pairs);
    }
}

/// `comparisons` random pairs of distinct alternatives labelled by `truth`:
/// strict when utilities differ, weak on ties.
pub fn sample_comparisons<R: Rng + ?Sized>(
    truth: &MonotoneGaiDecomposition,
    comparisons: usize,
    rng: &mut R,
) -> Result<PreferenceDataset> {
    let bounds = truth.bounds();
    let space = AttributeSpace::from_bounds(bounds)?;
    let draw = |rng: &mut R| -> Vec<u32> { bounds.iter().map(|&m| rng.random_range(0..=m)).collect() };
    let mut strict = Vec::new();
    let mut weak = Vec::new();
    for _ in 0..comparisons {
        let x = draw(rng);
        let mut y = draw(rng);
        while y == x {
            y = draw(rng);
        }
        let (ux, uy) = (truth.evaluate_unchecked(&x), truth.evaluate_unchecked(&y));
        let (x, y) = (GridPoint::new(x), GridPoint::new(y));
        if ux > uy {
            strict.push((x, y));
        } else if ux < uy {
            strict.push((y, x));
        } else {
            weak.push((x, y));
        }
    }
    PreferenceDataset::new(space, strict, weak, Vec::new())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::elicit::elicit;
    use rand::SeedableRng;

    #[test]
    fn ground_truth_is_normalized_and_monotone() {
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(3);
        for _ in 0..10 {
            let truth = random_ground_truth(&[1, 3, 2], 5, &mut rng).unwrap();
            assert!(truth.is_valid(), "{:?}", truth.invariant_violations());
            assert_eq!(truth.evaluate(&[1, 3, 2]).unwrap(), Rational::ONE);
        }
    }

    #[test]
    fn generated_data_is_fitted() {
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(11);
        let truth = random_ground_truth(&[2, 3, 1], 4, &mut rng).unwrap();
        let data = sample_comparisons(&truth, 20, &mut rng).unwrap();
        let result = elicit(&data).unwrap();
        assert!(result.is_consistent());
        let model = result.model.unwrap();
        for (b, w) in data.strict() {
            assert!(model.evaluate(b.coords()).unwrap() > model.evaluate(w.coords()).unwrap());
        }
    }
}
