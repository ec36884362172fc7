#![allow(dead_code)]

use gaikit::gai::{delta_variation, AttributeSpace, GaiModel, GaiTerm, TabulatedFunction};
use gaikit::kary::{zeta, GridPoint, GridShape, KaryGame, MobiusMap};
use gaikit::rational::ratio;
use gaikit::Rational;
use rand::Rng;

pub fn small_rational<R: Rng>(rng: &mut R) -> Rational {
    ratio(rng.random_range(-6..=6), rng.random_range(1..=4))
}

/// A game with arbitrary values and zero at the origin.
pub fn random_game<R: Rng>(n: usize, k: u32, rng: &mut R) -> KaryGame {
    KaryGame::from_fn(n, k, |x| {
        if x.iter().all(|&c| c == 0) {
            Rational::ZERO
        } else {
            small_rational(rng)
        }
    })
    .unwrap()
}

/// A game whose Möbius coefficients sit on points of support at most `p`.
pub fn random_p_additive_game<R: Rng>(n: usize, k: u32, p: usize, rng: &mut R) -> KaryGame {
    let shape = GridShape::uniform(n, k).unwrap();
    let mut atoms: Vec<(GridPoint, Rational)> = Vec::new();
    for z in shape.points() {
        let s = z.iter().filter(|&&c| c > 0).count();
        if s > 0 && s <= p && rng.random_bool(0.5) {
            atoms.push((GridPoint::new(z), small_rational(rng)));
        }
    }
    zeta(&MobiusMap::new(n, k, atoms).unwrap())
}

/// A GAI model whose scopes all have at most `p` attributes.
pub fn random_model<R: Rng>(bounds: &[u32], p: usize, rng: &mut R) -> GaiModel {
    let space = AttributeSpace::from_bounds(bounds).unwrap();
    let n = bounds.len();
    let mut scopes: Vec<Vec<usize>> = Vec::new();
    for mask in 1u32..(1 << n) {
        let scope: Vec<usize> = (0..n).filter(|i| mask & (1 << i) != 0).collect();
        if scope.len() <= p && rng.random_bool(0.6) {
            scopes.push(scope);
        }
    }
    if scopes.is_empty() {
        scopes.push(vec![0]);
    }
    let terms = scopes
        .into_iter()
        .map(|scope| GaiTerm::from_fn(&space, scope, |_| small_rational(rng)).unwrap())
        .collect();
    GaiModel::new(space, terms).unwrap()
}

pub fn random_table<R: Rng>(bounds: &[u32], rng: &mut R) -> TabulatedFunction {
    let space = AttributeSpace::from_bounds(bounds).unwrap();
    TabulatedFunction::from_fn(space, |_| small_rational(rng))
}

fn assignments(bounds: &[u32]) -> Vec<Vec<u32>> {
    GridShape::new(bounds.to_vec()).unwrap().points().collect()
}

/// p-additivity by the vanishing of every (p+1)-attribute variation over
/// every pair of sub-alternatives and every context.
pub fn naive_is_p_additive(u: &TabulatedFunction, p: usize) -> bool {
    let bounds = u.space().bounds().to_vec();
    let n = bounds.len();
    if p >= n {
        return true;
    }
    for mask in 1u32..(1 << n) {
        let scope: Vec<usize> = (0..n).filter(|i| mask & (1 << i) != 0).collect();
        if scope.len() != p + 1 {
            continue;
        }
        let local: Vec<u32> = scope.iter().map(|&i| bounds[i]).collect();
        let subs = assignments(&local);
        for base in assignments(&bounds) {
            for from in &subs {
                for to in &subs {
                    if !delta_variation(u, &scope, from, to, &base).unwrap().is_zero() {
                        return false;
                    }
                }
            }
        }
    }
    true
}
