mod common;

use common::*;
use gaikit::decompose::ConvexCombination;
use gaikit::elicit::random_ground_truth;
use gaikit::gai::{
    canonical_decomposition, delta_decomposition, embed, is_p_additive_function, Fill,
};
use gaikit::kary::{
    check_capacity, ensure_two_additive, mobius, mobius_bruteforce, p_additivity_degree,
    unanimity, zeta, GridPoint, KaryCapacity, KaryGame,
};
use gaikit::Rational;
use proptest::prelude::*;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn zeta_inverts_mobius(seed in any::<u64>(), n in 1usize..=3, k in 1u32..=3) {
        let v = random_game(n, k, &mut rng(seed));
        let m = mobius(&v);
        prop_assert_eq!(&zeta(&m), &v);
        prop_assert_eq!(mobius(&zeta(&m)), m);
    }

    #[test]
    fn mobius_matches_chain_product_formula(seed in any::<u64>(), n in 1usize..=3, k in 1u32..=2) {
        let v = random_game(n, k, &mut rng(seed));
        prop_assert_eq!(mobius(&v), mobius_bruteforce(&v));
    }

    #[test]
    fn unanimity_games_form_a_basis(seed in any::<u64>(), n in 1usize..=3, k in 1u32..=2) {
        let v = random_game(n, k, &mut rng(seed));
        let mut sum = KaryGame::zero(n, k).unwrap();
        for (x, c) in mobius(&v).coefficients() {
            sum.add_scaled(&unanimity(n, k, x).unwrap(), c);
        }
        prop_assert_eq!(sum, v);
    }

    #[test]
    fn two_additive_games_are_fixed_by_low_support_points(seed in any::<u64>(), k in 1u32..=2) {
        let mut r = rng(seed);
        let v = random_p_additive_game(3, k, 2, &mut r);
        prop_assert!(p_additivity_degree(&v) <= 2);
        // any change at a full-support point breaks 2-additivity
        let z: Vec<u32> = (0..3).map(|_| r.random_range(1..=k)).collect();
        let mut values = v.values().to_vec();
        values[v.shape().index(&z)] += Rational::ONE;
        let bumped = KaryGame::new(3, k, values).unwrap();
        prop_assert_eq!(p_additivity_degree(&bumped), 3);
        prop_assert!(ensure_two_additive(&bumped).is_err());
    }

    #[test]
    fn zero_one_iff_unit_mobius(seed in any::<u64>(), n in 2usize..=3, k in 1u32..=2, atoms in 1usize..=4) {
        let c = ConvexCombination::random(n, k, atoms, &mut rng(seed)).unwrap();
        let v = c.capacity();
        prop_assert_eq!(v.is_zero_one(), mobius(&v).is_unit_valued());
        if atoms == 1 {
            prop_assert!(v.is_zero_one());
        }
    }

    #[test]
    fn reduced_additivity_check_matches_full_sweep(seed in any::<u64>(), p in 1usize..=2, from_model in any::<bool>()) {
        let mut r = rng(seed);
        let bounds: Vec<u32> = (0..3).map(|_| r.random_range(1..=2)).collect();
        let u = if from_model {
            random_model(&bounds, p, &mut r).tabulate()
        } else {
            random_table(&bounds, &mut r)
        };
        let reduced = is_p_additive_function(&u, p).unwrap().is_additive();
        prop_assert_eq!(reduced, naive_is_p_additive(&u, p));
        // additive iff the delta decomposition exists and recomposes exactly
        match delta_decomposition(&u, p) {
            Ok(model) => {
                prop_assert!(reduced);
                prop_assert_eq!(model.tabulate(), u);
            }
            Err(_) => prop_assert!(!reduced),
        }
        if from_model {
            prop_assert!(reduced);
        }
    }

    #[test]
    fn canonical_terms_recompose(seed in any::<u64>(), reverse in any::<bool>()) {
        let mut r = rng(seed);
        let bounds: Vec<u32> = (0..3).map(|_| r.random_range(1..=2)).collect();
        let model = random_model(&bounds, 2, &mut r);
        let u = model.tabulate();
        let mut scopes: Vec<Vec<usize>> = model.terms().iter().map(|t| t.scope().to_vec()).collect();
        if reverse {
            scopes.reverse();
        }
        let anchor: Vec<u32> = bounds.iter().map(|&m| r.random_range(0..=m)).collect();
        let canonical = canonical_decomposition(&u, &scopes, &anchor).unwrap();
        prop_assert_eq!(canonical.tabulate(), u);
    }

    #[test]
    fn embedding_keeps_alternative_values(seed in any::<u64>()) {
        let mut r = rng(seed);
        let bounds: Vec<u32> = (0..3).map(|_| r.random_range(1..=3)).collect();
        let truth = random_ground_truth(&bounds, 4, &mut r).unwrap();
        let u = truth.to_tabulated().unwrap();
        for fill in [Fill::Clamp, Fill::Constant] {
            let v = embed(&u, fill).unwrap();
            prop_assert!(check_capacity(&v).is_capacity());
            for x in u.space().shape().points() {
                prop_assert_eq!(v.value_at(&x), u.value_at(&x));
            }
        }
        prop_assert!(p_additivity_degree(&embed(&u, Fill::Clamp).unwrap()) <= 2);
    }
}

#[test]
fn constant_fill_can_break_two_additivity() {
    // three attributes, one short: the constant fill adds mass beyond pairs
    let mut r = rng(5);
    let mut seen = false;
    for _ in 0..50 {
        let truth = random_ground_truth(&[1, 2, 2], 3, &mut r).unwrap();
        let u = truth.to_tabulated().unwrap();
        if p_additivity_degree(&embed(&u, Fill::Constant).unwrap()) > 2 {
            seen = true;
            break;
        }
    }
    assert!(seen);
}

#[test]
fn non_zero_one_capacities_have_fractional_mobius() {
    let mut r = rng(9);
    for _ in 0..20 {
        let c = ConvexCombination::random(3, 2, 3, &mut r).unwrap();
        let v = c.capacity();
        if !v.is_zero_one() {
            assert!(!mobius(&v).is_unit_valued());
        }
    }
    let half = KaryCapacity::try_new(
        KaryGame::new(1, 2, vec![Rational::ZERO, gaikit::rational::ratio(1, 2), Rational::ONE]).unwrap(),
    )
    .unwrap();
    assert!(!mobius(&half).is_unit_valued());
    let corner = unanimity(2, 2, &GridPoint::new(vec![2, 1])).unwrap();
    assert!(mobius(&corner).is_unit_valued());
}
