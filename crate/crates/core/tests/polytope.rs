use std::collections::BTreeSet;

use dashu_int::UBig;
use gaikit::kary::{check_capacity, ensure_two_additive, mobius, p_additivity_degree};
use gaikit::polytope::{
    count_vertices, enumerate_01_2additive_bruteforce, enumerate_antichains,
    enumerate_vertices, is_extreme_bruteforce, minimal_winning_coalitions, VertexSupport,
};
use gaikit::rational::ratio;
use gaikit::Rational;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

fn binomial(n: u64, r: u64) -> u64 {
    (1..=r).fold(1u64, |acc, i| acc * (n + 1 - i) / i)
}

fn tables(caps: impl IntoIterator<Item = Vec<Rational>>) -> BTreeSet<Vec<Rational>> {
    caps.into_iter().collect()
}

#[test]
fn vertices_match_exhaustive_search() {
    for (n, k) in [(2, 1), (2, 2), (3, 1)] {
        let listed: Vec<_> = enumerate_vertices(n, k)
            .unwrap()
            .map(|v| v.capacity().values().to_vec())
            .collect();
        let set = tables(listed.iter().cloned());
        assert_eq!(set.len(), listed.len(), "duplicates at n={n}, k={k}");
        let brute = tables(
            enumerate_01_2additive_bruteforce(n, k)
                .unwrap()
                .into_iter()
                .map(|v| v.values().to_vec()),
        );
        assert_eq!(set, brute, "n={n}, k={k}");
    }
}

#[test]
fn counts_match_closed_form() {
    for n in 2..=4usize {
        for k in 1..=4u32 {
            let census = count_vertices(n, k).unwrap();
            let listed = enumerate_vertices(n, k).unwrap().count();
            assert_eq!(census.total, UBig::from(listed), "n={n}, k={k}");
            // oracle: singletons plus off-axis antichains per pair
            let off_axis = binomial(2 * k as u64 + 2, k as u64 + 1) - 2 - 2 * k as u64;
            let pairs = (n * (n - 1) / 2) as u64;
            assert_eq!(listed as u64, k as u64 * n as u64 + off_axis * pairs);
            if k == 1 {
                assert_eq!(listed, n * n);
            }
        }
    }
}

#[test]
fn every_vertex_is_a_unit_valued_capacity_on_two_attributes() {
    for n in 2..=3usize {
        for k in 1..=3u32 {
            for v in enumerate_vertices(n, k).unwrap() {
                let cap = v.capacity();
                assert!(cap.is_zero_one());
                assert!(check_capacity(&cap).is_capacity());
                assert!(ensure_two_additive(&cap).is_ok());
                let m = mobius(&cap);
                assert_eq!(&m, v.mobius());
                assert!(m.is_unit_valued());
                assert!(m.support().len() <= 2);
                assert!(p_additivity_degree(&cap) <= 2);
                assert_eq!(minimal_winning_coalitions(&cap).unwrap(), v.minimal_winning());
                for x in cap.shape().points() {
                    assert_eq!(cap.value_at(&x).is_one(), v.wins(&x));
                }
                if let VertexSupport::Pair { antichain, .. } = v.support() {
                    assert!(!antichain.is_on_axis());
                }
            }
        }
    }
}

#[test]
fn vertices_are_extreme_and_midpoints_are_not() {
    let mut rng = ChaCha8Rng::seed_from_u64(11);
    for k in 1..=2u32 {
        let all: Vec<_> = enumerate_vertices(2, k).unwrap().collect();
        for v in &all {
            assert!(is_extreme_bruteforce(&v.capacity()).unwrap());
        }
        for _ in 0..10 {
            let a = rng.random_range(0..all.len());
            let mut b = rng.random_range(0..all.len() - 1);
            if b >= a {
                b += 1;
            }
            let t = ratio(rng.random_range(1..=9), 10);
            let mut mid = all[a].capacity().into_game();
            mid.add_scaled(all[a].capacity().as_game(), &(&t - Rational::ONE));
            mid.add_scaled(all[b].capacity().as_game(), &(Rational::ONE - &t));
            let mid = gaikit::kary::KaryCapacity::try_new(mid).unwrap();
            assert!(!is_extreme_bruteforce(&mid).unwrap());
        }
    }
}

#[test]
fn antichain_counts_by_size() {
    for k in 1..=6u32 {
        let all = enumerate_antichains(k);
        for size in 1..=(k as usize + 1) {
            let found = all.iter().filter(|a| a.len() == size).count() as u64;
            let kappa = binomial(k as u64 + 1, size as u64).pow(2);
            // {(0,0)} is the one size-1 antichain left out
            let expected = if size == 1 { kappa - 1 } else { kappa };
            assert_eq!(found, expected, "k={k}, size={size}");
        }
        // adding {(0,0)} back gives every nonempty antichain
        assert_eq!(all.len() as u64 + 1, binomial(2 * k as u64 + 2, k as u64 + 1) - 1);
        let distinct: BTreeSet<_> = all.iter().collect();
        assert_eq!(distinct.len(), all.len());
    }
}

#[test]
fn enumeration_order_is_stable() {
    let first: Vec<_> = enumerate_vertices(3, 2).unwrap().map(|v| v.support().clone()).collect();
    let second: Vec<_> = enumerate_vertices(3, 2).unwrap().map(|v| v.support().clone()).collect();
    assert_eq!(first, second);
    assert!(matches!(
        first[0],
        VertexSupport::Singleton { attribute: 0, threshold: 1 }
    ));
}
