//! Acceptance checks, one line per criterion. Run with
//! `cargo test --test acceptance`; exits nonzero if any check fails.

use std::process::ExitCode;
use std::time::{Duration, Instant};

use dashu_int::UBig;
use gaikit::decompose::{
    build_monotone_lp, constraint_census_uniform, monotone_decompose, recompose,
    vertex_decompose, ConvexCombination,
};
use gaikit::elicit::{elicit, random_ground_truth, sample_comparisons, PreferenceDataset};
use gaikit::gai::{canonical_decomposition, AttributeSpace, TabulatedFunction};
use gaikit::kary::{
    check_capacity, ensure_two_additive, mobius, mobius_bruteforce, unanimity, zeta, GridPoint,
    KaryCapacity, KaryGame,
};
use gaikit::polytope::{
    count_vertices, enumerate_01_2additive_bruteforce, enumerate_antichains,
    enumerate_vertices, is_extreme_bruteforce,
};
use gaikit::rational::{int, ratio};
use gaikit::{Error, Rational};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

type Check = Result<String, String>;
type Criterion = (&'static str, fn() -> Check);

fn ensure(ok: bool, what: impl FnOnce() -> String) -> Result<(), String> {
    if ok {
        Ok(())
    } else {
        Err(what())
    }
}

fn within(elapsed: Duration, limit: Duration) -> Result<(), String> {
    ensure(elapsed < limit, || format!("took {elapsed:.2?}, limit {limit:?}"))
}

fn binomial(n: u64, r: u64) -> u64 {
    (1..=r).fold(1u64, |acc, i| acc * (n + 1 - i) / i)
}

/// `d.ddd E+xx` with `sig` significant digits, rounded half up.
fn scientific(value: &UBig, sig: usize) -> String {
    let digits = value.to_string();
    let exponent = digits.len() - 1;
    let head: u64 = digits[..sig].parse().unwrap();
    let round_up = digits.as_bytes().get(sig).is_some_and(|&d| d >= b'5');
    let head = (head + round_up as u64).to_string();
    format!("{}.{}E+{exponent:02}", &head[..1], &head[1..])
}

fn census_table() -> Check {
    let start = Instant::now();
    let ns = [4usize, 6, 8, 10, 12, 14, 20];
    let variables = [170u64, 405, 740, 1175, 1710, 2345, 4850];
    let full = [2_000u64, 75_000, 2_500_000, 78_125_000, 2_343_750_000, 68_359_375_000];
    let decomposed = [256u64, 624, 1152, 1840, 2688, 3696, 7680];
    for (idx, &n) in ns.iter().enumerate() {
        let c = constraint_census_uniform(n, 4).map_err(|e| e.to_string())?;
        ensure(c.variables == UBig::from(variables[idx]), || {
            format!("variables at n={n}: {}", c.variables)
        })?;
        ensure(c.decomposed_monotonicity_constraints == UBig::from(decomposed[idx]), || {
            format!("decomposed at n={n}: {}", c.decomposed_monotonicity_constraints)
        })?;
        match full.get(idx) {
            Some(&f) => ensure(c.full_monotonicity_constraints == UBig::from(f), || {
                format!("full at n={n}: {}", c.full_monotonicity_constraints)
            })?,
            None => {
                let shown = scientific(&c.full_monotonicity_constraints, 4);
                ensure(shown == "1.526E+15", || format!("full at n=20 prints {shown}"))?
            }
        }
    }
    within(start.elapsed(), Duration::from_secs(1))?;
    Ok("7 rows exact; n=20 full count 1525878906250000 ~ 1.526E+15".into())
}

fn canonical_example() -> Check {
    let start = Instant::now();
    let space = AttributeSpace::from_bounds(&[2, 2, 2]).map_err(|e| e.to_string())?;
    let u = TabulatedFunction::from_fn(space, |x| {
        int((x[1] + x[0] * x[2] + x[0].max(x[1])) as i64)
    });
    let scopes = vec![vec![1], vec![0, 2], vec![0, 1]];
    let model = canonical_decomposition(&u, &scopes, &[0, 0, 0]).map_err(|e| e.to_string())?;
    let expected: [fn(u32, u32) -> i64; 3] = [
        |a, _| 2 * a as i64,
        |a, b| (a * (b + 1)) as i64,
        |a, b| -(a.min(b) as i64),
    ];
    for (t, (term, f)) in model.terms().iter().zip(expected).enumerate() {
        ensure(term.scope() == scopes[t].as_slice(), || format!("term {t} scope {:?}", term.scope()))?;
        for p in term.shape().points() {
            let b = p.get(1).copied().unwrap_or(0);
            ensure(term.value_at(&p) == &int(f(p[0], b)), || {
                format!("term {t} at {p:?} is {}", term.value_at(&p))
            })?;
        }
    }
    let third = &model.terms()[2];
    for a in 0..=2u32 {
        for b in 0..=2u32 {
            let here = third.value_at(&[a, b]);
            ensure(a == 2 || third.value_at(&[a + 1, b]) <= here, || "third term increases".into())?;
            ensure(b == 2 || third.value_at(&[a, b + 1]) <= here, || "third term increases".into())?;
        }
    }
    ensure(model.tabulate() == u, || "terms do not sum to U".into())?;
    within(start.elapsed(), Duration::from_secs(1))?;
    Ok("tables 2x2, x1(x3+1), -min(x1,x2); third nonincreasing".into())
}

fn mobius_suite() -> Check {
    let start = Instant::now();
    let mut rng = ChaCha8Rng::seed_from_u64(1);
    for trial in 0..200 {
        let n = rng.random_range(1..=4usize);
        let k = rng.random_range(1..=3u32);
        let v = KaryGame::from_fn(n, k, |x| {
            if x.iter().all(|&c| c == 0) {
                Rational::ZERO
            } else {
                ratio(rng.random_range(-20..=20), rng.random_range(1..=6))
            }
        })
        .map_err(|e| e.to_string())?;
        let m = mobius(&v);
        ensure(zeta(&m) == v, || format!("trial {trial}: zeta(mobius(v)) != v"))?;
        ensure(m == mobius_bruteforce(&v), || format!("trial {trial}: oracle disagrees"))?;
    }
    within(start.elapsed(), Duration::from_secs(30))?;
    Ok("200 games, round trip and chain-product oracle exact".into())
}

fn vertex_suite() -> Check {
    let start = Instant::now();
    let err = |e: Error| e.to_string();
    let table = |v: &KaryCapacity| v.values().to_vec();
    for (n, k) in [(2usize, 1u32), (2, 2), (3, 1)] {
        let mut listed: Vec<_> = enumerate_vertices(n, k).map_err(err)?.map(|v| table(&v.capacity())).collect();
        let mut brute: Vec<_> = enumerate_01_2additive_bruteforce(n, k).map_err(err)?.iter().map(table).collect();
        listed.sort();
        brute.sort();
        ensure(listed == brute, || format!("vertex set differs at n={n}, k={k}"))?;
    }
    for n in 2..=4usize {
        for k in 1..=4u32 {
            let census = count_vertices(n, k).map_err(err)?;
            let mut count = 0u64;
            for v in enumerate_vertices(n, k).map_err(err)? {
                count += 1;
                let cap = v.capacity();
                let m = mobius(&cap);
                let ok = cap.is_zero_one()
                    && check_capacity(&cap).is_capacity()
                    && ensure_two_additive(&cap).is_ok()
                    && m.support().len() <= 2
                    && m.is_unit_valued();
                ensure(ok, || format!("vertex {:?} fails a check", v.support()))?;
            }
            ensure(census.total == UBig::from(count), || format!("count at n={n}, k={k}"))?;
            ensure(k > 1 || count == (n * n) as u64, || format!("k=1 count at n={n} is not n^2"))?;
        }
    }
    let mut rng = ChaCha8Rng::seed_from_u64(2);
    let mut midpoints = 0;
    for k in 1..=2u32 {
        let all: Vec<KaryCapacity> = enumerate_vertices(2, k).map_err(err)?.map(|v| v.capacity()).collect();
        for v in &all {
            ensure(is_extreme_bruteforce(v).map_err(err)?, || "a vertex is not extreme".into())?;
        }
        for _ in 0..10 {
            let a = rng.random_range(0..all.len());
            let b = (a + rng.random_range(1..all.len())) % all.len();
            let t = ratio(rng.random_range(1..=9), 10);
            let mut mid = KaryGame::zero(2, k).map_err(err)?;
            mid.add_scaled(&all[a], &t);
            mid.add_scaled(&all[b], &(Rational::ONE - &t));
            let mid = KaryCapacity::try_new(mid).map_err(err)?;
            ensure(!is_extreme_bruteforce(&mid).map_err(err)?, || "a midpoint is extreme".into())?;
            midpoints += 1;
        }
    }
    for k in 1..=6u32 {
        let all = enumerate_antichains(k);
        for size in 1..=(k as u64 + 1) {
            let found = all.iter().filter(|a| a.len() as u64 == size).count() as u64;
            // {(0,0)} is never listed
            let kappa = binomial(k as u64 + 1, size).pow(2) - (size == 1) as u64;
            ensure(found == kappa, || format!("antichains of size {size} at k={k}: {found}"))?;
        }
        let total = all.len() as u64 + 1;
        ensure(total == binomial(2 * k as u64 + 2, k as u64 + 1) - 1, || {
            format!("antichain total at k={k}: {total}")
        })?;
    }
    within(start.elapsed(), Duration::from_secs(120))?;
    Ok(format!("sets, counts, per-vertex checks, extremality, {midpoints} midpoints rejected, antichains k<=6"))
}

fn main_theorem() -> Check {
    let start = Instant::now();
    let err = |e: Error| e.to_string();
    let mut rng = ChaCha8Rng::seed_from_u64(3);
    let mut oracle_runs = 0;
    for trial in 0..100 {
        let n = rng.random_range(2..=4usize);
        let k = rng.random_range(1..=4u32);
        let atoms = rng.random_range(1..=6usize);
        let v = ConvexCombination::random(n, k, atoms, &mut rng).map_err(err)?.capacity();
        let d = monotone_decompose(&v).map_err(err)?;
        ensure(d.is_valid(), || format!("trial {trial}: {:?}", d.invariant_violations()))?;
        ensure(recompose(&d).map_err(err)? == v, || format!("trial {trial}: recomposition differs"))?;
        if n <= 3 && k <= 2 {
            let c = vertex_decompose(&v).map_err(err)?;
            ensure(c.capacity() == v, || format!("trial {trial}: vertex oracle differs"))?;
            oracle_runs += 1;
        }
    }
    let three_way = unanimity(3, 2, &GridPoint::new(vec![1, 2, 1])).map_err(err)?;
    match monotone_decompose(&three_way) {
        Err(Error::NotTwoAdditive { point, support_size: 3, .. }) => {
            ensure(point == "1,2,1", || format!("witness at {point}"))?
        }
        other => return Err(format!("non-2-additive input gave {other:?}")),
    }
    within(start.elapsed(), Duration::from_secs(300))?;
    Ok(format!("100 combinations exact, {oracle_runs} vertex-oracle agreements, witness at (1,2,1)"))
}

fn scale_check() -> Check {
    let start = Instant::now();
    let err = |e: Error| e.to_string();
    let mut rng = ChaCha8Rng::seed_from_u64(4);
    let v = ConvexCombination::random(10, 4, 8, &mut rng).map_err(err)?.capacity();
    let built = build_monotone_lp(&v).map_err(err)?;
    let rows = built.monotonicity_rows().len();
    ensure(rows == 1840, || format!("{rows} monotonicity rows"))?;
    let d = monotone_decompose(&v).map_err(err)?;
    ensure(d.is_valid(), || "invalid tables".into())?;
    let elapsed = start.elapsed();
    within(elapsed, Duration::from_secs(60))?;
    Ok(format!("1840 monotonicity rows, decomposed in {elapsed:.1?}"))
}

fn elicitation() -> Check {
    let start = Instant::now();
    let err = |e: Error| e.to_string();
    let mut rng = ChaCha8Rng::seed_from_u64(5);
    for trial in 0..20 {
        let bounds: Vec<u32> = (0..3).map(|_| rng.random_range(1..=3)).collect();
        let truth = random_ground_truth(&bounds, 4, &mut rng).map_err(err)?;
        let data = sample_comparisons(&truth, 30, &mut rng).map_err(err)?;
        let result = elicit(&data).map_err(err)?;
        let model = result.model.ok_or(format!("trial {trial}: inconsistent"))?;
        let u = |x: &GridPoint| model.evaluate(x.coords()).map_err(err);
        for (b, w) in data.strict() {
            ensure(u(b)? > u(w)?, || format!("trial {trial}: {b} > {w} fails"))?;
        }
        for (b, w) in data.weak() {
            ensure(u(b)? >= u(w)?, || format!("trial {trial}: {b} >= {w} fails"))?;
        }
    }
    let space = AttributeSpace::from_bounds(&[2, 1, 1]).map_err(err)?;
    let (x, y) = (GridPoint::new(vec![2, 0, 1]), GridPoint::new(vec![1, 1, 0]));
    let data = PreferenceDataset::new(space, vec![(x.clone(), y.clone()), (y, x)], vec![], vec![])
        .map_err(err)?;
    let result = elicit(&data).map_err(err)?;
    ensure(!result.is_consistent(), || "contradiction reported consistent".into())?;
    let certificate = result.certificate.ok_or("no certificate")?;
    ensure(certificate.verify(&data), || "certificate does not verify".into())?;
    within(start.elapsed(), Duration::from_secs(120))?;
    Ok("20 fits exact; contradiction certified".into())
}

fn main() -> ExitCode {
    let criteria: [Criterion; 7] = [
        ("constraint census table", census_table),
        ("canonical decomposition example", canonical_example),
        ("mobius round trip and oracle", mobius_suite),
        ("vertex theorem", vertex_suite),
        ("monotone decomposition theorem", main_theorem),
        ("decomposed program at n=10, k=4", scale_check),
        ("elicitation soundness", elicitation),
    ];
    let mut failed = 0;
    for (i, (name, check)) in criteria.iter().enumerate() {
        let start = Instant::now();
        match check() {
            Ok(detail) => println!("PASS {} {name} ({:.2?}): {detail}", i + 1, start.elapsed()),
            Err(why) => {
                failed += 1;
                println!("FAIL {} {name} ({:.2?}): {why}", i + 1, start.elapsed());
            }
        }
    }
    println!("{} of {} criteria passed", criteria.len() - failed, criteria.len());
    if failed == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
