//! Acceptance run: one PASS/FAIL line per criterion.
//!
//! Runs without the libtest harness so the lines always reach the terminal.
//! The p = 6 sweep is skipped unless `--include-ignored`/`--ignored` is passed
//! or `SCHUBERT_SNP_EXTENDED=1` is set.

use std::process::ExitCode;
use std::time::Instant;

use num_bigint::BigInt;
use rand::rngs::StdRng;
use rand::{Rng, SeedableRng};

use schubert_snp::detideal::verify_ineq_description_of;
use schubert_snp::polymatroid::{exchange_check, is_discrete_polymatroid, newton_lattice_points, snp_check};
use schubert_snp::schubert::{
    double_schubert, enumerate_pipe_dreams, longest_product, pipe_dream_polynomial, LevelSweep,
};
use schubert_snp::{LatticeSet, Permutation, SparsePoly};

type Outcome = Result<String, String>;
type Criterion = (&'static str, Box<dyn Fn() -> Outcome>);

fn ensure(cond: bool, msg: impl FnOnce() -> String) -> Result<(), String> {
    if cond {
        Ok(())
    } else {
        Err(msg())
    }
}

fn sweep(p: usize, mut each: impl FnMut(&Permutation, &SparsePoly) -> Result<(), String>) -> Result<usize, String> {
    let mut count = 0;
    for level in LevelSweep::new(p) {
        for (perm, f) in level {
            each(&perm, &f)?;
            count += 1;
        }
    }
    ensure(count == (1..=p).product::<usize>(), || format!("S_{p} sweep saw {count} permutations"))?;
    Ok(count)
}

fn oracle_equivalence() -> Outcome {
    let mut total = 0;
    for p in 2..=5 {
        total += sweep(p, |perm, f| {
            ensure(*f == pipe_dream_polynomial(perm), || format!("{perm:?}: recursion and pipe dreams differ"))?;
            ensure(*f == double_schubert(perm), || format!("{perm:?}: cached path differs from descent path"))
        })?;
    }
    Ok(format!("{total} permutations, p = 2..5"))
}

fn snp_and_polymatroid(ps: std::ops::RangeInclusive<usize>) -> Outcome {
    let mut total = 0;
    let mut lp = 0;
    let label = format!("p = {}..{}", ps.start(), ps.end());
    for p in ps {
        total += sweep(p, |perm, f| {
            let support = f.support();
            let cert = is_discrete_polymatroid(&support);
            ensure(cert.is_polymatroid(), || format!("{perm:?}: support is not a polymatroid: {}", cert.to_json()))?;
            ensure(cert.verify(&support), || format!("{perm:?}: polymatroid certificate does not re-check"))?;
            let report = snp_check(f).map_err(|e| e.to_string())?;
            lp += report.lp_solves;
            ensure(report.is_snp(), || format!("{perm:?}: not SNP: {:?}", report.verdict))
        })?;
    }
    Ok(format!("{total} permutations, {label}, {lp} LP solves"))
}

fn ineq_description() -> Outcome {
    let n = sweep(4, |perm, f| {
        let report = verify_ineq_description_of(perm, f);
        let polymatroid = is_discrete_polymatroid(&f.support()).is_polymatroid();
        ensure(report.passed(), || format!("{perm:?}: {:?}", report.verdict))?;
        ensure(report.passed() == polymatroid, || format!("{perm:?}: verdicts disagree"))
    })?;
    Ok(format!("{n} permutations of S_4"))
}

fn sign_positivity() -> Outcome {
    let n = sweep(5, |perm, f| {
        ensure(f.negate_s().all_coefficients_positive(), || format!("{perm:?}: negate_s not positive"))?;
        ensure(f.substitute_s_zero().all_coefficients_nonnegative(), || format!("{perm:?}: s = 0 has a negative coefficient"))
    })?;
    Ok(format!("{n} permutations of S_5"))
}

fn structural_constants() -> Outcome {
    for p in 2..=6 {
        let factors = p * (p - 1) / 2;
        let w0 = Permutation::longest(p);
        let f = double_schubert(&w0);
        ensure(f == longest_product(p), || format!("p = {p}: top polynomial is not the staircase product"))?;
        // every expanded product term survives with the same sign, so the
        // absolute coefficients add up to the 2^N terms before cancellation
        let expanded = f.negate_s().coefficient_sum();
        ensure(expanded == BigInt::from(1u64) << factors, || format!("p = {p}: {expanded} expanded terms"))?;

        let mut segments = LatticeSet::from_points(2 * p, [vec![0; 2 * p]]).unwrap();
        for i in 1..p {
            for j in 1..=p - i {
                let mut ti = vec![0; 2 * p];
                ti[i - 1] = 1;
                let mut sj = vec![0; 2 * p];
                sj[p + j - 1] = 1;
                let seg = LatticeSet::from_points(2 * p, [ti, sj]).unwrap();
                segments = segments.minkowski_sum(&seg).unwrap();
            }
        }
        ensure(f.support() == segments, || format!("p = {p}: support is not the sum of segments"))?;
        ensure(enumerate_pipe_dreams(&w0).len() == 1, || format!("p = {p}: longest element has several pipe dreams"))?;
        ensure(double_schubert(&Permutation::identity(p)) == SparsePoly::one(2 * p), || format!("p = {p}: identity is not 1"))?;
    }
    Ok("p = 2..6".into())
}

fn random_poly(rng: &mut StdRng, p: usize) -> SparsePoly {
    let nvars = 2 * p;
    let terms = rng.gen_range(1..=8);
    let mut f = SparsePoly::zero(nvars);
    for _ in 0..terms {
        let degree = rng.gen_range(0..=6);
        let mut exp = vec![0u8; nvars];
        for _ in 0..degree {
            exp[rng.gen_range(0..nvars)] += 1;
        }
        let c = BigInt::from(rng.gen_range(-5i64..=5));
        f = &f + &SparsePoly::from_terms(nvars, [(exp, c)]);
    }
    f
}

fn random_constant_sum_set(rng: &mut StdRng) -> LatticeSet {
    let n = rng.gen_range(1..=5);
    let sum = rng.gen_range(0..=3 * n as u32);
    let all = LatticeSet::box_slice(&vec![0; n], &vec![3; n], sum);
    let keep = rng.gen_range(0.05..1.0);
    let mut set = LatticeSet::new(n);
    for x in &all {
        if rng.gen_bool(keep) {
            set.insert(x.clone()).unwrap();
        }
    }
    if set.is_empty() {
        set.insert(all[rng.gen_range(0..all.len())].clone()).unwrap();
    }
    set
}

fn property_suites() -> Outcome {
    let mut rng = StdRng::seed_from_u64(0x5eed_2024);
    let p = 4;
    for k in 0..500 {
        let f = random_poly(&mut rng, p);
        let d = |g: &SparsePoly, i: usize| g.divided_difference(i).unwrap();
        for i in 1..p {
            ensure(d(&d(&f, i), i).is_zero(), || format!("poly {k}: d{i}^2 != 0"))?;
        }
        for i in 1..p - 1 {
            let lhs = d(&d(&d(&f, i), i + 1), i);
            let rhs = d(&d(&d(&f, i + 1), i), i + 1);
            ensure(lhs == rhs, || format!("poly {k}: braid relation fails at {i}"))?;
        }
        ensure(d(&d(&f, 1), 3) == d(&d(&f, 3), 1), || format!("poly {k}: d1 d3 != d3 d1"))?;
    }

    let mut positives = 0;
    for k in 0..1000 {
        let set = random_constant_sum_set(&mut rng);
        let cert = is_discrete_polymatroid(&set);
        let exchange = exchange_check(&set);
        ensure(cert.is_polymatroid() == exchange.is_polymatroid(), || {
            format!("set {k} {:?}: decider {} vs exchange {:?}", set, cert.to_json(), exchange)
        })?;
        ensure(cert.verify(&set), || format!("set {k}: certificate does not re-check"))?;
        let hull = newton_lattice_points(&set).map_err(|e| e.to_string())?;
        ensure(set.is_subset(&hull), || format!("set {k}: hull misses a set point"))?;
        positives += cert.is_polymatroid() as usize;
    }

    let bad = LatticeSet::from_points(2, [vec![2, 0], vec![0, 2]]).unwrap();
    let cert = is_discrete_polymatroid(&bad);
    ensure(!cert.is_polymatroid(), || "{(2,0),(0,2)} accepted".into())?;
    let witness = cert.to_json()["witness"]["point"].clone();
    ensure(witness == serde_json::json!([1, 1]), || format!("witness {witness}"))?;
    let hull = newton_lattice_points(&bad).map_err(|e| e.to_string())?;
    ensure(hull.contains(&[1, 1]), || "(1,1) missing from the hull".into())?;

    Ok(format!("500 polynomials, 1000 sets ({positives} polymatroids), counterexample witness (1,1)"))
}

fn main() -> ExitCode {
    let args: Vec<String> = std::env::args().collect();
    let extended = args.iter().any(|a| a == "--ignored" || a == "--include-ignored")
        || std::env::var("SCHUBERT_SNP_EXTENDED").is_ok_and(|v| v == "1");
    // `cargo test -- --list` and name filters come through here too
    if args.iter().any(|a| a == "--list") {
        return ExitCode::SUCCESS;
    }

    let mut criteria: Vec<Criterion> = vec![
        ("1 oracle equivalence", Box::new(oracle_equivalence)),
        ("2 polymatroid and SNP", Box::new(|| snp_and_polymatroid(2..=5))),
        ("3 inequality description", Box::new(ineq_description)),
        ("4 sign and positivity", Box::new(sign_positivity)),
        ("5 structural constants", Box::new(structural_constants)),
        ("6 property suites", Box::new(property_suites)),
    ];
    if extended {
        criteria.push(("2x polymatroid and SNP, extended", Box::new(|| snp_and_polymatroid(6..=6))));
    }

    let mut failed = 0;
    for (name, check) in &criteria {
        let start = Instant::now();
        match check() {
            Ok(detail) => println!("PASS criterion {name}: {detail} ({:.1?})", start.elapsed()),
            Err(why) => {
                failed += 1;
                println!("FAIL criterion {name}: {why}");
            }
        }
    }
    if !extended {
        println!("SKIP criterion 2x polymatroid and SNP, extended (p = 6): pass --include-ignored");
    }
    if failed == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
