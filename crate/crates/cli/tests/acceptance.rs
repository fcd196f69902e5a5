//! Acceptance gate: one PASS/FAIL line per criterion, nonzero exit on any failure.

#[path = "../../core/tests/common/mod.rs"]
mod common;

use std::panic::{catch_unwind, AssertUnwindSafe};
use std::process::Command;

use common::*;
use nss_core::{
    certify_nonvanishing, determinant_bareiss, determinant_cofactor, find_witness, lambda_family,
    phi_fast, phi_grid, vandermonde_det_product, verify_lambda_family, Domain, EvaluationSet,
    ExactDiv, ExponentVector, GridSpec, Int, IntPoly, LambdaFamily, Polynomial, Record,
    SquareMatrix,
};
use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

type Outcome = Result<String, String>;
type Criterion = (&'static str, fn() -> Outcome);

fn ensure(cond: bool, msg: impl FnOnce() -> String) -> Result<(), String> {
    if cond {
        Ok(())
    } else {
        Err(msg())
    }
}

fn nss(args: &[&str]) -> std::process::Output {
    Command::new(env!("CARGO_BIN_EXE_nss"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn check_family<D: ExactDiv>(points: &[D]) -> Result<(), String> {
    let fam = lambda_family(&EvaluationSet::new(points.to_vec()).map_err(|e| e.to_string())?)
        .map_err(|e| e.to_string())?;
    let report = verify_lambda_family(&fam);
    ensure(report.passed(), || format!("power sums fail for {points:?}"))?;
    let (oracle, det) = cramer_lambda(points);
    ensure(fam.coefficients() == oracle, || format!("lambda differs from Cramer oracle for {points:?}"))?;
    ensure(*fam.top_value() == det && !det.is_zero(), || format!("r differs for {points:?}"))?;
    let m = points.len();
    for l in 0..m as u32 {
        let sum = points
            .iter()
            .zip(&oracle)
            .fold(D::zero(), |acc, (s, lam)| acc.add(&lam.mul(&s.pow(l))));
        let expected = if l as usize == m - 1 { det.clone() } else { D::zero() };
        ensure(sum == expected, || format!("oracle power sum {l} fails for {points:?}"))?;
    }
    Ok(())
}

fn cofactor_identity_suite() -> Outcome {
    let pool: Vec<i64> = (-3..=3).collect();
    let mut rng = ChaCha8Rng::seed_from_u64(101);
    let mut subsets = 0;
    for mask in 1u32..(1 << pool.len()) {
        if mask.count_ones() > 4 {
            continue;
        }
        let s: Vec<i64> = (0..pool.len()).filter(|i| mask >> i & 1 == 1).map(|i| pool[i]).collect();
        let mut shuffled = s.clone();
        shuffled.shuffle(&mut rng);
        check_family(&ints(&s))?;
        check_family(&ints(&shuffled))?;
        subsets += 1;
    }
    ensure(subsets == 98, || format!("expected 98 subsets, saw {subsets}"))?;
    for _ in 0..100 {
        let size = rng.gen_range(1..=6);
        check_family(&random_int_set(&mut rng, size, -50, 50))?;
    }
    Ok(format!("{subsets} subsets in two orders, 100 random sets"))
}

fn determinant_equivalence() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(102);
    for _ in 0..200 {
        let order = rng.gen_range(1..=6);
        let entries = (0..order * order).map(|_| random_int(&mut rng, -9, 9)).collect();
        let m = SquareMatrix::new(order, entries).map_err(|e| e.to_string())?;
        let bareiss = determinant_bareiss(&m).map_err(|e| e.to_string())?;
        ensure(bareiss == determinant_cofactor(&m), || format!("mismatch on {m:?}"))?;
    }
    for _ in 0..50 {
        let order = rng.gen_range(1..=4);
        let entries = (0..order * order).map(|_| random_intpoly(&mut rng, 2, 5)).collect();
        let m: SquareMatrix<IntPoly> = SquareMatrix::new(order, entries).map_err(|e| e.to_string())?;
        let bareiss = determinant_bareiss(&m).map_err(|e| e.to_string())?;
        ensure(bareiss == determinant_cofactor(&m), || format!("mismatch on {m:?}"))?;
    }
    Ok("200 integer and 50 polynomial matrices".into())
}

fn families<D: Domain>(grid: &GridSpec<D>) -> Result<Vec<LambdaFamily<D>>, String> {
    grid.axes()
        .iter()
        .map(|s| lambda_family(s).map_err(|e| e.to_string()))
        .collect()
}

fn phi_equivalence() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(103);
    for _ in 0..300 {
        let arity = rng.gen_range(1..=3);
        let sets: Vec<Vec<Int>> = (0..arity)
            .map(|_| {
                let n = rng.gen_range(1..=4);
                random_int_set(&mut rng, n, -5, 5)
            })
            .collect();
        let terms = rng.gen_range(0..=6);
        let f = random_poly(&mut rng, arity, &vec![3; arity], terms, &mut |r| random_int(r, -9, 9));
        let grid = GridSpec::new(sets.iter().map(|s| EvaluationSet::new(s.clone()).unwrap()).collect());
        let fams = families(&grid)?;
        let fast = phi_fast(&f, &fams).map_err(|e| e.to_string())?;
        let slow = phi_grid(&f, &fams).map_err(|e| e.to_string())?;
        let lambdas: Vec<Vec<Int>> = fams.iter().map(|fam| fam.coefficients().to_vec()).collect();
        ensure(fast == slow, || format!("phi_fast {fast} != phi_grid {slow} for f = {f} on {grid}"))?;
        ensure(fast == brute_phi(&f, &sets, &lambdas), || format!("oracle disagrees for f = {f}"))?;
    }
    Ok("300 instances".into())
}

fn reproduce<D: Domain>(f: &Polynomial<D>, sets: Vec<Vec<D>>, designated: &ExponentVector, c: &D) -> Result<(), String> {
    let grid = GridSpec::new(sets.iter().map(|s| EvaluationSet::new(s.clone()).unwrap()).collect());
    let cert = certify_nonvanishing(f, &grid, Some(designated)).map_err(|e| format!("{e} for f = {f}"))?;
    let predicted = cert.top_values.iter().fold(c.clone(), |acc, r| acc.mul(r));
    ensure(cert.phi == predicted, || format!("phi != c*prod r for f = {f}"))?;
    ensure(!cert.phi.is_zero(), || format!("phi vanishes for f = {f}"))?;
    ensure(brute_phi(f, &sets, &cert.lambdas) == cert.phi, || format!("oracle phi differs for f = {f}"))?;
    let scan = grid_values(f, &sets).into_iter().find(|(_, v)| !v.is_zero());
    let (point, value) = scan.ok_or_else(|| format!("exhaustive scan finds no witness for f = {f}"))?;
    ensure(cert.witness == point && cert.witness_value == value, || format!("witness differs for f = {f}"))
}

fn certificate_reproduction() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(104);
    for _ in 0..200 {
        let arity = rng.gen_range(1..=3);
        let extra = rng.gen_range(0..=6);
        let inst = random_certifiable_instance(
            &mut rng,
            arity,
            3,
            extra,
            &mut |r| random_int(r, -9, 9),
            &mut |r| random_nonzero_int(r, -9, 9),
        );
        let sets = inst
            .designated
            .exponents()
            .iter()
            .map(|&d| random_int_set(&mut rng, d as usize + 1, -5, 5))
            .collect();
        reproduce(&inst.f, sets, &inst.designated, &inst.coefficient)?;
    }
    for _ in 0..50 {
        let arity = rng.gen_range(1..=3);
        let extra = rng.gen_range(0..=4);
        let inst = random_certifiable_instance(
            &mut rng,
            arity,
            2,
            extra,
            &mut |r| random_intpoly(r, 2, 4),
            &mut |r| random_nonzero_intpoly(r, 2, 4),
        );
        let sets = inst
            .designated
            .exponents()
            .iter()
            .map(|&d| random_intpoly_set(&mut rng, d as usize + 1))
            .collect();
        reproduce(&inst.f, sets, &inst.designated, &inst.coefficient)?;
    }
    Ok("200 integer and 50 polynomial instances, all certified".into())
}

fn goldens() -> Outcome {
    // λ for [0,1,2]: oracle first, then library, then the frozen value.
    let (oracle, det) = cramer_lambda(&ints(&[0, 1, 2]));
    ensure(oracle == ints(&[1, -2, 1]) && det == Int::from(2), || format!("oracle gives {oracle:?}, {det}"))?;
    ensure(det == vandermonde_det_product(&ints(&[0, 1, 2])).unwrap(), || "product form differs".into())?;
    let fam = lambda_family(&EvaluationSet::new(ints(&[0, 1, 2])).unwrap()).unwrap();
    ensure(fam.coefficients() == oracle && *fam.top_value() == det, || "library lambda differs".into())?;

    // x1*x2 on [0,1]^2.
    let f = Polynomial::<Int>::parse("x1*x2", 2).unwrap();
    let sets = vec![ints(&[0, 1]), ints(&[0, 1])];
    let lambdas: Vec<Vec<Int>> = sets.iter().map(|s| cramer_lambda(s).0).collect();
    let oracle_phi = brute_phi(&f, &sets, &lambdas);
    let oracle_witness = grid_values(&f, &sets).into_iter().find(|(_, v)| !v.is_zero()).unwrap();
    ensure(oracle_phi == Int::from(1), || format!("oracle phi {oracle_phi}"))?;
    ensure(oracle_witness == (ints(&[1, 1]), Int::from(1)), || "oracle witness differs".into())?;
    let grid = GridSpec::<Int>::parse("0,1;0,1").unwrap();
    let cert = certify_nonvanishing(&f, &grid, None).unwrap();
    ensure(cert.phi == oracle_phi && cert.witness == oracle_witness.0, || "library certificate differs".into())?;
    let out = nss(&["certify", "--poly", "x1*x2", "--sets", "0,1;0,1", "--format", "structured"]);
    let record = Record::parse(&String::from_utf8(out.stdout).unwrap()).map_err(|e| e.to_string())?;
    ensure(out.status.code() == Some(0), || "cli certify failed".into())?;
    ensure(
        record.get("phi").map(ToString::to_string).as_deref() == Some("1")
            && record.get("witness").map(ToString::to_string).as_deref() == Some("[1, 1]"),
        || "cli certificate differs".into(),
    )?;

    // x1 + x2 over Z[t] with S1 = [0, t]; S2 = [0] keeps |S_k| = d_k + 1 for the term x1.
    let t = IntPoly::t();
    let f = Polynomial::<IntPoly>::parse("x1 + x2", 2).unwrap();
    let sets = vec![vec![IntPoly::zero(), t.clone()], vec![IntPoly::zero()]];
    let lambdas: Vec<Vec<IntPoly>> = sets.iter().map(|s| cramer_lambda(s).0).collect();
    let oracle_phi = brute_phi(&f, &sets, &lambdas);
    ensure(oracle_phi == t, || format!("oracle phi {oracle_phi}"))?;
    let grid = GridSpec::<IntPoly>::parse("0,t;0").unwrap();
    let cert = certify_nonvanishing(&f, &grid, None).unwrap();
    ensure(cert.phi == oracle_phi, || format!("library phi {}", cert.phi))?;
    let out = nss(&["certify", "--domain", "intpoly", "--poly", "x1+x2", "--sets", "0,t;0"]);
    let text = String::from_utf8(out.stdout).unwrap();
    ensure(out.status.code() == Some(0) && text.contains("phi (product form) = t\n"), || text.clone())?;
    Ok("lambda[0,1,2], x1*x2 on [0,1]^2, x1+x2 over Z[t]".into())
}

fn negative_controls() -> Outcome {
    let cases: [&[&str]; 3] = [
        &["certify", "--domain", "intpoly", "--poly", "x1+x2", "--sets", "0,t;0,1"],
        &["certify", "--poly", "x1^2-x1", "--sets", "0,1"],
        &["certify", "--poly", "x1^2*x2", "--sets", "0,1,2,3;0,1"],
    ];
    for args in cases {
        let out = nss(args);
        ensure(out.status.code() == Some(4), || format!("{args:?} exited {:?}", out.status.code()))?;
    }
    let f = Polynomial::<Int>::parse("x1^2 - x1", 1).unwrap();
    let sets = vec![ints(&[0, 1])];
    ensure(grid_values(&f, &sets).iter().all(|(_, v)| v.is_zero()), || "oracle finds a nonzero value".into())?;
    let grid = GridSpec::<Int>::parse("0,1").unwrap();
    ensure(find_witness(&f, &grid).unwrap().is_none(), || "library finds a witness".into())?;
    let out = nss(&["witness", "--poly", "x1^2-x1", "--sets", "0,1", "--format", "structured"]);
    let text = String::from_utf8(out.stdout).unwrap();
    ensure(text.contains("found: false\n"), || text.clone())?;
    Ok("undersized grids exit 4; x1^2-x1 vanishes on [0,1]".into())
}

fn bench_equality() -> Outcome {
    let configs: [&[&str]; 3] = [
        &["bench", "--order", "6", "--grid", "4x4x4", "--reps", "1"],
        &["bench", "--order", "8", "--grid", "10x10", "--terms", "20", "--reps", "1", "--seed", "7"],
        &["bench", "--order", "3", "--grid", "3x3x3x3", "--reps", "1", "--threads", "2"],
    ];
    let mut cases = 0;
    for args in configs {
        let mut args = args.to_vec();
        args.extend(["--format", "structured"]);
        let out = nss(&args);
        ensure(out.status.code() == Some(0), || format!("{args:?} exited {:?}", out.status.code()))?;
        let record = Record::parse(&String::from_utf8(out.stdout).unwrap()).map_err(|e| e.to_string())?;
        for (key, value) in record.fields() {
            if key.ends_with(".equal") {
                ensure(value.to_string() == "true", || format!("{key} is {value}"))?;
                cases += 1;
            }
        }
    }
    ensure(cases == 12, || format!("expected 12 comparisons, saw {cases}"))?;
    Ok(format!("{cases} algorithm pairs equal"))
}

fn main() {
    let criteria: [Criterion; 7] = [
        ("1 cofactor family identities", cofactor_identity_suite),
        ("2 determinant algorithms agree", determinant_equivalence),
        ("3 product form equals grid sum", phi_equivalence),
        ("4 nonvanishing reproduced", certificate_reproduction),
        ("5 hand-traced goldens", goldens),
        ("6 negative controls", negative_controls),
        ("7 bench outputs equal", bench_equality),
    ];
    let mut failed = 0;
    for (name, run) in criteria {
        let outcome = catch_unwind(AssertUnwindSafe(run)).unwrap_or_else(|_| Err("panicked".into()));
        match outcome {
            Ok(detail) => println!("PASS  {name}: {detail}"),
            Err(why) => {
                failed += 1;
                println!("FAIL  {name}: {why}");
            }
        }
    }
    if failed > 0 {
        println!("{failed} acceptance criteria failed");
        std::process::exit(1);
    }
    println!("all 7 acceptance criteria passed");
}
