//! Acceptance suite: one PASS/FAIL line per criterion, each under a pinned
//! time limit. Runs without the libtest harness.

use std::collections::BTreeMap;
use std::process::ExitCode;
use std::time::{Duration, Instant};

use graphknot::expr::rewrite::{random_isotopy_step, rewrite_to_normal_form};
use graphknot::expr::{equal_normalized, normalize, KnotExpr};
use graphknot::invariants::{alexander, genus, LaurentPoly};
use graphknot::oracle::{enumerate_rhds, poly_div_torus, random_expr, EnumerationBudget};
use graphknot::rhd::{
    build, build_sum, build_unknot, classify_pair, extract, replay, validate, CurveClass, LinkType,
    ViolationKind,
};
use num_integer::Integer;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

type Outcome = Result<String, String>;

/// Number, name, time limit in seconds, check.
type Criterion = (u32, &'static str, u64, fn() -> Outcome);

fn ensure(cond: bool, msg: impl FnOnce() -> String) -> Result<(), String> {
    if cond {
        Ok(())
    } else {
        Err(msg())
    }
}

/// Coefficients of the dense product of two Laurent polynomials, from the
/// lowest exponent up.
fn naive_product(a: &LaurentPoly, b: &LaurentPoly) -> Vec<i128> {
    let (ac, bc) = (a.coeffs(), b.coeffs());
    let mut out = vec![0i128; ac.len() + bc.len() - 1];
    for i in 0..ac.len() {
        for j in 0..bc.len() {
            out[i + j] += ac[i] * bc[j];
        }
    }
    out
}

/// Coefficients up to a power of `t`.
fn shape(p: &LaurentPoly) -> Vec<i128> {
    p.coeffs().to_vec()
}

fn criterion_1() -> Outcome {
    let budget = EnumerationBudget {
        max_saddles: 0,
        ..Default::default()
    };
    let all: Vec<_> = enumerate_rhds(budget).collect();
    let accepted: Vec<_> = all.iter().filter(|r| validate(r).is_ok()).collect();
    let expected = "source s0 split\nsink k0 s0\n";
    ensure(accepted.len() == 1 && accepted[0].to_string() == expected, || {
        format!("accepted {} saddle-free decompositions", accepted.len())
    })?;
    let r = build_unknot();
    ensure(r.to_string() == expected, || format!("build_unknot gave {r}"))?;
    for k in ["s0", "k0"] {
        let e = extract(&r, k).map_err(|e| e.to_string())?.expr;
        ensure(e == KnotExpr::Unknot, || format!("{k} extracted to {e}"))?;
    }
    let t = classify_pair(&r, "s0", "k0").map_err(|e| e.to_string())?;
    ensure(t == LinkType::HopfLink, || format!("classified as {t}"))?;
    Ok(format!("{} saddle-free candidates, 1 accepted", all.len()))
}

fn criterion_2() -> Outcome {
    let t23 = build(&KnotExpr::torus(2, 3)).map_err(|e| e.to_string())?;
    let t25 = build(&KnotExpr::torus(2, 5)).map_err(|e| e.to_string())?;
    let r = build_sum(&t23, &t25, "s0", "s0").map_err(|e| e.to_string())?;
    let k = r.distinguished_source().unwrap();
    let res = extract(&r, k).map_err(|e| e.to_string())?;
    let got = res.kit.element_multiset().map_err(|e| e.to_string())?;
    let mut want = vec!["cable(2,3,U)", "cable(2,5,U)", "U", "U"];
    want.sort();
    ensure(got == want, || format!("kit multiset {got:?}"))?;
    Ok(format!("kit {{{}}}", got.join(", ")))
}

fn criterion_3() -> Outcome {
    let mut ok = 0;
    for seed in 0..500u64 {
        let e = random_expr(seed, 4, 7);
        let r = build(&e).map_err(|err| format!("seed {seed}: build {err}"))?;
        let k = r.distinguished_source().unwrap();
        let got = extract(&r, k).map_err(|err| format!("seed {seed}: extract {err}"))?.expr;
        let same = equal_normalized(&got, &e).map_err(|err| err.to_string())?;
        ensure(same, || format!("seed {seed}: {e} came back as {got}"))?;
        let (a, b) = (alexander(&got), alexander(&e));
        ensure(a == b, || format!("seed {seed}: Alexander polynomials differ"))?;
        ok += 1;
    }
    Ok(format!("{ok}/500 round trips"))
}

fn criterion_4() -> Outcome {
    let mut total = 0usize;
    let mut accepted = 0usize;
    let mut levels = 0usize;
    let mut disk_saddles = 0usize;
    for r in enumerate_rhds(EnumerationBudget::default()) {
        total += 1;
        let rep = replay(&r, true);
        for s in r.saddles() {
            if s.c1.class == CurveClass::Disk && s.c2.class == CurveClass::Disk {
                disk_saddles += 1;
                let flagged = rep
                    .violations
                    .iter()
                    .any(|v| v.kind == ViolationKind::SphereProduced && v.at == s.id);
                ensure(flagged, || format!("disk/disk saddle {} not rejected:\n{r}", s.id))?;
            }
        }
        if !rep.violations.is_empty() {
            continue;
        }
        accepted += 1;
        for level in &rep.levels {
            // regular levels between two events, not the empty level at the end
            if level.components.is_empty() {
                continue;
            }
            levels += 1;
            let tori = level.components.iter().all(|(_, g, degenerate)| *g == 1 && !degenerate);
            let chi: i64 = level.components.iter().map(|(_, g, _)| 2 - 2 * *g as i64).sum();
            ensure(tori && chi == 0, || format!("level after {} is not a union of tori:\n{r}", level.after))?;
        }
    }
    Ok(format!(
        "{total} decompositions, {accepted} accepted over {levels} levels, {disk_saddles} disk/disk saddles rejected"
    ))
}

fn criterion_5() -> Outcome {
    let mut n = 0;
    for q in 3..=12u32 {
        for p in 2..q {
            if p.gcd(&q) != 1 {
                continue;
            }
            let a = alexander(&KnotExpr::torus(p as i64, q as i64)).map_err(|e| e.to_string())?;
            let o = poly_div_torus(p, q).map_err(|e| e.to_string())?;
            ensure(shape(&a) == shape(&o), || format!("T({p},{q}): {a} vs {o}"))?;
            n += 1;
        }
    }
    Ok(format!("{n} torus knots agree"))
}

fn criterion_6() -> Outcome {
    for i in 0..200u64 {
        let a = random_expr(2 * i, 3, 7);
        let b = random_expr(2 * i + 1, 3, 7);
        let pa = alexander(&a).map_err(|e| e.to_string())?;
        let pb = alexander(&b).map_err(|e| e.to_string())?;
        let ps = alexander(&KnotExpr::sum([a.clone(), b.clone()])).map_err(|e| e.to_string())?;
        let naive = naive_product(&pa, &pb);
        ensure(shape(&ps) == naive, || format!("pair {i}: {a} and {b}"))?;
    }
    Ok("200 pairs multiply".into())
}

fn positive_iterated_cable(rng: &mut ChaCha8Rng) -> KnotExpr {
    let coprime = |rng: &mut ChaCha8Rng, lo: i64| loop {
        let p = rng.gen_range(2..=7);
        let q = rng.gen_range(lo..=9);
        if p.gcd(&q) == 1 {
            return (p, q);
        }
    };
    let (p, q) = coprime(rng, 2);
    let mut e = KnotExpr::torus(p, q);
    for _ in 0..rng.gen_range(1..=2) {
        let (p, q) = coprime(rng, 1);
        e = KnotExpr::cable(p, q, e);
    }
    e
}

fn criterion_7() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(7);
    for i in 0..50 {
        let e = positive_iterated_cable(&mut rng);
        let a = alexander(&e).map_err(|err| err.to_string())?;
        let g = genus(&e).map_err(|err| err.to_string())?;
        ensure(a.span() == 2 * g as i64, || format!("sample {i}: {e} has span {} and genus {g}", a.span()))?;
    }
    Ok("50 iterated cables".into())
}

fn scramble(e: &KnotExpr, rng: &mut ChaCha8Rng, steps: usize) -> KnotExpr {
    let mut e = e.clone();
    for _ in 0..steps {
        e = random_isotopy_step(&e, rng);
    }
    e
}

fn criterion_8() -> Outcome {
    for seed in 0..1000u64 {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let e = scramble(&random_expr(seed, 3, 5), &mut rng, 6);
        let mut r1 = ChaCha8Rng::seed_from_u64(seed ^ 0x5eed_0001);
        let mut r2 = ChaCha8Rng::seed_from_u64(seed ^ 0x5eed_0002);
        let a = rewrite_to_normal_form(&e, &mut r1).map_err(|err| err.to_string())?;
        let b = rewrite_to_normal_form(&e, &mut r2).map_err(|err| err.to_string())?;
        ensure(a == b, || format!("seed {seed}: {e} rewrote to {a} and {b}"))?;
        let n = normalize(&e).map_err(|err| err.to_string())?;
        ensure(a == n, || format!("seed {seed}: rewriting gave {a}, normalize gave {n}"))?;
    }
    Ok("1000 expressions confluent".into())
}

fn criterion_9() -> Outcome {
    for seed in 0..300u64 {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let e = random_expr(seed, 3, 5);
        let f = random_isotopy_step(&e, &mut rng);
        let same = equal_normalized(&e, &f).map_err(|err| err.to_string())?;
        ensure(same, || format!("seed {seed}: {e} and {f} not equal"))?;
        ensure(alexander(&e) == alexander(&f) && genus(&e) == genus(&f), || {
            format!("seed {seed}: invariants of {e} and {f} differ")
        })?;
    }
    let mut pairs = 0;
    let mut seed = 1_000_000u64;
    while pairs < 300 {
        let a = random_expr(seed, 3, 5);
        let b = random_expr(seed + 1, 3, 5);
        seed += 2;
        let (pa, pb) = (alexander(&a).map_err(|e| e.to_string())?, alexander(&b).map_err(|e| e.to_string())?);
        if shape(&pa) == shape(&pb) {
            continue;
        }
        let same = equal_normalized(&a, &b).map_err(|err| err.to_string())?;
        ensure(!same, || format!("{a} and {b} have different polynomials but compare equal"))?;
        pairs += 1;
    }
    Ok("300 isotopic pairs agree, 300 distinguished pairs differ".into())
}

fn main() -> ExitCode {
    let criteria: [Criterion; 9] = [
        (1, "saddle-free base case", 1, criterion_1),
        (2, "sum kit multiset", 1, criterion_2),
        (3, "build/extract round trip", 10, criterion_3),
        (4, "exhaustive level genus", 60, criterion_4),
        (5, "torus polynomial oracle", 1, criterion_5),
        (6, "multiplicativity", 5, criterion_6),
        (7, "fibered span", 5, criterion_7),
        (8, "rewrite confluence", 10, criterion_8),
        (9, "equality soundness", 10, criterion_9),
    ];
    let mut failed = 0;
    let mut timings = BTreeMap::new();
    for (n, name, limit, f) in criteria {
        let start = Instant::now();
        let result = f();
        let took = start.elapsed();
        timings.insert(n, took);
        let limit = Duration::from_secs(limit);
        let verdict = match result {
            Ok(detail) if took < limit => format!("PASS criterion {n} ({name}): {detail} [{took:.2?} < {limit:?}]"),
            Ok(detail) => format!("FAIL criterion {n} ({name}): {detail} [{took:.2?} exceeds {limit:?}]"),
            Err(why) => format!("FAIL criterion {n} ({name}): {why} [{took:.2?}]"),
        };
        if verdict.starts_with("FAIL") {
            failed += 1;
        }
        println!("{verdict}");
    }
    println!("{} of 9 criteria passed", 9 - failed);
    if failed == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
