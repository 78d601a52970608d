//! Acceptance gate. Every criterion runs, reports one PASS/FAIL line with
//! its wall time, and the test fails at the end if any criterion failed.

use std::io::Write;
use std::process::Command;
use std::time::{Duration, Instant};

use ellchow_core::chern::{principal_parts_factors, BundleDescriptor, LineFactor};
use ellchow_core::chow::{BasePolynomial, BundleElement, Monomial};
use ellchow_core::kappa::{
    verify_invariance, verify_invariance_with, verify_stu_identities, FiberConstants, TestCurveData,
};
use ellchow_core::quotient::{
    complete_subvariety_bound, gorenstein_check, hilbert_function, hilbert_function_of, pairing_report,
    EXPECTED_POINCARE,
};
use ellchow_core::relations::{
    derive_relations_at, derive_relations_symbolic, golden_compare, ideal_equal, simplified_generators,
    GoldenTables,
};
use ellchow_core::weierstrass::{check_conditions, delta1_codimension, linear_factor, WeierstrassPair};
use ellchow_core::{ParamPoly, Rational, UniPoly};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde_json::Value;

type Check = Result<(), String>;
type Criterion = (&'static str, fn() -> Check, Duration);

fn ensure(cond: bool, msg: impl FnOnce() -> String) -> Check {
    if cond {
        Ok(())
    } else {
        Err(msg())
    }
}

fn q(v: i64) -> Rational {
    Rational::from(v)
}

fn criterion_1() -> Check {
    let report = golden_compare(&derive_relations_symbolic());
    if let Some((g, m)) = report.first_mismatch() {
        return Err(format!(
            "{g} at a1^{} c2^{}: expected {}, got {}",
            m.monomial.a1, m.monomial.c2, m.expected, m.got
        ));
    }
    let counts: Vec<usize> = report.generators.iter().map(|g| g.reference_terms).collect();
    ensure(counts == [29, 34], || format!("reference term counts {counts:?}"))?;

    // The same comparison through the binary's JSON output.
    let out = Command::new(env!("CARGO_BIN_EXE_ellchow"))
        .args(["derive", "--symbolic", "--format", "json"])
        .output()
        .map_err(|e| e.to_string())?;
    ensure(out.status.success(), || format!("derive exited with {}", out.status))?;
    let json: Value = serde_json::from_slice(&out.stdout).map_err(|e| e.to_string())?;
    let reference = GoldenTables::default().relation_set();
    for (g, want) in json["generators"].as_array().unwrap_or(&Vec::new()).iter().zip(reference.generators()) {
        let terms = g["terms"].as_array().ok_or("missing terms")?;
        ensure(terms.len() == want.len(), || format!("{}: {} monomials", g["name"], terms.len()))?;
        for t in terms {
            let m = Monomial::new(t["a1"].as_u64().unwrap_or(0) as u32, t["c2"].as_u64().unwrap_or(0) as u32);
            let got = t["coeff"].as_str().unwrap_or("");
            let expected = want.coeff(&m).render("N");
            ensure(got == expected, || format!("{} {m:?}: json {got}, reference {expected}", g["name"]))?;
        }
    }
    Ok(())
}

fn criterion_2() -> Check {
    let simplified = simplified_generators();
    for n in 2..=8 {
        let equal = ideal_equal(&derive_relations_at(n), &simplified.specialize(n), 20).map_err(|e| e.to_string())?;
        ensure(equal, || format!("ideals differ at N = {n}"))?;
    }
    Ok(())
}

fn criterion_3() -> Check {
    let mut want = EXPECTED_POINCARE.to_vec();
    want.extend([0; 4]);
    for n in 2..=12 {
        let h = hilbert_function(&derive_relations_at(n), 20);
        ensure(h.dims == want, || format!("N = {n}: {:?}", h.dims))?;
    }
    Ok(())
}

fn criterion_4() -> Check {
    for n in 2..=8 {
        let r = gorenstein_check(&derive_relations_at(n)).map_err(|e| format!("N = {n}: {e}"))?;
        ensure(r.verdict, || format!("N = {n}: pairing degenerate, ranks {:?}", r.ranks()))?;
        ensure(r.ranks() == EXPECTED_POINCARE.to_vec(), || format!("N = {n}: ranks {:?}", r.ranks()))?;
        let top = r.per_degree.last().map(|e| e.dim);
        ensure(top == Some(1), || format!("N = {n}: dim A^16 = {top:?}"))?;
    }
    Ok(())
}

fn criterion_5() -> Check {
    for n in 2..=8 {
        let h = hilbert_function(&derive_relations_at(n), 20);
        let b = complete_subvariety_bound(&h).map_err(|e| e.to_string())?;
        ensure(b.dimension == 16 && !b.unbounded_in_window, || format!("N = {n}: {b:?}"))?;
    }
    Ok(())
}

fn criterion_6() -> Check {
    for n in 1..=20 {
        let c = delta1_codimension(n).map_err(|e| e.to_string())?;
        ensure(c == 8 * n + 1, || format!("N = {n}: codimension {c}"))?;
        if n >= 2 {
            ensure(c >= 17, || format!("N = {n}: {c} < 17"))?;
        }
    }
    Ok(())
}

fn criterion_7() -> Check {
    let inv = verify_invariance();
    ensure(inv.all_pass(), || format!("{:?}", inv.checks))?;
    let stu = verify_stu_identities(&TestCurveData::stu()).map_err(|e| e.to_string())?;
    ensure(stu.all_pass(), || format!("{:?}", stu.checks))?;

    let base = FiberConstants::default();
    let mutated = [
        FiberConstants { k200: q(-3), ..base.clone() },
        FiberConstants { k110: q(0), ..base.clone() },
        FiberConstants { k020: q(1), ..base.clone() },
        FiberConstants { k001: q(23), ..base.clone() },
    ];
    for m in &mutated {
        ensure(!verify_invariance_with(m).all_pass(), || format!("mutation {m:?} still invariant"))?;
    }
    let data = TestCurveData::stu();
    for key in data.kappa_values.keys() {
        let mut d = data.clone();
        d.kappa_values.insert(*key, &d.kappa_values[key] + &q(1));
        let r = verify_stu_identities(&d).map_err(|e| e.to_string())?;
        ensure(!r.all_pass(), || format!("mutating kappa{key:?} still passes"))?;
    }
    let mut d = data;
    d.lambda_value = q(3);
    ensure(!verify_stu_identities(&d).map_err(|e| e.to_string())?.all_pass(), || "mutating lambda still passes".into())
}

fn segre_oracle(max: u32) -> Vec<BasePolynomial<Rational>> {
    let c2 = BasePolynomial::<Rational>::c2();
    let mut s = vec![BasePolynomial::one()];
    for d in 1..=max as usize {
        let next = if d >= 2 { -&(&c2 * &s[d - 2]) } else { BasePolynomial::zero() };
        s.push(next);
    }
    s
}

fn random_form(rng: &mut ChaCha8Rng, form_degree: usize) -> UniPoly {
    let target = form_degree - rng.gen_range(0..=form_degree.min(8));
    let mut p = UniPoly::constant(q(rng.gen_range(1..=5)));
    while p.degree().unwrap_or(0) < target {
        let room = target - p.degree().unwrap_or(0);
        let root = q(rng.gen_range(-2..=2));
        p = &p * &linear_factor(&root).pow(rng.gen_range(1..=room.min(7)) as u32);
    }
    p
}

fn criterion_8() -> Check {
    // Pushforward of z^k against 1/c(V) expanded as a power series.
    let segre = segre_oracle(6);
    for k in 1..=6u32 {
        let got = BundleElement::<Rational>::z().pow(k).pushforward();
        ensure(got == segre[(k - 1) as usize], || format!("z^{k}: {got}"))?;
    }

    // Whitney: top Chern class of a sum is the product.
    let n = ParamPoly::x();
    let p3 = principal_parts_factors(3, 4, &n).map_err(|e| e.to_string())?;
    let p5 = principal_parts_factors(5, 6, &n).map_err(|e| e.to_string())?;
    ensure(
        p3.concat(&p5).top_chern() == &p3.top_chern() * &p5.top_chern(),
        || "Whitney fails on the principal parts sum".into(),
    )?;
    let mut rng = ChaCha8Rng::seed_from_u64(3);
    for _ in 0..50 {
        let mut line = |len: usize| {
            BundleDescriptor::new(
                (0..len)
                    .map(|_| LineFactor::new(q(rng.gen_range(-5..=5)), q(rng.gen_range(-5..=5))))
                    .collect::<Vec<_>>(),
            )
        };
        let (a, b) = (line(3), line(4));
        ensure(a.concat(&b).top_chern() == &a.top_chern() * &b.top_chern(), || "Whitney fails".into())?;
    }

    // Derivation commutes with specialization.
    let symbolic = derive_relations_symbolic();
    for n in 2..=12 {
        ensure(symbolic.specialize(n) == derive_relations_at(n), || format!("N = {n}"))?;
    }

    // (x^3, y^2) with deg x = 1, deg y = 2.
    let x3 = BasePolynomial::term(Monomial::new(3, 0), q(1));
    let y2 = BasePolynomial::term(Monomial::new(0, 2), q(1));
    let h = hilbert_function_of(&[&x3, &y2], 8);
    ensure(h.dims == [1, 1, 2, 1, 1, 0, 0, 0, 0], || format!("(x^3, y^2): {:?}", h.dims))?;
    let pr = pairing_report(&[&x3, &y2], 4, Monomial::of_degree).map_err(|e| e.to_string())?;
    ensure(pr.verdict && pr.ranks() == [1, 1, 2, 1, 1], || format!("(x^3, y^2) pairing {:?}", pr.ranks()))?;

    // Weierstrass: stable => semistable and weighted scaling invariance.
    let mut rng = ChaCha8Rng::seed_from_u64(8);
    for _ in 0..1000 {
        let n = rng.gen_range(1..=3);
        let a = random_form(&mut rng, 4 * n as usize);
        let b = random_form(&mut rng, 6 * n as usize);
        let w = WeierstrassPair::from_polys(n, &a, &b).map_err(|e| e.to_string())?;
        let r = check_conditions(&w);
        ensure(!r.stable || r.semistable, || format!("stable but not semistable: {w:?}"))?;
        let lambda = Rational::new(rng.gen_range(1..=7), rng.gen_range(1..=5)).map_err(|e| e.to_string())?;
        ensure(check_conditions(&w.scaled(&lambda)) == r, || format!("scaling changed the verdict: {w:?}"))?;
    }
    Ok(())
}

/// Written to the stderr handle directly, so the lines show even when the
/// harness captures test output.
fn report(line: &str) {
    let _ = writeln!(std::io::stderr(), "{line}");
}

#[test]
fn acceptance_criteria() {
    let criteria: [Criterion; 8] = [
        ("1 golden relation reproduction", criterion_1, Duration::from_secs(1)),
        ("2 simplified-generator ideal equality", criterion_2, Duration::from_secs(5)),
        ("3 Poincare polynomial N=2..12", criterion_3, Duration::from_secs(5)),
        ("4 Gorenstein duality N=2..8", criterion_4, Duration::from_secs(30)),
        ("5 complete-subvariety bound", criterion_5, Duration::from_secs(5)),
        ("6 delta1 codimension", criterion_6, Duration::from_secs(1)),
        ("7 kappa identities", criterion_7, Duration::from_secs(1)),
        ("8 property suites", criterion_8, Duration::from_secs(60)),
    ];
    let mut failed = Vec::new();
    for (name, run, budget) in criteria {
        let start = Instant::now();
        let result = run();
        let elapsed = start.elapsed();
        let result = result.and_then(|_| {
            ensure(elapsed <= budget, || format!("took {elapsed:?}, budget {budget:?}"))
        });
        match &result {
            Ok(()) => report(&format!("criterion {name}: PASS ({:.3}s)", elapsed.as_secs_f64())),
            Err(e) => {
                report(&format!("criterion {name}: FAIL ({:.3}s): {e}", elapsed.as_secs_f64()));
                failed.push(name);
            }
        }
    }
    assert!(failed.is_empty(), "failed criteria: {failed:?}");
}
