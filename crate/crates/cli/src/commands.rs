//! One function per subcommand. Each returns an [`Outcome`]: a JSON value,
//! the equivalent text, and whether every check it ran passed.

use std::fmt::Write as _;

use anyhow::{Context, Result};
use ellchow_core::chow::BasePolynomial;
use ellchow_core::kappa::{verify_invariance, verify_stu_identities, TestCurveData};
use ellchow_core::quotient::{
    complete_subvariety_bound, gorenstein_check, hilbert_function, HilbertData, EXPECTED_POINCARE,
    SOCLE_DEGREE,
};
use ellchow_core::relations::{
    derive_relations_at, derive_relations_symbolic, derive_relations_sweep, golden_compare_against,
    ideal_equal, simplified_generators, GoldenTables, DEFAULT_MAX_DEGREE,
};
use ellchow_core::weierstrass::{check_conditions, delta1_codimension, discriminant, WeierstrassPair};
use ellchow_core::{Coefficient, ParamPoly, Rational, RelationSet};
use rayon::prelude::*;
use serde_json::{json, Value};

pub const SCHEMA: u32 = 1;

pub struct Outcome {
    pub json: Value,
    pub text: String,
    pub pass: bool,
}

impl Outcome {
    fn new(command: &str, mut body: Value, text: String, pass: bool) -> Outcome {
        let obj = body.as_object_mut().expect("command bodies are objects");
        obj.insert("schema".into(), json!(SCHEMA));
        obj.insert("command".into(), json!(command));
        obj.insert("pass".into(), json!(pass));
        Outcome { json: body, text, pass }
    }
}

fn verdict(pass: bool) -> &'static str {
    if pass {
        "PASS"
    } else {
        "FAIL"
    }
}

fn expected_dims(max_degree: u32) -> Vec<usize> {
    (0..=max_degree as usize)
        .map(|d| EXPECTED_POINCARE.get(d).copied().unwrap_or(0))
        .collect()
}

fn generator_json<C: Coefficient>(
    name: &str,
    p: &BasePolynomial<C>,
    coeff: impl Fn(&C) -> String,
) -> Value {
    let terms: Vec<Value> = p
        .canonical_terms()
        .iter()
        .map(|(m, c)| json!({"a1": m.a1, "c2": m.c2, "coeff": coeff(c)}))
        .collect();
    json!({"name": name, "text": p.render(), "terms": terms})
}

pub fn derive(n: Option<i64>) -> Outcome {
    let (mode, gens, homogeneous) = match n {
        None => {
            let r: RelationSet<ParamPoly> = derive_relations_symbolic();
            let render = |c: &ParamPoly| c.render("N");
            let gens = vec![generator_json("r1", &r.r1, render), generator_json("r2", &r.r2, render)];
            (r.n_mode, gens, r.check_homogeneous().is_ok())
        }
        Some(n) => {
            let r = derive_relations_at(n);
            let render = |c: &Rational| c.to_string();
            let gens = vec![generator_json("r1", &r.r1, render), generator_json("r2", &r.r2, render)];
            (r.n_mode, gens, r.check_homogeneous().is_ok())
        }
    };
    let mut text = format!("relations ({mode})\n");
    for g in &gens {
        let _ = writeln!(text, "{} = {}", g["name"].as_str().unwrap_or(""), g["text"].as_str().unwrap_or(""));
    }
    let _ = writeln!(text, "homogeneous of degrees 9, 10: {}", verdict(homogeneous));
    Outcome::new(
        "derive",
        json!({"n_mode": mode, "generators": gens, "homogeneous": homogeneous}),
        text,
        homogeneous,
    )
}

pub fn golden(tables: &GoldenTables) -> Outcome {
    let report = golden_compare_against(&derive_relations_symbolic(), tables);
    let mut text = String::new();
    for g in &report.generators {
        let _ = writeln!(
            text,
            "{}: {} reference terms, {} mismatches  {}",
            g.generator,
            g.reference_terms,
            g.mismatches.len(),
            verdict(g.agrees())
        );
        for m in &g.mismatches {
            let _ = writeln!(
                text,
                "  a1^{} c2^{}: expected {}, got {}",
                m.monomial.a1, m.monomial.c2, m.expected, m.got
            );
        }
    }
    let pass = report.agrees();
    Outcome::new("golden", json!({"report": report}), text, pass)
}

pub fn dump_tables() -> Outcome {
    let tables = GoldenTables::default();
    Outcome::new(
        "golden",
        json!({"tables": tables}),
        serde_json::to_string_pretty(&tables).expect("tables serialize"),
        true,
    )
}

fn dims_line(dims: &[usize]) -> String {
    dims.iter().map(usize::to_string).collect::<Vec<_>>().join(",")
}

pub fn hilbert(n: i64, max_degree: u32) -> Outcome {
    let h: HilbertData = hilbert_function(&derive_relations_at(n), max_degree);
    let expected = expected_dims(max_degree);
    let pass = h.dims == expected;
    let bound = complete_subvariety_bound(&h).ok();
    let mut text = format!("N = {n}, degrees 0..={max_degree}\n");
    let _ = writeln!(text, "dims:     [{}]", dims_line(&h.dims));
    let _ = writeln!(text, "expected: [{}]  {}", dims_line(&expected), verdict(pass));
    if let Some(b) = bound {
        let _ = writeln!(text, "socle degree / subvariety bound: {}", b.dimension);
    }
    Outcome::new(
        "hilbert",
        json!({"n": n, "max_degree": max_degree, "dims": h.dims, "expected": expected, "subvariety_bound": bound}),
        text,
        pass,
    )
}

pub fn gorenstein(n: i64) -> Result<Outcome> {
    let r = derive_relations_at(n);
    let report = gorenstein_check(&r).with_context(|| format!("N = {n}"))?;
    let pass = report.verdict && report.ranks() == EXPECTED_POINCARE.to_vec();
    let mut text = format!(
        "N = {n}, socle degree {}, socle generator a1^{} c2^{}\n",
        report.socle_degree, report.socle_generator.a1, report.socle_generator.c2
    );
    for e in &report.per_degree {
        let _ = writeln!(text, "  A^{:<2} x A^{:<2}  dims {}x{}  rank {}", e.degree, SOCLE_DEGREE - e.degree, e.dim, e.dual_dim, e.rank);
    }
    let _ = writeln!(text, "perfect pairing: {}", verdict(pass));
    Ok(Outcome::new("gorenstein", json!({"n": n, "report": report}), text, pass))
}

#[derive(serde::Serialize)]
struct SweepRow {
    n: i64,
    dims: Vec<usize>,
    hilbert_ok: bool,
    gorenstein_ok: bool,
    simplified_ideal_equal: bool,
    subvariety_bound: Option<u32>,
}

impl SweepRow {
    fn pass(&self) -> bool {
        self.hilbert_ok && self.gorenstein_ok && self.simplified_ideal_equal && self.subvariety_bound == Some(SOCLE_DEGREE)
    }
}

fn sweep_row(n: i64, r: &RelationSet<Rational>, max_degree: u32) -> SweepRow {
    let h = hilbert_function(r, max_degree);
    let gorenstein_ok = gorenstein_check(r).map(|g| g.verdict).unwrap_or(false);
    let simplified = simplified_generators().specialize(n);
    SweepRow {
        n,
        hilbert_ok: h.dims == expected_dims(max_degree),
        gorenstein_ok,
        simplified_ideal_equal: ideal_equal(r, &simplified, DEFAULT_MAX_DEGREE).unwrap_or(false),
        subvariety_bound: complete_subvariety_bound(&h).ok().map(|b| b.dimension),
        dims: h.dims,
    }
}

pub fn sweep(from: i64, to: i64, max_degree: u32) -> Outcome {
    let ns: Vec<i64> = (from..=to).collect();
    let sets = derive_relations_sweep(&ns);
    let rows: Vec<SweepRow> = ns
        .par_iter()
        .zip(sets.par_iter())
        .map(|(&n, r)| sweep_row(n, r, max_degree))
        .collect();
    let pass = rows.iter().all(SweepRow::pass);
    let mut text = String::from("N    hilbert  gorenstein  ideal=(p1,p2)  bound\n");
    for r in &rows {
        let _ = writeln!(
            text,
            "{:<4} {:<8} {:<11} {:<14} {}",
            r.n,
            verdict(r.hilbert_ok),
            verdict(r.gorenstein_ok),
            verdict(r.simplified_ideal_equal),
            r.subvariety_bound.map_or("-".to_string(), |b| b.to_string())
        );
    }
    let _ = writeln!(text, "overall: {}", verdict(pass));
    Outcome::new("sweep", json!({"from": from, "to": to, "rows": rows}), text, pass)
}

pub fn check_weierstrass(pairs: &[WeierstrassPair]) -> Outcome {
    let mut records = Vec::new();
    let mut text = String::new();
    for (i, w) in pairs.iter().enumerate() {
        let r = check_conditions(w);
        let d = discriminant(w);
        let _ = writeln!(
            text,
            "[{i}] N = {}: discriminant_ok: {}, minimal: {}, stable: {}, semistable: {}, in_delta1: {}",
            w.n(),
            r.discriminant_ok,
            r.minimal,
            r.stable,
            r.semistable,
            r.in_delta1
        );
        for wit in &r.witnesses {
            let _ = writeln!(text, "    {}", serde_json::to_string(wit).expect("witness serializes"));
        }
        records.push(json!({
            "n": w.n(),
            "A": w.a_poly().render("t"),
            "B": w.b_poly().render("t"),
            "discriminant": d.poly.render("t"),
            "discriminant_order_at_infinity": d.order_at_infinity,
            "report": r,
        }));
    }
    Outcome::new("check-weierstrass", json!({"pairs": records}), text, true)
}

pub fn kappa_verify() -> Outcome {
    let inv = verify_invariance();
    let stu = verify_stu_identities(&TestCurveData::stu()).expect("the STU data covers every combination");
    let mut text = String::from("invariance under sigma -> sigma + l', f -> f + l\n");
    for c in &inv.checks {
        let _ = writeln!(text, "  {:<45} residual {:<8} {}", c.combination, c.residual, verdict(c.pass));
    }
    text.push_str("STU test curve\n");
    for c in &stu.checks {
        let _ = writeln!(text, "  {:<58} {} = {}  {}", c.identity, c.lhs, c.rhs, verdict(c.pass));
    }
    let pass = inv.all_pass() && stu.all_pass();
    Outcome::new("kappa-verify", json!({"invariance": inv, "stu": stu}), text, pass)
}

pub fn report() -> Outcome {
    let golden = golden(&GoldenTables::default());
    let sweep = sweep(2, 8, DEFAULT_MAX_DEGREE);
    let delta1_ok = (1..=20).all(|n| delta1_codimension(n).ok() == Some(8 * n + 1)) && (2..=20).all(|n| 8 * n + 1 >= 17);
    let kappa = kappa_verify();
    let sections = [
        ("golden relations", golden.pass),
        ("N = 2..8: hilbert, gorenstein, simplified ideal, bound", sweep.pass),
        ("delta1 codimension 8N+1", delta1_ok),
        ("kappa identities", kappa.pass),
    ];
    let pass = sections.iter().all(|(_, p)| *p);
    let mut text = String::new();
    for (name, p) in &sections {
        let _ = writeln!(text, "{:<55} {}", name, verdict(*p));
    }
    let _ = writeln!(text, "overall: {}", verdict(pass));
    Outcome::new(
        "report",
        json!({
            "golden": golden.json,
            "sweep": sweep.json,
            "delta1_codimension": delta1_ok,
            "kappa": kappa.json,
        }),
        text,
        pass,
    )
}
