//! Acceptance suite: one PASS/FAIL line per criterion.  Runs as a plain binary
//! (`harness = false`) and exits nonzero when a hard criterion fails.

use edrlab_core::classify::{Classifier, FlagId, DEFAULT_BUDGET};
use edrlab_core::constructive::{cr3_predicate, cr3_witness, eq4_holds, eq4_witness, snf};
use edrlab_core::lab::verify::coker_failure;
use edrlab_core::lab::{
    sweep, CaseVerdict, Corpus, SweepConfig, SweepReport, TheoremCase, TheoremId,
};
use edrlab_core::lift::{
    det_lift, prop4, triangular_det_lift, triangular_weak_lift, PropSelection, M2,
};
use edrlab_core::ring::{make_finite_ring, FiniteRing};
use edrlab_core::units::{
    coker_is_boolean, ex10_admissible, ex10_correspondence, is_u2_ring, th3_factor_check,
};
use edrlab_core::Elem;
use num_bigint::BigInt;
use num_integer::Integer;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use std::time::Instant;

const SEED: u64 = 20_240_517;

enum Outcome {
    Pass(String),
    Fail(String),
    /// Below target but above the stated soft threshold.
    SoftFail(String),
}

type Criterion = fn(&Ctx) -> Outcome;

struct Ctx {
    corpus: Corpus,
    report: SweepReport,
    report_json: String,
    sweep_seconds: f64,
}

fn cases(ctx: &Ctx, id: TheoremId) -> impl Iterator<Item = &TheoremCase> {
    ctx.report
        .cases
        .iter()
        .filter(move |c| c.theorem == id.name())
}

fn unimodular_matrices(r: &FiniteRing) -> impl Iterator<Item = M2> + '_ {
    let n = r.size() as u32;
    (0..n.pow(4)).filter_map(move |k| {
        let m = [k % n, (k / n) % n, (k / n / n) % n, k / n / n / n].map(Elem);
        r.is_unimodular(&m).then_some(m)
    })
}

fn random_unimodular(r: &FiniteRing, rng: &mut ChaCha8Rng) -> M2 {
    let n = r.size() as u32;
    loop {
        let m = [0; 4].map(|_| Elem(rng.gen_range(0..n)));
        if r.is_unimodular(&m) {
            return m;
        }
    }
}

/// Diagram (1) on every unimodular matrix for |R| ≤ 8 and on 10³ samples above.
fn criterion1(ctx: &Ctx) -> Outcome {
    let start = Instant::now();
    let mut rng = ChaCha8Rng::seed_from_u64(SEED);
    let mut checked = 0u64;
    for e in &ctx.corpus.entries {
        let r = &e.ring;
        let ms: Vec<M2> = if r.size() <= 8 {
            unimodular_matrices(r).collect()
        } else {
            (0..1000).map(|_| random_unimodular(r, &mut rng)).collect()
        };
        for m in ms {
            checked += 1;
            let p = prop4(r, m, PropSelection::ALL).expect("unimodular input");
            let v = p.diagram_violations();
            if !v.is_empty() {
                return Outcome::Fail(format!("{} {}: {:?}", e.spec, p.matrix, v));
            }
        }
    }
    Outcome::Pass(format!(
        "{checked} matrices, 0 violations, {:.1}s",
        start.elapsed().as_secs_f64()
    ))
}

fn triangular_unimodular(r: &FiniteRing) -> Vec<[Elem; 3]> {
    let mut out = Vec::new();
    for a in r.elements() {
        for b in r.elements() {
            for c in r.elements() {
                if r.is_unimodular(&[a, b, c]) {
                    out.push([a, b, c]);
                }
            }
        }
    }
    out
}

/// The upper-triangular liftability formulas against the definitional coset scan.
fn criterion2(ctx: &Ctx) -> Outcome {
    let mut n1 = 0;
    for n in 2..=8 {
        let r = make_finite_ring(&format!("Zmod:{n}")).unwrap();
        for [a, b, c] in triangular_unimodular(&r) {
            n1 += 1;
            let formula = triangular_det_lift(&r, a, b, c).is_some();
            let direct = det_lift(&r, [a, b, r.zero(), c], true).is_some();
            if formula != direct {
                return Outcome::Fail(format!(
                    "Zmod:{n} (a,b,c)={:?}: formula {formula}, scan {direct}",
                    r.render_all(&[a, b, c])
                ));
            }
        }
    }
    let mut n2 = 0;
    let mut rings = 0;
    for e in ctx.corpus.entries.iter().filter(|e| e.tags.reduced) {
        rings += 1;
        let r = &e.ring;
        for [a, b, c] in triangular_unimodular(r) {
            n2 += 1;
            let formula = triangular_weak_lift(r, a, b, c).is_some();
            let direct = det_lift(r, [a, b, r.zero(), c], false).is_some();
            if formula != direct {
                return Outcome::Fail(format!(
                    "{} (a,b,c)={:?}: equation {formula}, scan {direct}",
                    e.spec,
                    r.render_all(&[a, b, c])
                ));
            }
        }
    }
    Outcome::Pass(format!(
        "{n1} det-liftability instances over Zmod:2..8, {n2} weak instances over {rings} reduced rings, exact agreement"
    ))
}

/// Every statement of the Hermite-ring equivalence is true on every Hermite ring.
fn criterion3(ctx: &Ctx) -> Outcome {
    let mut hermite = 0;
    for c in cases(ctx, TheoremId::Th1) {
        match c.verdict {
            CaseVerdict::Inapplicable => continue,
            CaseVerdict::Verified => {}
            _ => return Outcome::Fail(format!("{}: {:?} {}", c.ring, c.verdict, c.evidence)),
        }
        hermite += 1;
        let st = c.evidence["statements"].as_object().unwrap();
        let six = c.evidence.get("statement_6").map(|s| s["value"].clone());
        let all_true = st.values().all(|v| v == "true") && six.is_none_or(|v| v == "true");
        let six_present = st.len() == 6 || c.evidence.get("statement_6").is_some();
        if !all_true || !six_present {
            return Outcome::Fail(format!("{}: {}", c.ring, c.evidence));
        }
    }
    Outcome::Pass(format!(
        "{hermite} Hermite rings, statements (1)-(6) all true, 0 disagreements"
    ))
}

/// U₂ everywhere, agreement with the factorization statement, and the implications.
fn criterion4(ctx: &Ctx) -> Outcome {
    for e in &ctx.corpus.entries {
        let r = &e.ring;
        if let Err(f) = is_u2_ring(r) {
            return Outcome::Fail(format!("{} not U2: {f:?}", e.spec));
        }
        let hermite = Classifier::new(r.clone(), DEFAULT_BUDGET).flag(FlagId::Hermite);
        if hermite.is_true() && !th3_factor_check(r).pairs_hold() {
            return Outcome::Fail(format!("{}: U2 but factorization statement fails", e.spec));
        }
    }
    let mut applied = 0;
    for id in [TheoremId::Ex3, TheoremId::Th2Cond1, TheoremId::Th2Cond2] {
        for c in cases(ctx, id) {
            match c.verdict {
                CaseVerdict::Verified => applied += 1,
                CaseVerdict::Inapplicable => {}
                _ => return Outcome::Fail(format!("{} on {}: {:?}", id.name(), c.ring, c.verdict)),
            }
        }
    }
    Outcome::Pass(format!(
        "{} rings U2 and matching the factorization check; {applied} applicable implication cases hold",
        ctx.corpus.len()
    ))
}

/// Boolean cokernels on WSU₂ rings.
fn criterion5(ctx: &Ctx) -> Outcome {
    let mut rings = 0;
    let mut exhaustive = 0u64;
    for e in &ctx.corpus.entries {
        let r = &e.ring;
        if !Classifier::new(r.clone(), DEFAULT_BUDGET)
            .flag(FlagId::Wsu2)
            .is_true()
        {
            continue;
        }
        rings += 1;
        if r.size() <= 12 {
            for a in r.elements() {
                for b in r.elements().filter(|&b| r.is_unimodular2(a, b)) {
                    for c in r.elements() {
                        exhaustive += 1;
                        if !coker_is_boolean(r, a, b, c).unwrap() {
                            return Outcome::Fail(format!(
                                "{} (a,b,c)={:?}",
                                e.spec,
                                r.render_all(&[a, b, c])
                            ));
                        }
                    }
                }
            }
        } else if let Some(t) = coker_failure(r) {
            return Outcome::Fail(format!("{} (a,b,c)={:?}", e.spec, r.render_all(&t)));
        }
    }
    Outcome::Pass(format!(
        "{rings} WSU2 rings; {exhaustive} direct triples for |R| <= 12, ideal-class scan above"
    ))
}

/// Non-fullness against membership in the image of the unit map.
fn criterion6(_: &Ctx) -> Outcome {
    let mut checked = 0;
    for n in 2..=12 {
        let r = make_finite_ring(&format!("Zmod:{n}")).unwrap();
        for a in r.elements() {
            for c in r.elements() {
                for u in r.elements() {
                    if !ex10_admissible(&r, a, c, u) {
                        continue;
                    }
                    checked += 1;
                    let (nf, img) = ex10_correspondence(&r, a, c, u).unwrap();
                    if nf != img {
                        return Outcome::Fail(format!(
                            "Zmod:{n} (a,c,u)={:?}: non_full {nf}, image {img}",
                            r.render_all(&[a, c, u])
                        ));
                    }
                }
            }
        }
    }
    Outcome::Pass(format!(
        "{checked} admissible triples over Zmod:2..12, exact"
    ))
}

fn criterion7(ctx: &Ctx) -> Outcome {
    let mut char2 = 0;
    for c in cases(ctx, TheoremId::Cr1) {
        if c.verdict != CaseVerdict::Verified {
            return Outcome::Fail(format!("{}: {:?} {}", c.ring, c.verdict, c.evidence));
        }
        if c.evidence["converse_checked"] == true {
            char2 += 1;
        }
    }
    let expected = ctx.corpus.entries.iter().filter(|e| e.tags.char2).count();
    if char2 != expected {
        return Outcome::Fail(format!(
            "converse checked on {char2} of {expected} char-2 rings"
        ));
    }
    Outcome::Pass(format!(
        "forward direction on {} rings, both directions on {char2} char-2 rings, exhaustive",
        ctx.corpus.len()
    ))
}

fn det_i128(m: &[Vec<i128>]) -> i128 {
    let n = m.len();
    if n == 1 {
        return m[0][0];
    }
    (0..n)
        .map(|j| {
            let minor: Vec<Vec<i128>> = m[1..]
                .iter()
                .map(|row| {
                    row.iter()
                        .enumerate()
                        .filter(|&(k, _)| k != j)
                        .map(|(_, &x)| x)
                        .collect()
                })
                .collect();
            let sign = if j % 2 == 0 { 1 } else { -1 };
            sign * m[0][j] * det_i128(&minor)
        })
        .sum()
}

fn combinations(n: usize, k: usize) -> Vec<Vec<usize>> {
    if k == 0 {
        return vec![vec![]];
    }
    (k - 1..n)
        .flat_map(|last| {
            combinations(last, k - 1).into_iter().map(move |mut c| {
                c.push(last);
                c
            })
        })
        .collect()
}

/// Invariant factors from gcds of k×k minors.
fn minor_oracle(b: &[Vec<i128>]) -> Vec<i128> {
    let (m, n) = (b.len(), b[0].len());
    let mut prev = 1i128;
    let mut out = Vec::new();
    for k in 1..=m.min(n) {
        let mut g = 0i128;
        for rows in combinations(m, k) {
            for cols in combinations(n, k) {
                let minor: Vec<Vec<i128>> = rows
                    .iter()
                    .map(|&i| cols.iter().map(|&j| b[i][j]).collect())
                    .collect();
                g = g.gcd(&det_i128(&minor));
            }
        }
        out.push(if g == 0 { 0 } else { g / prev });
        if g != 0 {
            prev = g;
        }
    }
    out
}

fn criterion8(_: &Ctx) -> Outcome {
    let start = Instant::now();
    let mut rng = ChaCha8Rng::seed_from_u64(SEED);
    for i in 0..10_000 {
        let (m, n) = (rng.gen_range(1..=5), rng.gen_range(1..=5));
        let b: Vec<Vec<i128>> = (0..m)
            .map(|_| (0..n).map(|_| rng.gen_range(-100..=100)).collect())
            .collect();
        let big: Vec<Vec<BigInt>> = b
            .iter()
            .map(|r| r.iter().map(|&x| BigInt::from(x)).collect())
            .collect();
        let cert = snf(&big).unwrap();
        if !cert.verify() {
            return Outcome::Fail(format!("sample {i}: certificate does not verify: {b:?}"));
        }
        let got: Vec<i128> = cert
            .invariant_factors()
            .iter()
            .map(|x| i128::try_from(x).unwrap())
            .collect();
        if got != minor_oracle(&b) {
            return Outcome::Fail(format!(
                "sample {i}: factors {got:?} vs minors {:?} for {b:?}",
                minor_oracle(&b)
            ));
        }
    }
    let secs = start.elapsed().as_secs_f64();
    let msg = format!("10000 matrices, MBN = D, chain and minor gcds agree, {secs:.1}s");
    if secs > 120.0 {
        Outcome::Fail(format!("{msg} (over 120s)"))
    } else {
        Outcome::Pass(msg)
    }
}

fn criterion9(ctx: &Ctx) -> Outcome {
    let mut rings = 0;
    for c in cases(ctx, TheoremId::L1) {
        let size = ctx
            .corpus
            .entries
            .iter()
            .find(|e| e.spec == c.ring)
            .map(|e| e.size);
        if size.is_none_or(|s| s > 16) {
            continue;
        }
        rings += 1;
        if c.verdict != CaseVerdict::Verified {
            return Outcome::Fail(format!("{}: {}", c.ring, c.evidence));
        }
    }
    Outcome::Pass(format!(
        "{rings} rings with |R| <= 16, every associate pair, N in SL2 with the identity"
    ))
}

fn criterion10(_: &Ctx) -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(SEED);
    let mut draw = |nonzero: bool| loop {
        let x: i64 = rng.gen_range(-25..=25);
        if !nonzero || x != 0 {
            return BigInt::from(x);
        }
    };
    let mut unknown = Vec::new();
    let (mut max_cr3, mut max_eq4) = (BigInt::from(0), BigInt::from(0));
    for _ in 0..1000 {
        let (a, b, s) = (draw(false), draw(false), draw(false));
        match cr3_witness(&a, &b, &s, 30).witness() {
            Some(w) => {
                if !cr3_predicate(&a, &b, &s, &w.e, &w.f) {
                    return Outcome::Fail(format!("cr3 witness fails for ({a},{b},{s})"));
                }
                max_cr3 = max_cr3.max(w.e.magnitude().max(w.f.magnitude()).clone().into());
            }
            None => unknown.push(format!("cr3({a},{b},{s})")),
        }
    }
    for _ in 0..1000 {
        let (a, u, t) = (draw(false), draw(true), draw(false));
        match eq4_witness(&a, &u, &t, 30).unwrap().witness() {
            Some(w) => {
                if !eq4_holds(&a, &u, &t, &w.s, &w.l, &w.z) {
                    return Outcome::Fail(format!("eq4 witness fails for ({a},{u},{t})"));
                }
                max_eq4 = max_eq4.max(w.s.magnitude().max(w.l.magnitude()).clone().into());
            }
            None => unknown.push(format!("eq4({a},{u},{t})")),
        }
    }
    let rate = 1.0 - unknown.len() as f64 / 2000.0;
    let msg = format!(
        "success {:.2}% (max |e|,|f| = {max_cr3}, max |s|,|l| = {max_eq4}); unknown: {unknown:?}",
        rate * 100.0
    );
    if unknown.is_empty() {
        Outcome::Pass(msg)
    } else if rate >= 0.99 {
        Outcome::SoftFail(msg)
    } else {
        Outcome::Fail(msg)
    }
}

fn criterion11(ctx: &Ctx) -> Outcome {
    let ids = TheoremId::ALL.to_vec();
    let other = sweep(
        &ctx.corpus,
        &ids,
        &SweepConfig {
            threads: 3,
            seed: SEED,
            ..Default::default()
        },
    );
    let json = serde_json::to_string(&other).unwrap();
    if json != ctx.report_json {
        return Outcome::Fail("reports differ between 1 and 3 threads".into());
    }
    if ctx.report.summary.counterexample != 0 {
        return Outcome::Fail(format!(
            "sweep has {} counterexamples",
            ctx.report.summary.counterexample
        ));
    }
    Outcome::Pass(format!(
        "{} bytes identical for 1 and 3 threads; sweep {:?} in {:.1}s",
        json.len(),
        ctx.report.summary,
        ctx.sweep_seconds
    ))
}

fn main() {
    let corpus = Corpus::default_corpus().expect("default corpus builds");
    let start = Instant::now();
    let report = sweep(
        &corpus,
        &TheoremId::ALL,
        &SweepConfig {
            threads: 1,
            seed: SEED,
            ..Default::default()
        },
    );
    let ctx = Ctx {
        report_json: serde_json::to_string(&report).unwrap(),
        sweep_seconds: start.elapsed().as_secs_f64(),
        corpus,
        report,
    };
    let criteria: [(&str, Criterion); 11] = [
        ("matrix-property implications", criterion1),
        ("triangular liftability cross-oracles", criterion2),
        ("Hermite-ring equivalence (1)-(6)", criterion3),
        ("U2 machinery", criterion4),
        ("Boolean cokernels on WSU2 rings", criterion5),
        ("non-full vs unit-map image", criterion6),
        ("symmetric unit-value criterion", criterion7),
        ("Smith normal form certificates", criterion8),
        ("associate-pair SL2 matrices", criterion9),
        ("bounded integer witnesses", criterion10),
        ("sweep determinism", criterion11),
    ];
    let mut hard_failures = 0;
    for (i, (name, f)) in criteria.iter().enumerate() {
        let (tag, detail) = match f(&ctx) {
            Outcome::Pass(d) => ("PASS", d),
            Outcome::SoftFail(d) => ("SOFT-FAIL", d),
            Outcome::Fail(d) => {
                hard_failures += 1;
                ("FAIL", d)
            }
        };
        println!("[{tag}] criterion {:>2}: {name}: {detail}", i + 1);
    }
    if hard_failures > 0 {
        std::process::exit(1);
    }
}
