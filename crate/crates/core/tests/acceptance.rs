use std::path::PathBuf;
use std::time::Instant;

use num_bigint::BigUint;
use rand::seq::SliceRandom;
use rand::Rng;
use rayon::prelude::*;

use rankpit::algdep::{
    algebraic_rank, annihilator_rank, dependent_annihilators, find_annihilator, kayal_cap, newton_reconstruct,
    reconstruct_dependence, rewrite_circuit, sample_good_translation, Annihilator, RankMode, TranslationSampler,
};
use rankpit::corpus::{class_circuit, fixture_e1, random_polynomial, random_tuple, rank_tuple, rewrite_fixture, rng, CircuitKind};
use rankpit::measure::{composition_upper_bound, psp_dimension, MeasureSpec};
use rankpit::nw::{nw_polynomial, slot_survival_experiment, HardPolyParams, NWParams};
use rankpit::pit::{hitting_set, hitting_set_size, pit_test, support_bound, PitOptions, Variant, Verdict};
use rankpit::poly::DEFAULT_TERM_CAP;
use rankpit::{Domain, Error, Monomial, MonomialOrder, Polynomial};

const SIGMA_PI: u64 = 500;
const SIGMA_GAMMA: u64 = 100;
const PIT_SECONDS: f64 = 600.0;
const RANK_TUPLES: u64 = 200;
const DEPENDENT_TUPLES: u64 = 100;
const MAX_RETRIES: u32 = 10;
const REWRITES: u64 = 50;
const MEASURE_TRIALS: u64 = 1000;
const SURVIVAL_TRIALS: u32 = 1000;

struct Outcome {
    pass: bool,
    detail: String,
}

fn outcome(pass: bool, detail: String) -> Outcome {
    Outcome { pass, detail }
}

fn fixture(name: &str) -> PathBuf {
    PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("fixtures").join(name)
}

fn composes_to_zero(a: &Annihilator, q: &[Polynomial]) -> bool {
    a.r.compose(q, DEFAULT_TERM_CAP).is_ok_and(|p| p.is_zero())
}

struct PitStats {
    outcome: Outcome,
    nonzero: usize,
    support_violations: usize,
    max_ratio: f64,
}

fn pit_corpus() -> PitStats {
    let start = Instant::now();
    let cases = (0..SIGMA_PI)
        .map(|s| class_circuit(CircuitKind::SigmaPi, s))
        .chain((0..SIGMA_GAMMA).map(|s| class_circuit(CircuitKind::SigmaGamma, s)));
    let mut discrepancies = Vec::new();
    let (mut total, mut zeros, mut nonzero, mut support_violations) = (0, 0, 0, 0);
    let mut max_ratio = 0.0f64;
    for case in cases {
        total += 1;
        let c = &case.circuit;
        let expanded = c.expand(DEFAULT_TERM_CAP).expect("corpus circuits expand");
        let report = match pit_test(c, &PitOptions::default()) {
            Ok(r) => r,
            Err(e) => {
                discrepancies.push(format!("{:?}/{}: {e}", case.kind, case.seed));
                continue;
            }
        };
        if (report.verdict == Verdict::Zero) != expanded.is_zero() {
            discrepancies.push(format!("{:?}/{}", case.kind, case.seed));
        }
        if expanded.is_zero() {
            zeros += 1;
            continue;
        }
        nonzero += 1;
        let ell = report.hitting_set.as_ref().map_or(0, |h| h.bound.ell);
        let support = expanded.trailing_monomial(MonomialOrder::GradedLex).unwrap().support_size() as u64;
        if support > ell {
            support_violations += 1;
        }
        max_ratio = max_ratio.max(support as f64 / ell as f64);
    }
    let secs = start.elapsed().as_secs_f64();
    let pass = discrepancies.is_empty() && secs < PIT_SECONDS;
    let mut detail = format!(
        "{total} circuits, {zeros} zero, {} discrepancies, {secs:.1}s of {PIT_SECONDS}s",
        discrepancies.len()
    );
    if !discrepancies.is_empty() {
        detail.push_str(&format!(": {}", discrepancies.join(", ")));
    }
    PitStats {
        outcome: outcome(pass, detail),
        nonzero,
        support_violations,
        max_ratio,
    }
}

fn rank_equivalence(anns: &mut Vec<(Annihilator, Vec<Polynomial>)>) -> Outcome {
    let mut bad = Vec::new();
    let mut dependent = 0;
    for seed in 0..RANK_TUPLES {
        let case = rank_tuple(seed);
        let q = &case.polys;
        let t = q.len();
        let rand = algebraic_rank(q, RankMode::randomized(seed)).map(|c| c.rank);
        let sym = algebraic_rank(q, RankMode::Symbolic).map(|c| c.rank);
        let formula = match find_annihilator(q, None) {
            Ok(a) => {
                dependent += 1;
                anns.push((a, q.clone()));
                Ok(t - 1)
            }
            Err(Error::NoAnnihilatorWithinCap { .. }) => Ok(t),
            Err(e) => Err(e),
        };
        let greedy = annihilator_rank(q).map(|r| r.0);
        match (rand, sym, formula, greedy) {
            (Ok(a), Ok(b), Ok(c), Ok(d)) if a == b && b == c && c == d => {}
            other => bad.push(format!("{seed}: {other:?}")),
        }
    }
    outcome(
        bad.is_empty(),
        format!(
            "{RANK_TUPLES} tuples, {dependent} dependent, {} disagreements{}",
            bad.len(),
            if bad.is_empty() { String::new() } else { format!(": {}", bad.join("; ")) }
        ),
    )
}

fn dependence_identity(anns: &mut Vec<(Annihilator, Vec<Polynomial>)>) -> Outcome {
    let mut failures = Vec::new();
    let mut max_attempts = 0;
    let mut checked = 0;
    for s in 0..DEPENDENT_TUPLES {
        let seed = 1000 + s;
        let case = random_tuple(seed, true);
        let q = &case.polys;
        let d = q.iter().map(|p| p.total_degree()).max().unwrap_or(0);
        let mut run = || -> rankpit::Result<(bool, u32, usize)> {
            let basis = algebraic_rank(q, RankMode::randomized(seed))?.basis_indices;
            if basis.len() > 2 || d > 3 || basis.len() == q.len() {
                return Ok((false, 0, 0));
            }
            for (i, a) in dependent_annihilators(q, &basis)? {
                let tuple = basis.iter().chain([&i]).map(|&b| q[b].clone()).collect();
                anns.push((a, tuple));
            }
            let sampler = TranslationSampler::new(q.len(), basis.len(), d, seed);
            let tr = sample_good_translation(q, &basis, &sampler)?;
            let w = reconstruct_dependence(q, &basis, &tr.point, None)?;
            let mut ok = w.verify(q)?;
            for &i in w.f.keys() {
                let nc = newton_reconstruct(q, &basis, &tr.point, i)?;
                let nv = nc.series.nvars();
                ok &= nc.series == q[i].clone().with_nvars(nv).translate(&tr.point)?;
            }
            Ok((ok, tr.attempts, w.f.len()))
        };
        match run() {
            Ok((true, attempts, n)) => {
                checked += n;
                max_attempts = max_attempts.max(attempts);
            }
            Ok((false, ..)) => failures.push(format!("{seed}")),
            Err(e) => failures.push(format!("{seed}: {e}")),
        }
    }
    let pass = failures.is_empty() && max_attempts <= MAX_RETRIES + 1;
    outcome(
        pass,
        format!(
            "{DEPENDENT_TUPLES} tuples, {checked} dependent members, {} failures, max translation attempts {max_attempts} (limit {})",
            failures.len(),
            MAX_RETRIES + 1
        ) + &if failures.is_empty() { String::new() } else { format!(": {}", failures.join(", ")) },
    )
}

fn annihilator_exactness(anns: &[(Annihilator, Vec<Polynomial>)]) -> Outcome {
    let nonvanishing = anns.iter().filter(|(a, q)| !composes_to_zero(a, q)).count();
    let e1 = fixture_e1();
    let (text, degree, vanishes) = match find_annihilator(&e1, None) {
        Ok(a) => (a.r.to_text("z"), a.degree, composes_to_zero(&a, &e1)),
        Err(e) => (e.to_string(), 0, false),
    };
    let cap = kayal_cap(2, 2);
    let pass = nonvanishing == 0
        && vanishes
        && text == "z1^2 - 2*z2 - z3"
        && degree == 2
        && cap == 12
        && degree as u64 <= cap;
    outcome(
        pass,
        format!(
            "{} annihilators, {nonvanishing} nonvanishing; E1: {text} at degree {degree}, cap {cap}",
            anns.len() + 1
        ),
    )
}

fn rewrite_identity() -> Outcome {
    let mut failures = Vec::new();
    let mut widest = 0;
    for seed in 0..REWRITES {
        let c = rewrite_fixture(seed);
        let dec = c.declared();
        let limit = dec.k as usize * (dec.d as usize + 1);
        let mut run = || -> rankpit::Result<bool> {
            let rw = rewrite_circuit(&c, seed)?;
            let lhs = rw.circuit.expand(DEFAULT_TERM_CAP)?;
            let rhs = c.expand(DEFAULT_TERM_CAP)?.translate(&rw.a)?;
            let width = rw.circuit.gates().iter().map(|g| g.inner.len()).max().unwrap_or(0);
            widest = widest.max(width);
            Ok(lhs == rhs && width <= limit)
        };
        match run() {
            Ok(true) => {}
            Ok(false) => failures.push(format!("{seed}")),
            Err(e) => failures.push(format!("{seed}: {e}")),
        }
    }
    outcome(
        failures.is_empty(),
        format!(
            "{REWRITES} circuits, {} failures, widest rewritten gate {widest}{}",
            failures.len(),
            if failures.is_empty() { String::new() } else { format!(": {}", failures.join(", ")) }
        ),
    )
}

fn phi(p: &Polynomial, spec: &MeasureSpec) -> usize {
    psp_dimension(p, spec).expect("measure within cap").dimension
}

/// A polynomial in `N <= 10` variables and a random derivative set with `r <= 2`, `m <= 3`.
fn measure_case(seed: u64) -> (Polynomial, MeasureSpec) {
    let mut r = rng(seed);
    let n = r.gen_range(2..=10usize);
    let deg = r.gen_range(1..=4);
    let p = random_polynomial(&mut r, Domain::Rational, n, deg, 6);
    (p, random_spec(&mut r, n))
}

fn random_spec(r: &mut impl Rng, n: usize) -> MeasureSpec {
    let order = r.gen_range(0..=2u32.min(n as u32));
    let m = r.gen_range(0..=3u32);
    let mut derivs = MeasureSpec::all_multilinear(n, order, m).derivatives().to_vec();
    derivs.shuffle(r);
    derivs.truncate(r.gen_range(1..=derivs.len()));
    MeasureSpec::new(derivs, m).unwrap()
}

fn count_failures(trials: u64, salt: u64, check: impl Fn(u64) -> bool + Sync) -> usize {
    (0..trials).into_par_iter().filter(|&t| !check(t ^ salt)).count()
}

fn measure_suite() -> Outcome {
    let subadditive = count_failures(MEASURE_TRIALS, 0x5ab, |seed| {
        let (p, spec) = measure_case(seed);
        let mut r = rng(!seed);
        let q = random_polynomial(&mut r, Domain::Rational, p.nvars(), 3, 6);
        let d = Domain::Rational;
        let combo = p.scale(&d.from_i64(r.gen_range(-3..=3))).add(&q.scale(&d.from_i64(r.gen_range(-3..=3))));
        phi(&combo, &spec) <= phi(&p, &spec) + phi(&q, &spec)
    });
    let components = count_failures(MEASURE_TRIALS, 0xc0c, |seed| {
        let (p, spec) = measure_case(seed);
        let whole = phi(&p, &spec);
        (0..=p.total_degree()).all(|i| phi(&p.homogeneous_component(i), &spec) <= whole)
    });
    let composition = count_failures(MEASURE_TRIALS, 0xc0b, |seed| {
        let mut r = rng(seed);
        let n = r.gen_range(2..=10usize);
        let t = r.gen_range(1..=3usize);
        let s = r.gen_range(1..=2u64);
        let inner: Vec<Polynomial> = (0..t)
            .map(|_| {
                let deg = r.gen_range(1..=2);
                random_polynomial(&mut r, Domain::Rational, n, deg, 3).filter_terms(|m| m.support_size() as u64 <= s)
            })
            .collect();
        let outer_deg = r.gen_range(1..=2);
        let f = random_polynomial(&mut r, Domain::Rational, t, outer_deg, 3);
        let p = f.compose(&inner, DEFAULT_TERM_CAP).unwrap().with_nvars(n);
        let half = n as u64 / 2;
        let order = r.gen_range(0..=2u64.min(half / s));
        let m = r.gen_range(0..=3u64.min(half - order * s));
        let spec = MeasureSpec::all_multilinear(n, order as u32, m as u32);
        let bound = composition_upper_bound(n as u64, t as u64, order, m, s).unwrap();
        BigUint::from(phi(&p, &spec)) <= bound
    });
    let monotone = count_failures(MEASURE_TRIALS, 0x303, |seed| {
        let (p, spec) = measure_case(seed);
        let full = MeasureSpec::all_multilinear(p.nvars(), spec.r(), spec.m());
        phi(&p, &spec) <= phi(&p, &full)
    });
    let worked = Polynomial::parse(Domain::Rational, Some(4), "x1*x2 + x3*x4").unwrap();
    let spec = MeasureSpec::new(vec![Monomial::var(0), Monomial::var(2)], 1).unwrap();
    let worked_phi = phi(&worked, &spec);
    let counterexamples = subadditive + components + composition + monotone;
    outcome(
        counterexamples == 0 && worked_phi == 5,
        format!(
            "{MEASURE_TRIALS} trials each; counterexamples: subadditivity {subadditive}, components {components}, \
             composition {composition}, monotonicity {monotone}; worked example Phi = {worked_phi}"
        ),
    )
}

fn nw_exactness() -> Outcome {
    let mut count_mismatches = Vec::new();
    let mut out_of_domain = Vec::new();
    let (mut tuples, mut matching, mut distance_violations) = (0, 0, 0);
    for q in [2u32, 3, 5] {
        for n in 1..=q {
            for e in 0..=3u32 {
                let Ok(params) = NWParams::new(n, q, e) else {
                    out_of_domain.push(format!("({n},{q},{e})"));
                    continue;
                };
                tuples += 1;
                let poly = nw_polynomial(&params, Domain::Rational);
                let expected = (q as usize).pow(e);
                if poly.len() == expected {
                    matching += 1;
                } else {
                    count_mismatches.push(format!("({n},{q},{e}): {} != {expected}", poly.len()));
                }
                let monos: Vec<&Monomial> = poly.monomials().collect();
                for (i, a) in monos.iter().enumerate() {
                    for b in &monos[i + 1..] {
                        if a.support().filter(|v| b.exponent(*v) > 0).count() >= e as usize {
                            distance_violations += 1;
                        }
                    }
                }
            }
        }
    }
    let base = NWParams::new(3, 5, 2).unwrap();
    let hp = HardPolyParams::with_p(base, 0.5, 0.3, 2).unwrap();
    let stats = slot_survival_experiment(&hp, SURVIVAL_TRIALS, 8);
    let pass = count_mismatches.is_empty() && distance_violations == 0 && stats.within_three_sigma;
    let mut detail = format!(
        "count q^e on {matching} of {tuples} (n,q,e)",
    );
    if !count_mismatches.is_empty() {
        detail.push_str(&format!("; mismatches {}", count_mismatches.join(", ")));
    }
    if !out_of_domain.is_empty() {
        detail.push_str(&format!("; outside e <= q: {}", out_of_domain.join(", ")));
    }
    detail.push_str(&format!(
        "; {distance_violations} pairs sharing >= e slots; dead slots {:.4} vs (1-p)^gamma = {:.4}, sigma {:.4} over {} trials",
        stats.dead_fraction, stats.expected, stats.sigma, stats.trials
    ));
    outcome(pass, detail)
}

fn hitting_set_cardinality() -> Outcome {
    let combos: Vec<(usize, u64, u64)> = (0..20u64)
        .map(|i| {
            let mut r = rng(900 + i);
            (r.gen_range(0..=7usize), r.gen_range(1..=5u64), r.gen_range(0..=5u64))
        })
        .collect();
    let mut bad = Vec::new();
    for &(n, delta, ell) in &combos {
        let h = hitting_set(n, delta, ell, Domain::Rational, u64::MAX).unwrap();
        let enumerated = h.points().count() as u64;
        let formula: BigUint = (0..=ell.min(n as u64))
            .map(|j| num_integer::binomial(BigUint::from(n), BigUint::from(j)) * BigUint::from(delta).pow(j as u32))
            .sum();
        if BigUint::from(enumerated) != formula || hitting_set_size(n, delta, ell) != formula {
            bad.push(format!("({n},{delta},{ell})"));
        }
    }
    let b = support_bound(1, 1, 1, 1, Variant::General).unwrap();
    let pass = bad.is_empty() && b.ell == 208;
    outcome(
        pass,
        format!(
            "{} combinations, {} mismatches{}; support_bound(1,1,1,1,general) = {} from {}",
            combos.len(),
            bad.len(),
            if bad.is_empty() { String::new() } else { format!(": {}", bad.join(", ")) },
            b.ell,
            b.value
        ),
    )
}

fn determinism() -> Outcome {
    let dir = std::env::temp_dir().join(format!("rankpit-acceptance-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    let mut circuits = Vec::new();
    for (i, kind) in [CircuitKind::SigmaPi, CircuitKind::SigmaGamma].into_iter().enumerate() {
        let c = class_circuit(kind, 7 + i as u64).circuit;
        let path = dir.join(format!("corpus{i}.json"));
        std::fs::write(&path, c.to_json()).unwrap();
        circuits.push(path);
    }
    let f = |name: &str| fixture(name).to_string_lossy().into_owned();
    let mut commands: Vec<Vec<String>> = vec![
        vec!["pit".into(), "--circuit".into(), f("e1_circuit.json"), "--mode".into(), "both".into()],
        vec!["pit".into(), "--circuit".into(), f("zero.json"), "--mode".into(), "both".into()],
        vec!["rank".into(), "--poly-file".into(), f("e1.json")],
        vec!["annihilate".into(), "--poly-file".into(), f("e2.json")],
        vec!["depend".into(), "--poly-file".into(), f("e1.json"), "--newton".into()],
        vec!["rewrite".into(), "--circuit".into(), f("sum_of_square.json")],
        vec!["measure".into(), "--poly-file".into(), f("worked_measure.json"), "--r".into(), "1".into(), "--m".into(), "1".into()],
        vec!["nw".into(), "--n".into(), "3".into(), "--q".into(), "5".into(), "--e".into(), "2".into(), "--gamma".into(), "2".into(), "--trials".into(), "500".into()],
        vec!["nw".into(), "--n".into(), "10000".into(), "--instantiate".into()],
        vec!["bench".into(), "separation".into(), "--n".into(), "2".into(), "--q".into(), "3".into(), "--e".into(), "1".into()],
    ];
    for c in &circuits {
        commands.push(vec!["pit".into(), "--circuit".into(), c.to_string_lossy().into_owned(), "--mode".into(), "both".into()]);
    }
    let mut differing = Vec::new();
    let mut runs = 0;
    for cmd in &commands {
        let mut outputs: Vec<Vec<u8>> = Vec::new();
        for threads in ["1", "4", "8"] {
            for _ in 0..2 {
                let mut args: Vec<String> = ["rankpit", "--json", "--seed", "17", "--threads", threads]
                    .iter()
                    .map(|s| s.to_string())
                    .collect();
                args.extend(cmd.iter().cloned());
                let (mut out, mut err) = (Vec::new(), Vec::new());
                let code = rankpit::cli::run(args, &mut out, &mut err);
                out.extend(format!("exit {code}").bytes());
                outputs.push(out);
                runs += 1;
            }
        }
        let valid_json = serde_json::from_slice::<serde_json::Value>(outputs[0].rsplitn(2, |&b| b == b'\n').last().unwrap_or(&[])).is_ok();
        if !valid_json || outputs.windows(2).any(|w| w[0] != w[1]) {
            differing.push(cmd[0].clone());
        }
    }
    let _ = std::fs::remove_dir_all(&dir);
    outcome(
        differing.is_empty(),
        format!(
            "{} commands, {runs} runs over pools of 1, 4 and 8 threads, {} differing{}",
            commands.len(),
            differing.len(),
            if differing.is_empty() { String::new() } else { format!(": {}", differing.join(", ")) }
        ),
    )
}

fn line(n: usize, desc: &str, o: &Outcome) {
    println!("[{}] {n}. {desc} ({})", if o.pass { "PASS" } else { "FAIL" }, o.detail);
}

fn main() {
    let mut anns = Vec::new();
    let pit = pit_corpus();
    let support = outcome(
        pit.support_violations == 0,
        format!(
            "{} nonzero circuits, {} above the bound, max support/ell = {:.4}",
            pit.nonzero, pit.support_violations, pit.max_ratio
        ),
    );
    let rank = rank_equivalence(&mut anns);
    let dependence = dependence_identity(&mut anns);
    let results = [
        ("PIT hitting-set verdicts match full expansion", pit.outcome),
        ("trailing-monomial support stays within ell", support),
        ("randomized, symbolic and annihilator ranks agree", rank),
        ("annihilators compose to zero; E1 annihilator", annihilator_exactness(&anns)),
        ("functional dependence witnesses and Newton lifting", dependence),
        ("rewrite preserves the translated expansion", rewrite_identity()),
        ("projected shifted partials property suite", measure_suite()),
        ("NW monomial count, design distance and slot survival", nw_exactness()),
        ("hitting-set cardinality and support bound 208", hitting_set_cardinality()),
        ("JSON reports identical across thread pools", determinism()),
    ];
    for (n, (desc, o)) in results.iter().enumerate() {
        line(n + 1, desc, o);
    }
    let failed = results.iter().filter(|r| !r.1.pass).count();
    println!("{} passed, {failed} failed", results.len() - failed);
    if failed > 0 {
        std::process::exit(1);
    }
}
