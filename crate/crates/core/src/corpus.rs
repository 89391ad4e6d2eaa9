//! Seeded generators for random class circuits, polynomial tuples and fixtures.
//!
//! Class circuits have inner polynomials that are polynomials in `k` random
//! linear forms, so every gate has rank at most `k` by construction.

use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::circuit::{Circuit, Declared, Gate, Outer, OuterExpr};
use crate::field::{Coeff, Domain};
use crate::poly::{Monomial, Polynomial, DEFAULT_TERM_CAP};

/// Largest full grid `(Delta + 1)^N` a nonzero class circuit may need.
pub const NONZERO_GRID_CAP: u64 = 5_000_000;
/// Largest full grid for a planted-zero circuit, which is always scanned in full.
pub const ZERO_GRID_CAP: u64 = 200_000;

pub const CORPUS_PRIME: u64 = 1_000_003;

pub fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

fn small_coeff(rng: &mut impl Rng, domain: Domain) -> Coeff {
    let c = rng.gen_range(1..=3i64) * if rng.gen_bool(0.5) { 1 } else { -1 };
    domain.from_i64(c)
}

/// A random polynomial with up to `terms` monomials of degree at most
/// `max_degree`, small nonzero coefficients, and at least one monomial of
/// degree exactly `max_degree`.
pub fn random_polynomial(rng: &mut impl Rng, domain: Domain, nvars: usize, max_degree: u32, terms: usize) -> Polynomial {
    let monos = Monomial::all_up_to(nvars, max_degree);
    let top: Vec<&Monomial> = monos.iter().filter(|m| m.degree() == max_degree).collect();
    let mut p = Polynomial::zero(domain, nvars);
    let lead = (*top.choose(rng).expect("nvars >= 1 or degree 0")).clone();
    p = p.add(&Polynomial::monomial(domain, nvars, small_coeff(rng, domain), lead));
    for _ in 1..terms.max(1) {
        let m = monos.choose(rng).unwrap().clone();
        p = p.add(&Polynomial::monomial(domain, nvars, small_coeff(rng, domain), m));
    }
    if p.total_degree() < max_degree {
        random_polynomial(rng, domain, nvars, max_degree, terms)
    } else {
        p
    }
}

/// A nonzero linear form, sometimes with a constant term.
pub fn random_linear_form(rng: &mut impl Rng, domain: Domain, nvars: usize) -> Polynomial {
    loop {
        let mut p = Polynomial::zero(domain, nvars);
        for v in 0..nvars {
            if rng.gen_bool(0.5) {
                p = p.add(&Polynomial::monomial(domain, nvars, small_coeff(rng, domain), Monomial::var(v)));
            }
        }
        if p.is_zero() {
            continue;
        }
        if rng.gen_bool(0.3) {
            p = p.add(&Polynomial::constant(domain, nvars, small_coeff(rng, domain)));
        }
        return p;
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum CircuitKind {
    /// Product outer gates.
    SigmaPi,
    /// General outer polynomials.
    SigmaGamma,
}

#[derive(Clone, Debug)]
pub struct ClassCircuit {
    pub circuit: Circuit,
    pub kind: CircuitKind,
    /// Built to expand to zero.
    pub planted_zero: bool,
    pub seed: u64,
}

struct Shape {
    domain: Domain,
    n: usize,
    d: u32,
    k: u32,
    t: usize,
    /// Formal degree budget per gate.
    budget: u32,
}

fn max_delta(n: usize, grid_cap: u64) -> u32 {
    (1..=12u32)
        .rev()
        .find(|&delta| (delta as u64 + 1).checked_pow(n as u32).is_some_and(|g| g <= grid_cap))
        .unwrap_or(0)
}

fn draw_shape(rng: &mut impl Rng, zero: bool) -> Shape {
    let grid_cap = if zero { ZERO_GRID_CAP } else { NONZERO_GRID_CAP };
    loop {
        let n = rng.gen_range(1..=10usize);
        let budget = max_delta(n, grid_cap);
        let d = rng.gen_range(1..=3u32);
        if d > budget {
            continue;
        }
        let domain = if rng.gen_bool(0.2) {
            Domain::Prime(CORPUS_PRIME)
        } else {
            Domain::Rational
        };
        return Shape {
            domain,
            n,
            d,
            k: rng.gen_range(1..=2u32).min(n as u32),
            t: rng.gen_range(if zero { 2 } else { 1 }..=4usize),
            budget: rng.gen_range(d..=budget),
        };
    }
}

/// Polynomials in `k` random linear forms, of degree at most `d`.
fn inner_family(rng: &mut impl Rng, s: &Shape, count: usize) -> Vec<Polynomial> {
    let forms: Vec<Polynomial> = (0..s.k).map(|_| random_linear_form(rng, s.domain, s.n)).collect();
    (0..count)
        .map(|_| {
            let deg = rng.gen_range(1..=s.d);
            let g = random_polynomial(rng, s.domain, s.k as usize, deg, 3);
            let mut q = g.compose(&forms, DEFAULT_TERM_CAP).expect("tiny composition");
            if q.is_zero() {
                q = forms[0].clone();
            }
            q.with_nvars(s.n)
        })
        .collect()
}

fn product_gate(rng: &mut impl Rng, s: &Shape) -> Gate {
    let mut inner = Vec::new();
    let mut used = 0;
    for q in inner_family(rng, s, (s.budget / s.d.max(1)).max(1) as usize) {
        let deg = q.total_degree();
        if used + deg > s.budget || (!inner.is_empty() && rng.gen_bool(0.3)) {
            break;
        }
        used += deg;
        inner.push(q);
    }
    if inner.is_empty() {
        inner.push(random_linear_form(rng, s.domain, s.n));
    }
    Gate::product(inner)
}

fn general_gate(rng: &mut impl Rng, s: &Shape) -> Gate {
    let m = rng.gen_range(1..=3usize);
    let inner = inner_family(rng, s, m);
    let maxdeg = inner.iter().map(|q| q.total_degree().max(1)).max().unwrap();
    let outer_deg = (s.budget / maxdeg).max(1);
    let f = random_polynomial(rng, s.domain, m, outer_deg, 4);
    Gate::general(OuterExpr::from_polynomial(&f), inner)
}

/// `-1` times the same polynomial, built from a rescaled, reordered copy.
fn cancelling_gate(rng: &mut impl Rng, domain: Domain, g: &Gate) -> Gate {
    let mut inner = g.inner.clone();
    let mut perm: Vec<usize> = (0..inner.len()).collect();
    perm.shuffle(rng);
    match &g.outer {
        Outer::Product => {
            let c = small_coeff(rng, domain);
            inner[0] = inner[0].scale(&domain.neg(&c));
            let last = inner.len() - 1;
            if last > 0 {
                inner[last] = inner[last].scale(&domain.inv(&c).unwrap());
            } else {
                inner[0] = inner[0].scale(&domain.inv(&c).unwrap());
            }
            Gate::product(perm.iter().map(|&i| inner[i].clone()).collect())
        }
        Outer::General(e) => {
            // F'(z) = -F(z_{perm^-1}) applied to the permuted inputs
            let arity = e.arity();
            let mut inv = vec![0; arity];
            for (pos, &i) in perm.iter().enumerate() {
                inv[i] = pos;
            }
            let vars: Vec<Polynomial> = (0..arity).map(|i| Polynomial::var(domain, arity, inv[i])).collect();
            let f = e
                .expand(&vars, domain, arity, DEFAULT_TERM_CAP)
                .expect("outer fits")
                .neg();
            Gate::general(
                OuterExpr::from_polynomial(&f),
                perm.iter().map(|&i| inner[i].clone()).collect(),
            )
        }
    }
}

fn assemble(s: &Shape, gates: Vec<Gate>) -> Circuit {
    let delta = gates.iter().map(|g| g.formal_degree()).max().unwrap_or(0) as u32;
    let declared = Declared {
        d: s.d,
        k: s.k,
        delta: delta.max(1),
    };
    Circuit::new(s.domain, s.n, gates, declared).expect("generator respects the class")
}

/// A random circuit of the class with `N <= 10`, `d <= 3`, `k <= 2`, `T <= 4`,
/// `Delta <= 12`, and `(Delta + 1)^N` bounded by the grid caps above.
/// About one in five is planted to be zero.
pub fn class_circuit(kind: CircuitKind, seed: u64) -> ClassCircuit {
    let mut rng = rng(seed);
    let zero = rng.gen_bool(0.2);
    let s = draw_shape(&mut rng, zero);
    let gate = |rng: &mut ChaCha8Rng| match kind {
        CircuitKind::SigmaPi => product_gate(rng, &s),
        CircuitKind::SigmaGamma => general_gate(rng, &s),
    };
    let mut gates = Vec::with_capacity(s.t);
    if zero {
        while gates.len() + 1 < s.t {
            let g = gate(&mut rng);
            gates.push(cancelling_gate(&mut rng, s.domain, &g));
            gates.push(g);
        }
        if gates.len() < s.t {
            // odd T: split the first cancelling gate into two halves
            let half = s.domain.inv(&s.domain.from_u64(2)).unwrap();
            let g = match &gates[0].outer {
                Outer::Product => {
                    let mut inner = gates[0].inner.clone();
                    inner[0] = inner[0].scale(&half);
                    Gate::product(inner)
                }
                Outer::General(e) => Gate::general(e.scaled(half), gates[0].inner.clone()),
            };
            gates[0] = g.clone();
            gates.push(g);
        }
        gates.shuffle(&mut rng);
    } else {
        for _ in 0..s.t {
            gates.push(gate(&mut rng));
        }
    }
    ClassCircuit {
        circuit: assemble(&s, gates),
        kind,
        planted_zero: zero,
        seed,
    }
}

/// A tuple of polynomials, possibly with a planted functional dependence.
#[derive(Clone, Debug)]
pub struct TupleCase {
    pub polys: Vec<Polynomial>,
    /// Rank known by construction when a dependency was planted.
    pub planted_rank: Option<usize>,
    pub seed: u64,
}

/// `N <= 3`, `t <= 3`, base degrees at most 2. When `planted`, one or two base
/// polynomials are followed by functions of them of degree at most 3.
pub fn random_tuple(seed: u64, planted: bool) -> TupleCase {
    let mut rng = rng(seed);
    let domain = if rng.gen_bool(0.2) {
        Domain::Prime(CORPUS_PRIME)
    } else {
        Domain::Rational
    };
    let n = rng.gen_range(1..=3usize);
    if !planted {
        let t = rng.gen_range(1..=3usize);
        let polys = (0..t)
            .map(|_| {
                let deg = rng.gen_range(1..=2);
                random_polynomial(&mut rng, domain, n, deg, 3)
            })
            .collect();
        return TupleCase {
            polys,
            planted_rank: None,
            seed,
        };
    }
    let b = rng.gen_range(1..=2usize).min(n);
    let base: Vec<Polynomial> = (0..b)
        .map(|i| {
            // distinct leading variables keep the base independent
            let lead = Polynomial::var(domain, n, i).pow(rng.gen_range(1..=2), DEFAULT_TERM_CAP).unwrap();
            let extra = random_polynomial(&mut rng, domain, n, 1, 2);
            let extra = if rng.gen_bool(0.5) { extra } else { Polynomial::zero(domain, n) };
            lead.add(&extra.filter_terms(|m| m.degree() < lead.total_degree() || m.is_one()))
        })
        .collect();
    let deps = rng.gen_range(1..=3 - b);
    let mut polys = base.clone();
    while polys.len() < b + deps {
        let deg = rng.gen_range(1..=2);
        let g = random_polynomial(&mut rng, domain, b, deg, 3);
        let dep = g.compose(&base, DEFAULT_TERM_CAP).unwrap().with_nvars(n);
        if dep.total_degree() <= 3 {
            polys.push(dep);
        }
    }
    let rank = base.len();
    // interleave so the basis is not always a prefix
    let mut order: Vec<usize> = (0..polys.len()).collect();
    order.shuffle(&mut rng);
    TupleCase {
        polys: order.iter().map(|&i| polys[i].clone()).collect(),
        planted_rank: Some(rank),
        seed,
    }
}

/// `t <= 3` polynomials of degree at most 2 in `N <= 4` variables with rank
/// `t` or `t - 1`, known by construction.
///
/// The independent part is triangular: `Q_i = x_{s(i)}^{a_i} + g_i` where `g_i`
/// avoids `x_{s(i)}, ..., x_{s(b)}`, so the Jacobian has a triangular minor with
/// nonzero diagonal. A dependent member is a function of the others of degree at most 2.
pub fn rank_tuple(seed: u64) -> TupleCase {
    let mut rng = rng(seed);
    let domain = if rng.gen_bool(0.2) {
        Domain::Prime(CORPUS_PRIME)
    } else {
        Domain::Rational
    };
    let n = rng.gen_range(1..=4usize);
    let t = rng.gen_range(1..=3usize.min(n + 1));
    let b = if t > n || rng.gen_bool(0.5) { t - 1 } else { t };
    let mut vars: Vec<usize> = (0..n).collect();
    vars.shuffle(&mut rng);
    let mut base = Vec::with_capacity(b);
    for i in 0..b {
        let a = rng.gen_range(1..=2);
        let lead = Polynomial::var(domain, n, vars[i]).pow(a, DEFAULT_TERM_CAP).unwrap();
        let banned = &vars[i..b];
        let tail_deg = rng.gen_range(0..=2);
        let tail = random_polynomial(&mut rng, domain, n, tail_deg, 3)
            .filter_terms(|m| m.support().all(|v| !banned.contains(&v)));
        base.push(lead.add(&tail));
    }
    let mut polys = base.clone();
    if b < t {
        loop {
            let deg = rng.gen_range(1..=2);
            let g = random_polynomial(&mut rng, domain, b.max(1), deg, 3);
            let args: Vec<Polynomial> = if b == 0 {
                vec![Polynomial::constant(domain, n, small_coeff(&mut rng, domain))]
            } else {
                base.clone()
            };
            let dep = g.compose(&args, DEFAULT_TERM_CAP).unwrap().with_nvars(n);
            if dep.total_degree() <= 2 {
                polys.push(dep);
                break;
            }
        }
    }
    polys.shuffle(&mut rng);
    TupleCase {
        polys,
        planted_rank: Some(b),
        seed,
    }
}

/// A product-gate circuit whose gates take planted dependent tuples, for the rewrite.
pub fn rewrite_fixture(seed: u64) -> Circuit {
    let mut rng = rng(seed);
    let t = rng.gen_range(1..=2usize);
    let n = rng.gen_range(1..=3usize);
    let mut gates = Vec::new();
    let mut k = 1;
    let mut d = 1;
    for i in 0..t {
        let case = random_tuple(seed.wrapping_mul(31).wrapping_add(i as u64), true);
        let polys: Vec<Polynomial> = case
            .polys
            .iter()
            .map(|p| to_rational(p).rename_vars(n, |v| v % n))
            .collect();
        let polys: Vec<Polynomial> = polys.into_iter().filter(|p| !p.is_constant()).collect();
        if polys.is_empty() {
            continue;
        }
        k = k.max(polys.len() as u32);
        d = d.max(polys.iter().map(|p| p.total_degree()).max().unwrap());
        gates.push(Gate::product(polys));
    }
    if gates.is_empty() {
        gates.push(Gate::product(vec![Polynomial::var(Domain::Rational, n, 0)]));
    }
    let delta = gates.iter().map(|g| g.formal_degree()).max().unwrap() as u32;
    Circuit::new(Domain::Rational, n, gates, Declared { d, k, delta }).unwrap()
}

fn to_rational(p: &Polynomial) -> Polynomial {
    let q = Domain::Rational;
    let nd = p.domain();
    Polynomial::from_terms(
        q,
        p.nvars(),
        p.terms().map(|(m, c)| {
            let v = nd.to_u64(c).map_or_else(
                || c.clone(),
                |u| {
                    let p = nd.characteristic();
                    let signed = if p > 0 && u > p / 2 { u as i64 - p as i64 } else { u as i64 };
                    q.from_i64(signed)
                },
            );
            (m.clone(), v)
        }),
    )
}

/// The tuple `(X1 + X2, X1 X2, X1^2 + X2^2)` over Q.
pub fn fixture_e1() -> Vec<Polynomial> {
    ["x1 + x2", "x1*x2", "x1^2 + x2^2"]
        .iter()
        .map(|s| Polynomial::parse(Domain::Rational, Some(2), s).unwrap())
        .collect()
}

/// The tuple `(X1^2, X1)` over Q: its translation at the origin is bad.
pub fn fixture_e2() -> Vec<Polynomial> {
    ["x1^2", "x1"]
        .iter()
        .map(|s| Polynomial::parse(Domain::Rational, Some(1), s).unwrap())
        .collect()
}

/// `(x1 + x2)(x1 - x2) - (x1^2 - x2^2)`.
pub fn fixture_zero_circuit() -> Circuit {
    let q = Domain::Rational;
    let p = |s: &str| Polynomial::parse(q, Some(2), s).unwrap();
    Circuit::new(
        q,
        2,
        vec![
            Gate::product(vec![p("x1 + x2"), p("x1 - x2")]),
            Gate::product(vec![p("-1"), p("x1^2 - x2^2")]),
        ],
        Declared { d: 2, k: 2, delta: 2 },
    )
    .unwrap()
}

/// E1 times E1 shifted, minus a product over four variables: nonzero, `N = 4`,
/// `d = 2`, `k = 2`, `T = 2`.
pub fn fixture_e1_circuit() -> Circuit {
    let q = Domain::Rational;
    let p = |s: &str| Polynomial::parse(q, Some(4), s).unwrap();
    Circuit::new(
        q,
        4,
        vec![
            Gate::product(vec![p("x1 + x2"), p("x1*x2"), p("x1^2 + x2^2")]),
            Gate::product(vec![p("x3 - x4"), p("x3*x4 + 1")]),
        ],
        Declared { d: 2, k: 2, delta: 5 },
    )
    .unwrap()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn generators_are_deterministic() {
        for seed in 0..20 {
            let a = class_circuit(CircuitKind::SigmaPi, seed);
            let b = class_circuit(CircuitKind::SigmaPi, seed);
            assert_eq!(a.circuit.to_json(), b.circuit.to_json());
        }
    }

    #[test]
    fn planted_zeros_expand_to_zero() {
        let mut zeros = 0;
        for kind in [CircuitKind::SigmaPi, CircuitKind::SigmaGamma] {
            for seed in 0..60 {
                let c = class_circuit(kind, seed);
                let d = c.circuit.declared();
                assert!(d.delta <= 12 && d.k <= 2 && d.d <= 3 && c.circuit.nvars() <= 10);
                if c.planted_zero {
                    zeros += 1;
                    assert!(c.circuit.expand(DEFAULT_TERM_CAP).unwrap().is_zero(), "seed {seed}");
                }
            }
        }
        assert!(zeros > 5);
    }

    #[test]
    fn rank_tuples_have_the_planted_rank() {
        use crate::algdep::{algebraic_rank, RankMode};
        for seed in 0..40 {
            let t = rank_tuple(seed);
            assert!(t.polys.len() <= 3 && t.polys.iter().all(|p| p.total_degree() <= 2));
            let r = algebraic_rank(&t.polys, RankMode::Symbolic).unwrap().rank;
            assert_eq!(Some(r), t.planted_rank, "seed {seed}");
            assert!(r + 1 >= t.polys.len());
        }
    }

    #[test]
    fn fixtures() {
        assert!(fixture_zero_circuit().expand(100).unwrap().is_zero());
        assert!(!fixture_e1_circuit().expand(1000).unwrap().is_zero());
        let t = random_tuple(3, true);
        assert!(t.planted_rank.unwrap() < t.polys.len());
    }
}
