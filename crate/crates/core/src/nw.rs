//! Nisan-Wigderson design polynomials, their linear-form-composed variant,
//! parameter instantiation and random restrictions.
//!
//! `NW_{n,q,e} = sum_{p in F_q[t], deg p < e} X_{1,p(1)} ... X_{n,p(n)}` over
//! variables `X_{i,j}` with `i in [n]` and `j in F_q`. Variable `(i, j)` has
//! 0-based index `(i - 1) q + j`; in the composed polynomial, `(i, j, l)` with
//! `l in [0, gamma)` has index `((i - 1) q + j) gamma + l`.

use itertools::Itertools;
use num_bigint::BigUint;
use num_traits::{Pow, ToPrimitive};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::field::{is_prime, Domain};
use crate::interval::Interval;
use crate::poly::{Monomial, Polynomial};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct NWParams {
    pub n: u32,
    pub q: u32,
    pub e: u32,
}

impl NWParams {
    /// `q` must be prime and `1 <= n <= q`, `e <= q`.
    pub fn new(n: u32, q: u32, e: u32) -> Result<Self> {
        if !is_prime(q as u64) {
            return Err(Error::InvalidParams(format!("q = {q} is not prime")));
        }
        if n == 0 || n > q || e > q {
            return Err(Error::InvalidParams(format!("need 1 <= n <= q and e <= q, got n={n} q={q} e={e}")));
        }
        Ok(NWParams { n, q, e })
    }

    /// `N = n q`.
    pub fn nvars(&self) -> usize {
        self.n as usize * self.q as usize
    }

    pub fn var(&self, i: u32, j: u32) -> usize {
        (i as usize - 1) * self.q as usize + j as usize
    }

    /// The slot values `(p(1), ..., p(n))` of every polynomial of degree `< e`.
    /// For `e = 0` that is only the zero polynomial.
    pub fn designs(&self) -> Vec<Vec<u32>> {
        let q = self.q as u64;
        if self.e == 0 {
            return vec![vec![0; self.n as usize]];
        }
        (0..self.e)
            .map(|_| 0..self.q)
            .multi_cartesian_product()
            .map(|coeffs| {
                (1..=self.n)
                    .map(|i| {
                        let t = i as u64 % q;
                        coeffs.iter().rev().fold(0u64, |acc, &c| (acc * t + c as u64) % q) as u32
                    })
                    .collect()
            })
            .collect()
    }
}

/// Every coefficient is 1; the domain only fixes where the polynomial lives.
pub fn nw_polynomial(params: &NWParams, domain: Domain) -> Polynomial {
    Polynomial::from_terms(
        domain,
        params.nvars(),
        params.designs().into_iter().map(|vals| {
            let m = Monomial::multilinear(vals.iter().enumerate().map(|(i, &j)| params.var(i as u32 + 1, j)));
            (m, domain.one())
        }),
    )
}

#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
pub struct HardPolyParams {
    pub base: NWParams,
    pub delta: f64,
    /// Survival probability of each variable under a restriction.
    pub p: f64,
    pub gamma: u32,
}

impl HardPolyParams {
    /// `p = N^{-delta}` with `N = n q`.
    pub fn new(base: NWParams, delta: f64, gamma: u32) -> Result<Self> {
        if !(delta > 0.0 && delta < 1.0) {
            return Err(Error::InvalidParams(format!("delta = {delta} must lie in (0, 1)")));
        }
        let p = (base.nvars() as f64).powf(-delta);
        HardPolyParams::with_p(base, delta, p, gamma)
    }

    /// Decouples `p` from `delta`.
    pub fn with_p(base: NWParams, delta: f64, p: f64, gamma: u32) -> Result<Self> {
        if !(p > 0.0 && p <= 1.0) || gamma == 0 {
            return Err(Error::InvalidParams(format!("need 0 < p <= 1 and gamma >= 1, got p={p} gamma={gamma}")));
        }
        Ok(HardPolyParams { base, delta, p, gamma })
    }

    pub fn nvars(&self) -> usize {
        self.base.nvars() * self.gamma as usize
    }

    pub fn var(&self, i: u32, j: u32, l: u32) -> usize {
        self.base.var(i, j) * self.gamma as usize + l as usize
    }
}

/// `NW` with each `X_{i,j}` replaced by `sum_l X_{i,j,l}`, fully expanded.
pub fn hard_polynomial(params: &HardPolyParams, domain: Domain, cap: usize) -> Result<Polynomial> {
    let base = &params.base;
    let n = params.nvars();
    let terms = (params.gamma as u128)
        .checked_pow(base.n)
        .and_then(|g| g.checked_mul((base.q as u128).checked_pow(base.e)?));
    if terms.map_or(true, |t| t > cap as u128) {
        return Err(Error::ExpansionTooLarge { cap });
    }
    let mut out = Polynomial::zero(domain, n);
    for vals in base.designs() {
        let choices = (0..base.n).map(|_| 0..params.gamma).multi_cartesian_product();
        let mono_terms = choices.map(|ls| {
            let m = Monomial::multilinear(
                vals.iter()
                    .zip(&ls)
                    .enumerate()
                    .map(|(i, (&j, &l))| params.var(i as u32 + 1, j, l)),
            );
            (m, domain.one())
        });
        out = out.add(&Polynomial::from_terms(domain, n, mono_terms));
    }
    Ok(out)
}

/// Alive set of a random restriction: each variable survives with probability `p`.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct RestrictionSample {
    pub alive: Vec<bool>,
    pub seed: u64,
    pub p: f64,
}

impl RestrictionSample {
    pub fn all(nvars: usize) -> Self {
        RestrictionSample {
            alive: vec![true; nvars],
            seed: 0,
            p: 1.0,
        }
    }

    pub fn from_alive(alive: Vec<bool>) -> Self {
        RestrictionSample { alive, seed: 0, p: f64::NAN }
    }

    pub fn survivors(&self) -> Vec<usize> {
        (0..self.alive.len()).filter(|&v| self.alive[v]).collect()
    }
}

fn alive_bits(nvars: usize, p: f64, seed: u64, stream: u64) -> Vec<bool> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    rng.set_stream(stream);
    (0..nvars).map(|_| rng.gen_bool(p)).collect()
}

pub fn sample_restriction(nvars: usize, p: f64, seed: u64) -> Result<RestrictionSample> {
    if !(0.0..=1.0).contains(&p) {
        return Err(Error::InvalidParams(format!("survival probability {p} outside [0, 1]")));
    }
    Ok(RestrictionSample {
        alive: alive_bits(nvars, p, seed, 0),
        seed,
        p,
    })
}

/// Sets every dead variable to zero.
pub fn restrict(p: &Polynomial, v: &RestrictionSample) -> Polynomial {
    p.restrict(|x| v.alive.get(x).copied().unwrap_or(false))
}

/// Keeps the lowest alive copy in every slot `(i, j)`, zeroes the other copies
/// and relabels `X_{i,j,l} -> X_{i,j}`. Fails on a slot with no survivor.
pub fn extract_nw_projection(
    restricted: &Polynomial,
    params: &HardPolyParams,
    v: &RestrictionSample,
) -> Result<Polynomial> {
    let base = &params.base;
    let mut keep = vec![None; base.nvars()];
    for i in 1..=base.n {
        for j in 0..base.q {
            let l = (0..params.gamma)
                .find(|&l| v.alive.get(params.var(i, j, l)).copied().unwrap_or(false))
                .ok_or(Error::SlotDied {
                    i: i as usize,
                    j: j as usize,
                })?;
            keep[base.var(i, j)] = Some(params.var(i, j, l));
        }
    }
    let kept: std::collections::HashMap<usize, usize> = keep
        .iter()
        .enumerate()
        .map(|(slot, v)| (v.unwrap(), slot))
        .collect();
    Ok(restricted
        .restrict(|x| kept.contains_key(&x))
        .rename_vars(base.nvars(), |x| kept[&x]))
}

/// Aggregate slot deaths over seeded restriction trials.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct SurvivalStats {
    pub trials: u32,
    pub slots: usize,
    pub dead_slots: u64,
    pub dead_fraction: f64,
    /// `(1 - p)^gamma`.
    pub expected: f64,
    pub sigma: f64,
    pub within_three_sigma: bool,
}

/// Trial `t` uses stream `t` of the ChaCha generator seeded with `seed`.
pub fn slot_survival_experiment(params: &HardPolyParams, trials: u32, seed: u64) -> SurvivalStats {
    let base = params.base;
    let slots = base.nvars();
    let dead_slots: u64 = (0..trials)
        .into_par_iter()
        .map(|t| {
            let alive = alive_bits(params.nvars(), params.p, seed, t as u64);
            (0..slots)
                .filter(|&s| (0..params.gamma as usize).all(|l| !alive[s * params.gamma as usize + l]))
                .count() as u64
        })
        .sum();
    let total = trials as f64 * slots as f64;
    let expected = (1.0 - params.p).powi(params.gamma as i32);
    let dead_fraction = if total > 0.0 { dead_slots as f64 / total } else { 0.0 };
    let sigma = if total > 0.0 {
        (expected * (1.0 - expected) / total).sqrt()
    } else {
        0.0
    };
    SurvivalStats {
        trials,
        slots,
        dead_slots,
        dead_fraction,
        expected,
        sigma,
        within_three_sigma: (dead_fraction - expected).abs() <= 3.0 * sigma + 1e-12,
    }
}

/// Whether a checked inequality holds on every point of the enclosing intervals.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Verdict {
    Holds,
    Fails,
    Undecided,
}

/// The lower-bound parameter choice for a given `n`, evaluated with interval
/// arithmetic (natural logarithms).
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct NWInstantiation {
    pub n: u64,
    /// `4 ln n / sqrt n`.
    pub epsilon: Interval,
    /// `floor(sqrt n)`.
    pub r: u64,
    /// `n^10`.
    pub q: String,
    /// `N = q n`.
    pub big_n: String,
    /// `sqrt n / 100`.
    pub s: Interval,
    /// `(N / 2)(1 - epsilon)`.
    pub m: Interval,
    /// `r + (n - r) ln(2 / (1 + epsilon)) / ln q`, the value solving the second
    /// constraint without its polynomial slack.
    pub e_real: Interval,
    pub e: u64,
    /// `q^r >= (1 + epsilon)^{2(n - r)}`.
    pub q_power_constraint: Verdict,
    /// `epsilon < 1`.
    pub valid: bool,
}

pub fn instantiate_parameters(n: u64) -> Result<NWInstantiation> {
    if n < 2 {
        return Err(Error::InvalidParams(format!("n = {n} must be at least 2")));
    }
    let ni = Interval::from_u64(n);
    let one = Interval::from_u64(1);
    let epsilon = Interval::from_u64(4).mul(ni.ln()).div(ni.sqrt());
    let r = n.isqrt();
    let q = BigUint::from(n).pow(10u32);
    let big_n = &q * n;
    let big_n_f = widen(big_n.to_f64().unwrap_or(f64::INFINITY));
    let m = big_n_f.div(Interval::from_u64(2)).mul(one.sub(epsilon));
    let s = ni.sqrt().div(Interval::from_u64(100));
    let ln_q = Interval::from_u64(10).mul(ni.ln());
    let nr = Interval::from_u64(n - r);
    let one_eps = one.add(epsilon);
    let lhs = Interval::from_u64(r).mul(ln_q);
    let rhs = Interval::from_u64(2).mul(nr).mul(one_eps.ln());
    let q_power_constraint = if lhs.certainly_ge(rhs) {
        Verdict::Holds
    } else if lhs.certainly_lt(rhs) {
        Verdict::Fails
    } else {
        Verdict::Undecided
    };
    let e_real = Interval::from_u64(r).add(nr.mul(Interval::from_u64(2).div(one_eps).ln()).div(ln_q));
    Ok(NWInstantiation {
        n,
        epsilon,
        r,
        q: q.to_string(),
        big_n: big_n.to_string(),
        s,
        m,
        e_real,
        e: e_real.ceil_upper(),
        q_power_constraint,
        valid: epsilon.hi < 1.0,
    })
}

fn widen(x: f64) -> Interval {
    Interval::new(x.next_down().next_down(), x.next_up().next_up())
}
