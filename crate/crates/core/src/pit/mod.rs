//! Identity testing for circuits of a declared class: support bounds, the
//! low-support hitting set, and a Schwartz-Zippel oracle for cross-checks.

mod bound;
mod hitting;
mod oracle;

pub use bound::{support_bound, SupportBound, Variant};
pub use hitting::{hitting_set, hitting_set_size, HittingSet};
pub use oracle::{oracle_set_size, schwartz_zippel_test, OracleReport, OracleVerdict};

use rayon::prelude::*;
use serde::Serialize;

use crate::algdep::{algebraic_rank, RankMode};
use crate::circuit::Circuit;
use crate::error::{Error, Result};
use crate::field::Coeff;
use crate::poly::DEFAULT_TERM_CAP;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum Mode {
    HittingSet,
    Oracle,
    Both,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Verdict {
    Zero,
    Nonzero,
}

#[derive(Clone, Debug)]
pub struct PitOptions {
    pub mode: Mode,
    pub seed: u64,
    pub rounds: u32,
    pub max_points: u64,
    pub expansion_cap: usize,
    /// Check every gate's rank against the declared `k` before testing.
    pub certify_rank: bool,
}

impl Default for PitOptions {
    fn default() -> Self {
        PitOptions {
            mode: Mode::HittingSet,
            seed: 0,
            rounds: 20,
            max_points: 10_000_000,
            expansion_cap: DEFAULT_TERM_CAP,
            certify_rank: false,
        }
    }
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct HittingSetReport {
    pub bound: SupportBound,
    /// `min(ell, N)`.
    pub ell: usize,
    pub size: u64,
    pub points_evaluated: u64,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct PitReport {
    pub verdict: Verdict,
    pub mode: Mode,
    /// True when the verdict comes from the hitting set.
    pub certified: bool,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub witness: Option<Vec<String>>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub hitting_set: Option<HittingSetReport>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub oracle: Option<OracleReport>,
    /// Whether the full expansion is zero, when it fits the cap.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub expansion_zero: Option<bool>,
    pub rank_certified: bool,
    /// Every check that ran agrees with the verdict.
    pub consistent: bool,
}

const CHUNK: usize = 4096;

/// Evaluates `c` on `h` in enumeration order. Returns the first nonvanishing
/// point, independent of the thread count, and the number of points visited.
pub fn first_nonzero(c: &Circuit, h: &HittingSet) -> Result<(Option<Vec<Coeff>>, u64)> {
    let domain = c.domain();
    let mut seen = 0u64;
    let mut supports = h.supports().peekable();
    while supports.peek().is_some() {
        let chunk: Vec<_> = supports.by_ref().take(CHUNK).collect();
        let hit = chunk.par_iter().enumerate().find_map_first(|(i, s)| {
            match c.evaluate(&h.dense(s)) {
                Ok(v) if domain.is_zero(&v) => None,
                Ok(_) => Some(Ok(i)),
                Err(e) => Some(Err(e)),
            }
        });
        match hit {
            Some(Ok(i)) => return Ok((Some(h.dense(&chunk[i])), seen + i as u64 + 1)),
            Some(Err(e)) => return Err(e),
            None => seen += chunk.len() as u64,
        }
    }
    Ok((None, seen))
}

/// Decides whether `c` is identically zero.
///
/// The hitting-set verdict is certified for circuits in the declared class:
/// `ell` comes from the general support bound with the declared `d`, `k`,
/// `Delta` and the top fan-in, and the set holds every point of support at
/// most `ell` over `{0, ..., Delta}`.
pub fn pit_test(c: &Circuit, opts: &PitOptions) -> Result<PitReport> {
    let domain = c.domain();
    let declared = c.declared();
    let rank_certified = if opts.certify_rank {
        for (gi, g) in c.gates().iter().enumerate() {
            let cert = algebraic_rank(&g.inner, RankMode::randomized(opts.seed ^ gi as u64))?;
            if cert.rank > declared.k as usize {
                return Err(Error::BoundViolation {
                    gate: gi,
                    bound: "k",
                    declared: declared.k as u64,
                    actual: cert.rank as u64,
                });
            }
        }
        true
    } else {
        false
    };

    let mut witness = None;
    let mut hs_report = None;
    let mut hs_verdict = None;
    if opts.mode != Mode::Oracle {
        let bound = support_bound(
            declared.d.max(1) as u64,
            declared.k.max(1) as u64,
            c.top_fan_in().max(1) as u64,
            declared.delta.max(1) as u64,
            Variant::General,
        )?;
        let h = hitting_set(c.nvars(), declared.delta as u64, bound.ell, domain, opts.max_points)?;
        let (hit, points_evaluated) = first_nonzero(c, &h)?;
        if let Some(x) = &hit {
            if domain.is_zero(&c.evaluate(x)?) {
                return Err(Error::InvalidParams("witness re-check evaluated to zero".into()));
            }
            witness = Some(x.iter().map(|v| domain.format(v)).collect());
        }
        hs_verdict = Some(if hit.is_some() { Verdict::Nonzero } else { Verdict::Zero });
        hs_report = Some(HittingSetReport {
            ell: h.ell(),
            size: h.len(),
            bound,
            points_evaluated,
        });
    }

    let oracle = if opts.mode != Mode::HittingSet {
        Some(schwartz_zippel_test(c, opts.rounds, opts.seed)?)
    } else {
        None
    };
    let oracle_verdict = oracle.as_ref().map(|o| if o.is_zero() { Verdict::Zero } else { Verdict::Nonzero });

    let expansion_zero = if opts.mode == Mode::Both {
        match c.expand(opts.expansion_cap) {
            Ok(p) => Some(p.is_zero()),
            Err(Error::ExpansionTooLarge { .. }) => None,
            Err(e) => return Err(e),
        }
    } else {
        None
    };

    let verdict = hs_verdict.or(oracle_verdict).expect("some test ran");
    if witness.is_none() {
        if let Some(OracleReport {
            verdict: OracleVerdict::Nonzero { witness: w, .. },
            ..
        }) = &oracle
        {
            witness = Some(w.clone());
        }
    }
    let agrees = |v: Option<Verdict>| v.map_or(true, |v| v == verdict);
    let consistent = agrees(oracle_verdict)
        && agrees(expansion_zero.map(|z| if z { Verdict::Zero } else { Verdict::Nonzero }));
    Ok(PitReport {
        verdict,
        mode: opts.mode,
        certified: hs_verdict.is_some(),
        witness,
        hitting_set: hs_report,
        oracle,
        expansion_zero,
        rank_certified,
        consistent,
    })
}
