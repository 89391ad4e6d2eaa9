use itertools::Itertools;
use num_bigint::BigUint;
use num_integer::binomial;
use num_traits::ToPrimitive;

use crate::error::{Error, Result};
use crate::field::{Coeff, Domain};

/// All points of `{0, 1, ..., Delta}^N` with at most `ell` nonzero coordinates.
///
/// Enumeration order: by support size, then support sets lexicographically,
/// then values as an odometer with the last coordinate fastest.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct HittingSet {
    nvars: usize,
    delta: u64,
    ell: usize,
    requested_ell: u64,
    domain: Domain,
}

/// `sum_{j <= ell} binom(N, j) Delta^j`.
pub fn hitting_set_size(nvars: usize, delta: u64, ell: u64) -> BigUint {
    let ell = ell.min(nvars as u64);
    (0..=ell)
        .map(|j| binomial(BigUint::from(nvars), BigUint::from(j)) * BigUint::from(delta).pow(j as u32))
        .sum()
}

/// Checks the field and the cap before anything is enumerated; `ell > N` is
/// clamped to `N`.
pub fn hitting_set(nvars: usize, delta: u64, ell: u64, domain: Domain, cap: u64) -> Result<HittingSet> {
    if !domain.has_at_least(delta + 1) {
        return Err(Error::FieldTooSmall {
            needed: delta + 1,
            available: domain.size().unwrap_or(u64::MAX),
        });
    }
    if ell > nvars as u64 {
        log::warn!("support bound {ell} exceeds N = {nvars}; using the full grid");
    }
    let count = hitting_set_size(nvars, delta, ell);
    if count > BigUint::from(cap) {
        return Err(Error::SetTooLarge {
            count: count.to_string(),
            cap,
        });
    }
    Ok(HittingSet {
        nvars,
        delta,
        ell: ell.min(nvars as u64) as usize,
        requested_ell: ell,
        domain,
    })
}

impl HittingSet {
    pub fn nvars(&self) -> usize {
        self.nvars
    }

    pub fn delta(&self) -> u64 {
        self.delta
    }

    /// Effective support bound, at most `N`.
    pub fn ell(&self) -> usize {
        self.ell
    }

    pub fn requested_ell(&self) -> u64 {
        self.requested_ell
    }

    pub fn domain(&self) -> Domain {
        self.domain
    }

    pub fn len(&self) -> u64 {
        hitting_set_size(self.nvars, self.delta, self.ell as u64).to_u64().unwrap_or(u64::MAX)
    }

    pub fn is_empty(&self) -> bool {
        false
    }

    /// Points as sparse `(variable, value)` lists.
    pub fn supports(&self) -> impl Iterator<Item = Vec<(usize, u64)>> + '_ {
        let (n, delta) = (self.nvars, self.delta);
        (0..=self.ell).flat_map(move |j| {
            (0..n).combinations(j).flat_map(move |vars| {
                let values: Box<dyn Iterator<Item = Vec<u64>>> = if j == 0 {
                    Box::new(std::iter::once(Vec::new()))
                } else {
                    Box::new((0..j).map(|_| 1..=delta).multi_cartesian_product())
                };
                let vars = vars.clone();
                values.map(move |vals| vars.iter().copied().zip(vals).collect())
            })
        })
    }

    pub fn points(&self) -> impl Iterator<Item = Vec<Coeff>> + '_ {
        self.supports().map(|s| self.dense(&s))
    }

    pub fn dense(&self, support: &[(usize, u64)]) -> Vec<Coeff> {
        let mut x = vec![self.domain.zero(); self.nvars];
        for &(v, val) in support {
            x[v] = self.domain.scalar(val);
        }
        x
    }
}
