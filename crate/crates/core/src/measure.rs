//! Projected shifted partial derivatives.
//!
//! `Phi_{M,m}(P)` is the dimension of the span of
//! `mult[x_S * d^gamma P]` over `gamma` in `M` and `|S| = m`, where `mult`
//! keeps only multilinear monomials.

use std::collections::HashMap;
use std::time::Instant;

use itertools::Itertools;
use num_bigint::BigUint;
use num_integer::binomial;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::field::{Coeff, Domain};
use crate::linalg::SparseEchelon;
use crate::poly::{Monomial, Polynomial};

/// Default cap on `N * binom(N, m) * |M|`.
pub const DEFAULT_MATRIX_CAP: u128 = 200_000_000;

/// Derivative set `M` (all of degree `r`) and shift degree `m`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MeasureSpec {
    derivatives: Vec<Monomial>,
    m: u32,
    r: u32,
}

impl MeasureSpec {
    pub fn new(derivatives: Vec<Monomial>, m: u32) -> Result<Self> {
        let r = derivatives.first().map_or(0, Monomial::degree);
        if let Some(bad) = derivatives.iter().find(|g| g.degree() != r) {
            return Err(Error::InvalidParams(format!(
                "derivative monomials must share one degree: {bad} has degree {} but {r} expected",
                bad.degree()
            )));
        }
        let mut derivatives = derivatives;
        derivatives.sort();
        derivatives.dedup();
        Ok(MeasureSpec { derivatives, m, r })
    }

    /// Every multilinear monomial of degree `r` in `nvars` variables.
    pub fn all_multilinear(nvars: usize, r: u32, m: u32) -> Self {
        let derivatives = (0..nvars)
            .combinations(r as usize)
            .map(Monomial::multilinear)
            .sorted()
            .collect();
        MeasureSpec { derivatives, m, r }
    }

    pub fn derivatives(&self) -> &[Monomial] {
        &self.derivatives
    }

    pub fn m(&self) -> u32 {
        self.m
    }

    pub fn r(&self) -> u32 {
        self.r
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct MeasureReport {
    pub dimension: usize,
    /// Generated rows, `|M| * binom(N, m)`.
    pub rows: u128,
    /// Distinct multilinear monomials met by nonzero rows.
    pub cols: usize,
    pub rank_method: &'static str,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub millis: Option<u64>,
}

pub fn psp_dimension(p: &Polynomial, spec: &MeasureSpec) -> Result<MeasureReport> {
    psp_dimension_capped(p, spec, DEFAULT_MATRIX_CAP)
}

pub fn psp_dimension_capped(p: &Polynomial, spec: &MeasureSpec, cap: u128) -> Result<MeasureReport> {
    let start = Instant::now();
    let n = p.nvars();
    let shifts = binom_u128(n as u64, spec.m as u64);
    let rows = shifts.saturating_mul(spec.derivatives.len() as u128);
    let cells = rows.saturating_mul(n.max(1) as u128);
    if cells > cap {
        return Err(Error::MatrixTooLarge {
            rows,
            cols: n as u128,
            cap,
        });
    }
    let derivs: Vec<Polynomial> = spec
        .derivatives
        .iter()
        .map(|g| p.partial_derivative(g).multilinear_project())
        .filter(|g| !g.is_zero())
        .collect();

    let (dimension, cols, rank_method) = match p.domain() {
        Domain::Rational => {
            let modular = derivs
                .iter()
                .map(|g| g.reduce_mod(MODULAR_PRIME))
                .collect::<Option<Vec<_>>>();
            let quick = modular.map(|md| span_rank(&md, n, spec.m, Domain::Prime(MODULAR_PRIME)));
            match quick {
                // modular rank <= exact rank <= min(rows, cols)
                Some((rk, cols)) if rk as u128 == rows.min(cols as u128) => (rk, cols, "modular-full-rank"),
                _ => {
                    let (rk, cols) = span_rank(&derivs, n, spec.m, Domain::Rational);
                    (rk, cols, "exact-elimination")
                }
            }
        }
        d => {
            let (rk, cols) = span_rank(&derivs, n, spec.m, d);
            (rk, cols, "exact-elimination")
        }
    };
    Ok(MeasureReport {
        dimension,
        rows,
        cols,
        rank_method,
        millis: Some(start.elapsed().as_millis() as u64),
    })
}

/// A 61-bit prime for the modular pre-pass.
const MODULAR_PRIME: u64 = (1 << 61) - 1;

/// Rank of `{ mult[x_S g] }` and the number of distinct columns, with rows
/// generated one shift subset at a time.
fn span_rank(derivs: &[Polynomial], n: usize, m: u32, domain: Domain) -> (usize, usize) {
    let mut columns: HashMap<Monomial, usize> = HashMap::new();
    let mut echelon = SparseEchelon::new(domain);
    for s in (0..n).combinations(m as usize) {
        let xs = Monomial::multilinear(s.iter().copied());
        for g in derivs {
            let mut row: Vec<(usize, Coeff)> = g
                .terms()
                .filter(|(mono, _)| mono.is_disjoint(&xs))
                .map(|(mono, c)| {
                    let next = columns.len();
                    let col = *columns.entry(mono.mul(&xs)).or_insert(next);
                    (col, c.clone())
                })
                .collect();
            if row.is_empty() {
                continue;
            }
            row.sort_unstable_by_key(|&(c, _)| c);
            echelon.insert(row);
        }
    }
    (echelon.rank(), columns.len())
}

fn binom_u128(n: u64, k: u64) -> u128 {
    if k > n {
        return 0;
    }
    let k = k.min(n - k);
    let mut acc: u128 = 1;
    for i in 0..k {
        acc = match acc.checked_mul((n - i) as u128) {
            Some(v) => v / (i as u128 + 1),
            None => return u128::MAX,
        };
    }
    acc
}

fn check_hypothesis(big_n: u64, r: u64, m: u64, s: u64) -> Result<u64> {
    let need = m + r * s;
    if 2 * need > big_n {
        return Err(Error::HypothesisViolated(format!(
            "m + r*s = {need} exceeds N/2 = {}/2",
            big_n
        )));
    }
    Ok(need)
}

/// `N * binom(t + r, r) * binom(N, m + r s)`: the measure of `F(Q_1, ..., Q_t)`
/// when every monomial of every `Q_i` has support at most `s`.
pub fn composition_upper_bound(big_n: u64, t: u64, r: u64, m: u64, s: u64) -> Result<BigUint> {
    let need = check_hypothesis(big_n, r, m, s)?;
    Ok(BigUint::from(big_n)
        * binomial(BigUint::from(t + r), BigUint::from(r))
        * binomial(BigUint::from(big_n), BigUint::from(need)))
}

/// `T * N * binom(k (n + 1) + r, r) * binom(N, m + r s)`: the measure bound for
/// a top fan-in `T` circuit after the rewrite onto homogeneous components.
pub fn circuit_measure_bound(t: u64, big_n: u64, k: u64, n: u64, r: u64, m: u64, s: u64) -> Result<BigUint> {
    let need = check_hypothesis(big_n, r, m, s)?;
    Ok(BigUint::from(t)
        * BigUint::from(big_n)
        * binomial(BigUint::from(k * (n + 1) + r), BigUint::from(r))
        * binomial(BigUint::from(big_n), BigUint::from(need)))
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct SweepRow {
    pub r: u32,
    pub m: u32,
    pub dimension: usize,
    pub rows: u128,
    pub cols: usize,
    pub millis: u64,
}

/// `Phi` over all multilinear derivatives of degree `r`, for each `(r, m)` pair.
pub fn sweep(p: &Polynomial, rs: &[u32], ms: &[u32], cap: u128) -> Result<Vec<SweepRow>> {
    let mut out = Vec::new();
    for &r in rs {
        for &m in ms {
            let spec = MeasureSpec::all_multilinear(p.nvars(), r, m);
            let rep = psp_dimension_capped(p, &spec, cap)?;
            out.push(SweepRow {
                r,
                m,
                dimension: rep.dimension,
                rows: rep.rows,
                cols: rep.cols,
                millis: rep.millis.unwrap_or(0),
            });
        }
    }
    Ok(out)
}

pub fn sweep_csv(rows: &[SweepRow]) -> String {
    let mut s = String::from("r,m,dimension,rows,cols,millis\n");
    for row in rows {
        s.push_str(&format!(
            "{},{},{},{},{},{}\n",
            row.r, row.m, row.dimension, row.rows, row.cols, row.millis
        ));
    }
    s
}

#[cfg(test)]
mod tests {
    use super::*;

    fn poly(s: &str, n: usize) -> Polynomial {
        Polynomial::parse(Domain::Rational, Some(n), s).unwrap()
    }

    #[test]
    fn worked_example() {
        let p = poly("x1*x2 + x3*x4", 4);
        let spec = MeasureSpec::new(vec![Monomial::var(0), Monomial::var(2)], 1).unwrap();
        let rep = psp_dimension(&p, &spec).unwrap();
        assert_eq!(rep.dimension, 5);
        assert_eq!(rep.rows, 8);
        let f = Domain::prime(101).unwrap();
        let pf = Polynomial::parse(f, Some(4), "x1*x2 + x3*x4").unwrap();
        assert_eq!(psp_dimension(&pf, &spec).unwrap().dimension, 5);
    }

    #[test]
    fn trivial_cases() {
        let spec = MeasureSpec::new(vec![Monomial::var(0)], 0).unwrap();
        assert_eq!(psp_dimension(&poly("x1*x2", 2), &spec).unwrap().dimension, 1);
        assert_eq!(psp_dimension(&Polynomial::zero(Domain::Rational, 3), &spec).unwrap().dimension, 0);
    }

    #[test]
    fn spec_rejects_mixed_degrees() {
        let r = MeasureSpec::new(vec![Monomial::var(0), Monomial::multilinear([0, 1])], 1);
        assert!(matches!(r, Err(Error::InvalidParams(_))));
        assert_eq!(MeasureSpec::all_multilinear(4, 2, 1).derivatives().len(), 6);
    }

    #[test]
    fn bound_formulas() {
        assert_eq!(composition_upper_bound(8, 2, 1, 1, 1).unwrap(), BigUint::from(672u32));
        assert_eq!(composition_upper_bound(8, 5, 0, 2, 3).unwrap(), BigUint::from(8u32 * 28));
        assert!(composition_upper_bound(8, 2, 1, 2, 2).is_ok());
        assert!(matches!(composition_upper_bound(8, 2, 1, 3, 2), Err(Error::HypothesisViolated(_))));
        assert_eq!(circuit_measure_bound(1, 8, 1, 2, 1, 1, 1).unwrap(), BigUint::from(896u32));
        assert_eq!(circuit_measure_bound(2, 8, 1, 2, 1, 1, 1).unwrap(), BigUint::from(1792u32));
        assert_eq!(circuit_measure_bound(3, 8, 0, 2, 0, 2, 1).unwrap(), BigUint::from(3u32 * 8 * 28));
    }

    #[test]
    fn matrix_cap_is_enforced() {
        let spec = MeasureSpec::all_multilinear(10, 1, 3);
        let r = psp_dimension_capped(&poly("x1*x10", 10), &spec, 100);
        assert!(matches!(r, Err(Error::MatrixTooLarge { .. })));
    }

    #[test]
    fn sweep_csv_shape() {
        let rows = sweep(&poly("x1*x2 + x3*x4", 4), &[1], &[0, 1], DEFAULT_MATRIX_CAP).unwrap();
        let csv = sweep_csv(&rows);
        assert!(csv.starts_with("r,m,dimension,rows,cols,millis\n1,0,4,4,4,"));
        assert_eq!(rows[1].dimension, 6);
    }
}
