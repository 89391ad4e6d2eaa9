//! Algebraic rank, annihilating polynomials and functional dependence.
//!
//! Rank comes from the Jacobian criterion, either at random points or by
//! fraction-free elimination over the rational function field. For a
//! dependent polynomial `Q_i` outside a transcendence basis `B`, a translation
//! `a` and a polynomial `F_i` are found with
//! `Q_i(X + a) = h^{<=d_i}[F_i(Q_B(X + a))]`, and whole circuits are rewritten
//! onto the homogeneous components of their basis polynomials.

mod annihilator;
mod dependence;
mod rewrite;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

pub use annihilator::{annihilator_rank, find_annihilator, find_annihilator_with_cap, kayal_cap, Annihilator};
pub use dependence::{
    derivative_certificates, dependent_annihilators, is_good_translation, newton_reconstruct, reconstruct_dependence, sample_good_translation,
    DependenceWitness, NewtonCertificate, Translation, TranslationSampler,
};
pub use rewrite::{rewrite_circuit, Rewrite};

use crate::error::{Error, Result};
use crate::field::{Coeff, Domain};
use crate::linalg;
use crate::poly::Polynomial;

/// Cap on the term count of any entry during symbolic elimination.
pub const SYMBOLIC_TERM_CAP: usize = 200_000;

/// Common domain and variable count of a tuple.
pub(crate) fn tuple_shape(q: &[Polynomial]) -> Result<(Domain, usize)> {
    let Some(first) = q.first() else {
        return Ok((Domain::Rational, 0));
    };
    let domain = first.domain();
    for p in q {
        p.ensure_domain(domain)?;
    }
    Ok((domain, q.iter().map(Polynomial::nvars).max().unwrap_or(0)))
}

/// Maximum total degree, at least 1.
pub(crate) fn max_degree(q: &[Polynomial]) -> u32 {
    q.iter().map(Polynomial::total_degree).max().unwrap_or(0).max(1)
}

/// Refuses prime fields whose characteristic does not exceed the product of
/// the input degrees, where the Jacobian criterion can fail.
pub fn check_characteristic(q: &[Polynomial]) -> Result<()> {
    let (domain, _) = tuple_shape(q)?;
    if let Domain::Prime(p) = domain {
        let prod = q
            .iter()
            .fold(1u64, |acc, x| acc.saturating_mul(x.total_degree().max(1) as u64));
        if p <= prod {
            return Err(Error::CharacteristicTooSmall { p, needed: prod });
        }
    }
    Ok(())
}

/// `J[i][j] = dQ_i / dX_j`.
pub fn jacobian(q: &[Polynomial]) -> Result<Vec<Vec<Polynomial>>> {
    check_characteristic(q)?;
    let (_, n) = tuple_shape(q)?;
    Ok(q.iter()
        .map(|p| (0..n).map(|j| p.derivative(j).with_nvars(n)).collect())
        .collect())
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum RankMode {
    /// Jacobian rank at `trials` random points from a set of size
    /// `2 t d 2^security`, keeping the maximum.
    Randomized { trials: u32, security: u32, seed: u64 },
    Symbolic,
}

impl RankMode {
    pub fn randomized(seed: u64) -> Self {
        RankMode::Randomized {
            trials: 4,
            security: 40,
            seed,
        }
    }
}

#[derive(Clone, Debug, PartialEq, Serialize)]
#[serde(tag = "kind", rename_all = "kebab-case")]
pub enum RankMethod {
    JacobianRandomized {
        points_used: usize,
        sample_set_size: u64,
        /// Upper bound on the probability that the reported rank is too small.
        error_bound: f64,
    },
    JacobianSymbolic,
}

/// Algebraic rank together with a transcendence basis (0-based indices).
#[derive(Clone, Debug, PartialEq)]
pub struct RankCertificate {
    pub rank: usize,
    pub basis_indices: Vec<usize>,
    pub method: RankMethod,
    pub evaluation_points: Vec<Vec<Coeff>>,
}

pub fn algebraic_rank(q: &[Polynomial], mode: RankMode) -> Result<RankCertificate> {
    let jac = jacobian(q)?;
    let (domain, n) = tuple_shape(q)?;
    match mode {
        RankMode::Symbolic => {
            let basis = symbolic_greedy_basis(jac, n)?;
            Ok(RankCertificate {
                rank: basis.len(),
                basis_indices: basis,
                method: RankMethod::JacobianSymbolic,
                evaluation_points: Vec::new(),
            })
        }
        RankMode::Randomized {
            trials,
            security,
            seed,
        } => {
            let t = q.len() as u64;
            let d = max_degree(q) as u64;
            let wanted = 2u64
                .saturating_mul(t.max(1))
                .saturating_mul(d)
                .saturating_mul(1u64.checked_shl(security).unwrap_or(u64::MAX));
            let size = domain.size().map_or(wanted, |p| p.min(wanted));
            let mut rng = ChaCha8Rng::seed_from_u64(seed);
            let mut best: Option<(Vec<usize>, Vec<Coeff>)> = None;
            let mut points = Vec::new();
            for _ in 0..trials.max(1) {
                let x: Vec<Coeff> = (0..n).map(|_| domain.from_u64(rng.gen_range(0..size))).collect();
                let rows = jac
                    .iter()
                    .map(|row| row.iter().map(|e| e.evaluate(&x)).collect::<Result<Vec<_>>>())
                    .collect::<Result<Vec<_>>>()?;
                let basis = greedy_rows(domain, &rows, n);
                if best.as_ref().map_or(true, |(b, _)| basis.len() > b.len()) {
                    best = Some((basis, x.clone()));
                }
                points.push(x);
            }
            let (basis, _) = best.unwrap();
            // a nonzero k x k minor has degree <= k(d-1) < t d
            let per_trial = ((t * d) as f64 / size as f64).min(1.0);
            Ok(RankCertificate {
                rank: basis.len(),
                basis_indices: basis,
                method: RankMethod::JacobianRandomized {
                    points_used: points.len(),
                    sample_set_size: size,
                    error_bound: per_trial.powi(trials.max(1) as i32),
                },
                evaluation_points: points,
            })
        }
    }
}

/// Indices of rows that increase the rank when scanned in order.
fn greedy_rows(domain: Domain, rows: &[Vec<Coeff>], ncols: usize) -> Vec<usize> {
    let mut basis = Vec::new();
    let mut kept: Vec<Vec<Coeff>> = Vec::new();
    for (i, r) in rows.iter().enumerate() {
        kept.push(r.clone());
        if linalg::rank(domain, &kept, ncols) == kept.len() {
            basis.push(i);
        } else {
            kept.pop();
        }
    }
    basis
}

/// Greedy basis over the field of rational functions by fraction-free row
/// reduction: `r <- P[c] r - r[c] P` for each stored pivot row `P`.
fn symbolic_greedy_basis(jac: Vec<Vec<Polynomial>>, n: usize) -> Result<Vec<usize>> {
    let cap = SYMBOLIC_TERM_CAP;
    let too_large = |e: Error| match e {
        Error::ExpansionTooLarge { .. } => Error::SymbolicTooLarge { cap },
        other => other,
    };
    let mut pivots: Vec<(usize, Vec<Polynomial>)> = Vec::new();
    let mut basis = Vec::new();
    for (i, mut row) in jac.into_iter().enumerate() {
        for (c, p) in &pivots {
            if row[*c].is_zero() {
                continue;
            }
            let f = row[*c].clone();
            for j in 0..n {
                let a = p[*c].mul_capped(&row[j], cap).map_err(too_large)?;
                let b = f.mul_capped(&p[j], cap).map_err(too_large)?;
                row[j] = a.sub(&b);
                if row[j].len() > cap {
                    return Err(Error::SymbolicTooLarge { cap });
                }
            }
        }
        if let Some(c) = row.iter().position(|e| !e.is_zero()) {
            pivots.push((c, row));
            basis.push(i);
        }
    }
    Ok(basis)
}
