use std::collections::{BTreeMap, HashMap};

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use super::{max_degree, tuple_shape};
use crate::error::{Error, Result};
use crate::field::{mul_mod, Coeff, Domain};
use crate::linalg;
use crate::poly::{Monomial, Polynomial};

/// Modulus for the evaluation prefilter over the rationals.
const PREFILTER_PRIME: u64 = 2_147_483_647;
const PREFILTER_SEED: u64 = 0x616e_6e69_6869_6c61;

/// A nonzero `R` in `t` variables with `R(Q_1, ..., Q_t) = 0`, of minimal total
/// degree, with the order-minimal leading monomial and leading coefficient 1.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Annihilator {
    pub r: Polynomial,
    pub degree: u32,
}

/// `(k + 1) d^k`, the degree bound for annihilators of rank-`k` tuples of degree `d`.
pub fn kayal_cap(k: u32, d: u32) -> u64 {
    (k as u64 + 1).saturating_mul((d as u64).saturating_pow(k))
}

/// Searches degrees `1, 2, ...` up to the bound for any dependent tuple of this
/// shape, `(k + 1) d^k` with `k = min(t - 1, N)`, or `user_cap` if smaller.
pub fn find_annihilator(q: &[Polynomial], user_cap: Option<u32>) -> Result<Annihilator> {
    let (_, n) = tuple_shape(q)?;
    let k = (q.len().saturating_sub(1)).min(n) as u32;
    let bound = kayal_cap(k, max_degree(q)).min(u32::MAX as u64) as u32;
    let cap = user_cap.map_or(bound, |c| c.min(bound)).max(1);
    find_annihilator_with_cap(q, cap)
}

/// Like [`find_annihilator`] with an explicit degree cap.
pub fn find_annihilator_with_cap(q: &[Polynomial], cap: u32) -> Result<Annihilator> {
    let (domain, _) = tuple_shape(q)?;
    if q.is_empty() {
        return Err(Error::NoAnnihilatorWithinCap { cap });
    }
    let t = q.len();
    let modular = Prefilter::new(q, domain);
    let mut rng = ChaCha8Rng::seed_from_u64(PREFILTER_SEED);
    for degree in 1..=cap {
        let cols = Monomial::all_up_to(t, degree);
        if let Some(pf) = &modular {
            if !pf.has_kernel(&cols, &mut rng) {
                continue;
            }
        }
        if let Some(r) = exact_kernel_vector(q, domain, t, &cols)? {
            if verify_annihilator(&r, q)? {
                return Ok(Annihilator { r, degree });
            }
        }
    }
    Err(Error::NoAnnihilatorWithinCap { cap })
}

/// The composition map evaluated at random points modulo a prime. Full column
/// rank there implies the exact map is injective.
struct Prefilter {
    p: u64,
    q: Vec<Polynomial>,
}

impl Prefilter {
    fn new(q: &[Polynomial], domain: Domain) -> Option<Self> {
        let p = match domain {
            Domain::Prime(p) => p,
            Domain::Rational => PREFILTER_PRIME,
        };
        let q = q.iter().map(|x| x.reduce_mod(p)).collect::<Option<Vec<_>>>()?;
        Some(Prefilter { p, q })
    }

    fn has_kernel(&self, cols: &[Monomial], rng: &mut ChaCha8Rng) -> bool {
        let p = self.p;
        let f = Domain::Prime(p);
        let n = self.q.iter().map(Polynomial::nvars).max().unwrap_or(0);
        let top = cols.last().map_or(0, Monomial::degree) as usize;
        let rows: Vec<Vec<Coeff>> = (0..cols.len() + 8)
            .map(|_| {
                let x: Vec<Coeff> = (0..n).map(|_| Coeff::Mod(rng.gen_range(0..p))).collect();
                let pows: Vec<Vec<u64>> = self
                    .q
                    .iter()
                    .map(|qi| {
                        let z = f.to_u64(&qi.evaluate(&x[..qi.nvars()]).unwrap()).unwrap();
                        let mut v = vec![1u64; top + 1];
                        for e in 1..=top {
                            v[e] = mul_mod(v[e - 1], z, p);
                        }
                        v
                    })
                    .collect();
                cols.iter()
                    .map(|m| {
                        Coeff::Mod(
                            m.pairs()
                                .fold(1, |acc, (v, e)| mul_mod(acc, pows[v][e as usize], p)),
                        )
                    })
                    .collect()
            })
            .collect();
        linalg::rank(f, &rows, cols.len()) < cols.len()
    }
}

/// Smallest-free-column nullspace vector of the exact composition map, as a
/// polynomial in `t` variables.
fn exact_kernel_vector(
    q: &[Polynomial],
    domain: Domain,
    t: usize,
    cols: &[Monomial],
) -> Result<Option<Polynomial>> {
    let images = composed_monomials(q, domain, cols);
    let mut index: BTreeMap<&Monomial, usize> = BTreeMap::new();
    for img in &images {
        for m in img.monomials() {
            let next = index.len();
            index.entry(m).or_insert(next);
        }
    }
    let mut rows = vec![vec![domain.zero(); cols.len()]; index.len()];
    for (j, img) in images.iter().enumerate() {
        for (m, c) in img.terms() {
            rows[index[m]][j] = c.clone();
        }
    }
    let ns = linalg::nullspace(domain, &rows, cols.len());
    Ok(ns.first().map(|v| {
        Polynomial::from_terms(
            domain,
            t,
            cols.iter().cloned().zip(v.iter().cloned()),
        )
    }))
}

/// `Q^alpha` for each column monomial, reusing `Q^(alpha - e_v)`.
fn composed_monomials(q: &[Polynomial], domain: Domain, cols: &[Monomial]) -> Vec<Polynomial> {
    let n = q.iter().map(Polynomial::nvars).max().unwrap_or(0);
    let mut memo: HashMap<Monomial, Polynomial> = HashMap::new();
    let mut out = Vec::with_capacity(cols.len());
    for m in cols {
        let img = match m.pairs().next() {
            None => Polynomial::one(domain, n),
            Some((v, _)) => {
                let prev = Monomial::var(v).quotient_of(m).unwrap();
                memo[&prev].mul(&q[v])
            }
        };
        memo.insert(m.clone(), img.clone());
        out.push(img);
    }
    out
}

/// Rank as the size of a greedy maximal subset without an annihilator below
/// the degree bound. Returns the rank and the 0-based subset.
pub fn annihilator_rank(q: &[Polynomial]) -> Result<(usize, Vec<usize>)> {
    tuple_shape(q)?;
    let mut basis: Vec<usize> = Vec::new();
    for i in 0..q.len() {
        let trial: Vec<Polynomial> = basis.iter().chain(Some(&i)).map(|&j| q[j].clone()).collect();
        match find_annihilator(&trial, None) {
            Ok(_) => {}
            Err(Error::NoAnnihilatorWithinCap { .. }) => basis.push(i),
            Err(e) => return Err(e),
        }
    }
    Ok((basis.len(), basis))
}

/// `R(Q) == 0`, checked by full expansion.
pub(crate) fn verify_annihilator(r: &Polynomial, q: &[Polynomial]) -> Result<bool> {
    Ok(r.compose(q, crate::poly::DEFAULT_TERM_CAP)?.is_zero())
}
