use std::collections::{BTreeMap, HashMap};

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use super::annihilator::{find_annihilator, Annihilator};
use super::{max_degree, tuple_shape};
use crate::error::{Error, Result};
use crate::field::{Coeff, Domain};
use crate::linalg;
use crate::poly::{Monomial, Polynomial};

/// Draws translations from the grid `{0, 1, ..., grid_size - 1}^N`.
///
/// The origin is tried first; after that each retry is a uniform grid point.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct TranslationSampler {
    pub grid_size: u64,
    pub seed: u64,
    pub max_retries: u32,
}

impl TranslationSampler {
    /// Grid of size `2 t (k + 1) d^(k + 1)` with 10 retries.
    pub fn new(t: usize, k: usize, d: u32, seed: u64) -> Self {
        let grid_size = (2 * t as u64)
            .saturating_mul(k as u64 + 1)
            .saturating_mul((d.max(1) as u64).saturating_pow(k as u32 + 1))
            .max(2);
        TranslationSampler {
            grid_size,
            seed,
            max_retries: 10,
        }
    }

    fn effective_size(&self, domain: Domain) -> u64 {
        domain.size().map_or(self.grid_size, |p| p.min(self.grid_size))
    }
}

/// A translation point and the number of candidates examined to find it.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Translation {
    pub point: Vec<Coeff>,
    pub attempts: u32,
}

/// Tries the origin, then up to `max_retries` random grid points, until `good` accepts.
pub(crate) fn sample_with(
    domain: Domain,
    nvars: usize,
    sampler: &TranslationSampler,
    mut good: impl FnMut(&[Coeff]) -> Result<bool>,
) -> Result<Translation> {
    let size = sampler.effective_size(domain);
    let mut rng = ChaCha8Rng::seed_from_u64(sampler.seed);
    let mut a = vec![domain.zero(); nvars];
    for attempt in 0..=sampler.max_retries {
        if attempt > 0 {
            a = (0..nvars).map(|_| domain.from_u64(rng.gen_range(0..size))).collect();
        }
        if good(&a)? {
            return Ok(Translation {
                point: a,
                attempts: attempt + 1,
            });
        }
    }
    Err(Error::NoGoodTranslation {
        attempts: sampler.max_retries as usize + 1,
    })
}

fn normalized(q: &[Polynomial]) -> Result<(Domain, usize, Vec<Polynomial>)> {
    let (domain, n) = tuple_shape(q)?;
    Ok((domain, n, q.iter().map(|p| p.clone().with_nvars(n)).collect()))
}

fn non_basis(t: usize, basis: &[usize]) -> Vec<usize> {
    (0..t).filter(|i| !basis.contains(i)).collect()
}

/// For each non-basis `i`, a minimal annihilator `A_i(Z_B, Y)` of `(Q_B, Q_i)`.
pub fn dependent_annihilators(q: &[Polynomial], basis: &[usize]) -> Result<Vec<(usize, Annihilator)>> {
    non_basis(q.len(), basis)
        .into_iter()
        .map(|i| {
            let mut tuple: Vec<Polynomial> = basis.iter().map(|&b| q[b].clone()).collect();
            tuple.push(q[i].clone());
            Ok((i, find_annihilator(&tuple, None)?))
        })
        .collect()
}

/// `L_i(a) = (dA_i/dY)(Q_B(a), Q_i(a))` for each `(i, A_i)`.
pub fn derivative_certificates(
    q: &[Polynomial],
    basis: &[usize],
    anns: &[(usize, Annihilator)],
    a: &[Coeff],
) -> Result<Vec<(usize, Coeff)>> {
    let basis_vals = basis
        .iter()
        .map(|&b| q[b].clone().with_nvars(a.len()).evaluate(a))
        .collect::<Result<Vec<_>>>()?;
    anns.iter()
        .map(|(i, ann)| {
            let mut vals = basis_vals.clone();
            vals.push(q[*i].clone().with_nvars(a.len()).evaluate(a)?);
            Ok((*i, ann.r.derivative(basis.len()).with_nvars(vals.len()).evaluate(&vals)?))
        })
        .collect()
}

/// Every `L_i(a)` is nonzero.
pub fn is_good_translation(
    q: &[Polynomial],
    basis: &[usize],
    anns: &[(usize, Annihilator)],
    a: &[Coeff],
) -> Result<bool> {
    let (domain, _) = tuple_shape(q)?;
    Ok(derivative_certificates(q, basis, anns, a)?
        .iter()
        .all(|(_, l)| !domain.is_zero(l)))
}

/// A translation at which every non-basis polynomial has a nonvanishing
/// derivative certificate.
pub fn sample_good_translation(
    q: &[Polynomial],
    basis: &[usize],
    sampler: &TranslationSampler,
) -> Result<Translation> {
    let (domain, n, q) = normalized(q)?;
    let anns = dependent_annihilators(&q, basis)?;
    sample_with(domain, n, sampler, |a| is_good_translation(&q, basis, &anns, a))
}

/// Witness that every non-basis `Q_i` is a truncated polynomial function of the basis.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DependenceWitness {
    pub a: Vec<Coeff>,
    pub basis: Vec<usize>,
    /// `F_i` in `k` variables, keyed by the non-basis index `i`.
    pub f: BTreeMap<usize, Polynomial>,
    pub truncation_degrees: BTreeMap<usize, u32>,
}

impl DependenceWitness {
    /// Re-checks `Q_i(X + a) = h^{<=d_i}[F_i(Q_B(X + a))]` for every `i`.
    pub fn verify(&self, q: &[Polynomial]) -> Result<bool> {
        let (_, n, q) = normalized(q)?;
        let shifted = self
            .basis
            .iter()
            .map(|&b| q[b].translate(&self.a))
            .collect::<Result<Vec<_>>>()?;
        for (i, f) in &self.f {
            let lhs = q[*i].translate(&self.a)?;
            let rhs = f
                .compose_truncated(&shifted, self.truncation_degrees[i])?
                .with_nvars(n);
            if lhs != rhs {
                return Ok(false);
            }
        }
        Ok(true)
    }
}

/// Finds each `F_i` by exact linear solving over `k`-variate monomials of
/// degree `1, 2, ...` up to `cap` (default `d_i (k + 1) d^k`).
pub fn reconstruct_dependence(
    q: &[Polynomial],
    basis: &[usize],
    a: &[Coeff],
    cap: Option<u32>,
) -> Result<DependenceWitness> {
    let (domain, n, q) = normalized(q)?;
    let k = basis.len();
    let d = max_degree(&q);
    let shifted = basis
        .iter()
        .map(|&b| q[b].translate(a))
        .collect::<Result<Vec<_>>>()?;
    let mut f = BTreeMap::new();
    let mut truncation_degrees = BTreeMap::new();
    for i in non_basis(q.len(), basis) {
        let di = q[i].total_degree();
        let target = q[i].translate(a)?;
        let default_cap = (di.max(1) as u64)
            .saturating_mul(super::kayal_cap(k as u32, d))
            .min(u32::MAX as u64) as u32;
        let cap = cap.unwrap_or(default_cap).max(1);
        let fi = solve_truncated(domain, n, k, &shifted, &target, di, cap)?
            .ok_or(Error::NoSolutionWithinCap { index: i, cap })?;
        f.insert(i, fi);
        truncation_degrees.insert(i, di);
    }
    Ok(DependenceWitness {
        a: a.to_vec(),
        basis: basis.to_vec(),
        f,
        truncation_degrees,
    })
}

fn solve_truncated(
    domain: Domain,
    n: usize,
    k: usize,
    shifted: &[Polynomial],
    target: &Polynomial,
    di: u32,
    cap: u32,
) -> Result<Option<Polynomial>> {
    let mut memo: HashMap<Monomial, Polynomial> = HashMap::new();
    memo.insert(Monomial::one(), Polynomial::one(domain, n));
    for degree in 1..=cap {
        let cols = Monomial::all_up_to(k, degree);
        for m in &cols {
            if !memo.contains_key(m) {
                let v = m.pairs().next().unwrap().0;
                let prev = Monomial::var(v).quotient_of(m).unwrap();
                let img = memo[&prev].mul_truncated(&shifted[v], di);
                memo.insert(m.clone(), img);
            }
        }
        let mut index: BTreeMap<&Monomial, usize> = BTreeMap::new();
        for m in target.monomials().chain(cols.iter().flat_map(|c| memo[c].monomials())) {
            let next = index.len();
            index.entry(m).or_insert(next);
        }
        let mut rows = vec![vec![domain.zero(); cols.len()]; index.len()];
        let mut rhs = vec![domain.zero(); index.len()];
        for (j, c) in cols.iter().enumerate() {
            for (m, v) in memo[c].terms() {
                rows[index[m]][j] = v.clone();
            }
        }
        for (m, v) in target.terms() {
            rhs[index[m]] = v.clone();
        }
        if let Some(x) = linalg::solve(domain, &rows, &rhs, cols.len()) {
            let fi = Polynomial::from_terms(domain, k, cols.iter().cloned().zip(x));
            if fi.compose_truncated(shifted, di)?.with_nvars(n) == *target {
                return Ok(Some(fi));
            }
        }
        if k == 0 {
            break;
        }
    }
    Ok(None)
}

/// Output of the Newton lifting oracle.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct NewtonCertificate {
    pub index: usize,
    pub iterations: u32,
    /// `h^{<=d_i}[Q_i(X + a)]` as reconstructed from the annihilator alone.
    pub series: Polynomial,
}

/// Lifts the root `Y_0 = Q_i(a)` of `A_i(Q_B(X + a), Y)` by Newton iteration in
/// the ring truncated at degree `d_i`, doubling the precision each step.
pub fn newton_reconstruct(
    q: &[Polynomial],
    basis: &[usize],
    a: &[Coeff],
    i: usize,
) -> Result<NewtonCertificate> {
    let (domain, n, q) = normalized(q)?;
    let k = basis.len();
    let di = q[i].total_degree();
    let mut tuple: Vec<Polynomial> = basis.iter().map(|&b| q[b].clone()).collect();
    tuple.push(q[i].clone());
    let ann = find_annihilator(&tuple, None)?;

    let mut args = basis
        .iter()
        .map(|&b| q[b].translate(a))
        .collect::<Result<Vec<_>>>()?;
    args.push(Polynomial::zero(domain, n));
    // A = sum_j c_j(Z_B) Y^j, C_j = h^{<=d_i}[c_j(Q_B(X + a))]
    let ydeg = ann.r.monomials().map(|m| m.exponent(k)).max().unwrap_or(0);
    let coeffs = (0..=ydeg)
        .map(|j| {
            let cj = Polynomial::from_terms(
                domain,
                k + 1,
                ann.r.terms().filter(|(m, _)| m.exponent(k) == j).map(|(m, c)| {
                    (Monomial::from_pairs(m.pairs().filter(|&(v, _)| v != k)), c.clone())
                }),
            );
            Ok(cj.compose_truncated(&args, di)?.with_nvars(n))
        })
        .collect::<Result<Vec<_>>>()?;

    let eval = |y: &Polynomial, prec: u32| -> (Polynomial, Polynomial) {
        let mut p = Polynomial::zero(domain, n);
        let mut dp = Polynomial::zero(domain, n);
        for j in (0..coeffs.len()).rev() {
            if j + 1 < coeffs.len() {
                dp = dp
                    .mul_truncated(y, prec)
                    .add(&coeffs[j + 1].scale(&domain.from_u64(j as u64 + 1)).truncate(prec));
            }
            p = p.mul_truncated(y, prec).add(&coeffs[j].truncate(prec));
        }
        (p, dp)
    };

    let mut y = Polynomial::constant(domain, n, q[i].evaluate(a)?);
    let (_, dp0) = eval(&y, 0);
    let l = dp0.constant_term();
    if domain.is_zero(&l) {
        return Err(Error::DerivativeVanishes);
    }
    let l_inv = domain.inv(&l).unwrap();
    let mut prec = 0;
    let mut iterations = 0;
    while prec < di {
        prec = (2 * prec + 1).min(di);
        let (p, dp) = eval(&y, prec);
        // 1/dp = l^{-1} sum_m (-(dp - l) / l)^m
        let w = dp
            .sub(&Polynomial::constant(domain, n, dp.constant_term()))
            .scale(&domain.neg(&l_inv));
        let mut s = Polynomial::one(domain, n);
        for _ in 0..prec {
            s = Polynomial::one(domain, n).add(&w.mul_truncated(&s, prec));
        }
        let dp_inv = s.scale(&domain.inv(&dp.constant_term()).ok_or(Error::DerivativeVanishes)?);
        y = y.sub(&p.mul_truncated(&dp_inv, prec));
        iterations += 1;
    }
    let (residual, _) = eval(&y, di);
    if !residual.is_zero() || y != q[i].translate(a)?.truncate(di) {
        return Err(Error::NonConvergence);
    }
    Ok(NewtonCertificate {
        index: i,
        iterations,
        series: y,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn polys(d: Domain, n: usize, src: &[&str]) -> Vec<Polynomial> {
        src.iter().map(|s| Polynomial::parse(d, Some(n), s).unwrap()).collect()
    }

    #[test]
    fn square_is_its_own_witness() {
        let q = Domain::rational();
        let e2 = polys(q, 1, &["x1", "x1^2"]);
        let s = TranslationSampler::new(2, 1, 2, 3);
        let t = sample_good_translation(&e2, &[0], &s).unwrap();
        assert_eq!((t.attempts, t.point.clone()), (1, vec![q.zero()]));
        let w = reconstruct_dependence(&e2, &[0], &t.point, None).unwrap();
        assert_eq!(w.f[&1].to_text("z"), "z1^2");
        let nc = newton_reconstruct(&e2, &[0], &t.point, 1).unwrap();
        assert_eq!(nc.series.to_string(), "x1^2");
        assert_eq!(nc.iterations, 2);
    }

    #[test]
    fn e1_third_polynomial() {
        let q = Domain::rational();
        let e1 = polys(q, 2, &["x1 + x2", "x1*x2", "x1^2 + x2^2"]);
        let s = TranslationSampler::new(3, 2, 2, 11);
        let t = sample_good_translation(&e1, &[0, 1], &s).unwrap();
        let anns = dependent_annihilators(&e1, &[0, 1]).unwrap();
        let certs = derivative_certificates(&e1, &[0, 1], &anns, &t.point).unwrap();
        assert!(!q.is_zero(&certs[0].1));
        let w = reconstruct_dependence(&e1, &[0, 1], &[q.zero(), q.zero()], None).unwrap();
        assert_eq!(w.f[&2].to_text("z"), "z1^2 - 2*z2");
        assert!(w.verify(&e1).unwrap());
        let w = reconstruct_dependence(&e1, &[0, 1], &t.point, None).unwrap();
        assert!(w.verify(&e1).unwrap());
        let nc = newton_reconstruct(&e1, &[0, 1], &t.point, 2).unwrap();
        let shifted: Vec<_> = [0, 1].iter().map(|&b| e1[b].translate(&t.point).unwrap()).collect();
        assert_eq!(nc.series, w.f[&2].compose_truncated(&shifted, 2).unwrap());
    }

    #[test]
    fn linear_plus_square() {
        let q = Domain::rational();
        let p = polys(q, 1, &["x1", "x1^2 + x1"]);
        let w = reconstruct_dependence(&p, &[0], &[q.zero()], None).unwrap();
        assert_eq!(w.f[&1].to_text("z"), "z1^2 + z1");
    }

    #[test]
    fn origin_is_rejected_when_the_certificate_vanishes() {
        let q = Domain::rational();
        let p = polys(q, 1, &["x1^2", "x1"]);
        let anns = dependent_annihilators(&p, &[0]).unwrap();
        assert!(!is_good_translation(&p, &[0], &anns, &[q.zero()]).unwrap());
        let s = TranslationSampler::new(2, 1, 2, 5);
        let t = sample_good_translation(&p, &[0], &s).unwrap();
        assert!(t.attempts > 1 && !q.is_zero(&t.point[0]));
        assert_eq!(newton_reconstruct(&p, &[0], &[q.zero()], 1), Err(Error::DerivativeVanishes));
        let w = reconstruct_dependence(&p, &[0], &t.point, None).unwrap();
        assert!(w.verify(&p).unwrap());
        newton_reconstruct(&p, &[0], &t.point, 1).unwrap();
    }
}
