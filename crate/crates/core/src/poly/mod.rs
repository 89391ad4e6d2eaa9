//! Exact sparse multivariate polynomials.

mod json;
mod monomial;
mod text;

use std::collections::BTreeMap;
use std::fmt;

pub use json::{MonoRepr, PolyRepr, TermRepr};
pub use monomial::{Monomial, MonomialOrder};

use crate::error::{Error, Result};
use crate::field::{Coeff, Domain};

/// Default cap on the number of terms any expansion may produce.
pub const DEFAULT_TERM_CAP: usize = 10_000_000;

/// A polynomial in `nvars` variables over `domain`.
///
/// Terms are kept in a map ordered by graded-lex (ascending), and zero
/// coefficients are never stored.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Polynomial {
    domain: Domain,
    nvars: usize,
    terms: BTreeMap<Monomial, Coeff>,
}

impl Polynomial {
    pub fn zero(domain: Domain, nvars: usize) -> Self {
        Polynomial {
            domain,
            nvars,
            terms: BTreeMap::new(),
        }
    }

    pub fn constant(domain: Domain, nvars: usize, c: Coeff) -> Self {
        Polynomial::monomial(domain, nvars, c, Monomial::one())
    }

    pub fn one(domain: Domain, nvars: usize) -> Self {
        Polynomial::constant(domain, nvars, domain.one())
    }

    /// The variable `x_{v+1}` (0-based index `v`).
    pub fn var(domain: Domain, nvars: usize, v: usize) -> Self {
        Polynomial::monomial(domain, nvars.max(v + 1), domain.one(), Monomial::var(v))
    }

    pub fn monomial(domain: Domain, nvars: usize, c: Coeff, m: Monomial) -> Self {
        let nvars = nvars.max(m.max_var().map_or(0, |v| v + 1));
        let mut terms = BTreeMap::new();
        if !domain.is_zero(&c) {
            terms.insert(m, c);
        }
        Polynomial {
            domain,
            nvars,
            terms,
        }
    }

    /// Collects terms, summing repeated monomials and dropping zeros.
    pub fn from_terms<I>(domain: Domain, nvars: usize, terms: I) -> Self
    where
        I: IntoIterator<Item = (Monomial, Coeff)>,
    {
        let mut p = Polynomial::zero(domain, nvars);
        for (m, c) in terms {
            p.add_term(m, c);
        }
        p
    }

    /// Integer-coefficient convenience constructor.
    pub fn from_int_terms(domain: Domain, nvars: usize, terms: &[(i64, &[u32])]) -> Self {
        Polynomial::from_terms(
            domain,
            nvars,
            terms
                .iter()
                .map(|&(c, e)| (Monomial::from_exponents(e), domain.from_i64(c))),
        )
    }

    pub(crate) fn add_term(&mut self, m: Monomial, c: Coeff) {
        if self.domain.is_zero(&c) {
            return;
        }
        if let Some(v) = m.max_var() {
            self.nvars = self.nvars.max(v + 1);
        }
        match self.terms.entry(m) {
            std::collections::btree_map::Entry::Vacant(e) => {
                e.insert(c);
            }
            std::collections::btree_map::Entry::Occupied(mut e) => {
                let s = self.domain.add(e.get(), &c);
                if self.domain.is_zero(&s) {
                    e.remove();
                } else {
                    *e.get_mut() = s;
                }
            }
        }
    }

    pub fn domain(&self) -> Domain {
        self.domain
    }

    pub fn nvars(&self) -> usize {
        self.nvars
    }

    /// Same polynomial viewed in `nvars` variables (never fewer than it uses).
    pub fn with_nvars(mut self, nvars: usize) -> Self {
        let used = self
            .terms
            .keys()
            .filter_map(Monomial::max_var)
            .max()
            .map_or(0, |v| v + 1);
        self.nvars = nvars.max(used);
        self
    }

    /// Terms in ascending graded-lex order.
    pub fn terms(&self) -> impl DoubleEndedIterator<Item = (&Monomial, &Coeff)> + ExactSizeIterator {
        self.terms.iter()
    }

    pub fn monomials(&self) -> impl Iterator<Item = &Monomial> {
        self.terms.keys()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_constant(&self) -> bool {
        self.terms.keys().all(Monomial::is_one)
    }

    pub fn coeff(&self, m: &Monomial) -> Coeff {
        self.terms.get(m).cloned().unwrap_or_else(|| self.domain.zero())
    }

    pub fn constant_term(&self) -> Coeff {
        self.coeff(&Monomial::one())
    }

    /// Total degree; `None` for the zero polynomial.
    pub fn degree(&self) -> Option<u32> {
        self.terms.keys().next_back().map(Monomial::degree)
    }

    /// Total degree with the zero polynomial mapped to 0.
    pub fn total_degree(&self) -> u32 {
        self.degree().unwrap_or(0)
    }

    pub fn is_homogeneous(&self) -> bool {
        let mut degs = self.terms.keys().map(Monomial::degree);
        match degs.next() {
            None => true,
            Some(d) => degs.all(|e| e == d),
        }
    }

    pub fn is_multilinear(&self) -> bool {
        self.terms.keys().all(Monomial::is_multilinear)
    }

    /// Union of the supports of all monomials.
    pub fn variables(&self) -> Vec<usize> {
        let mut vs: Vec<usize> = self.terms.keys().flat_map(|m| m.support()).collect();
        vs.sort_unstable();
        vs.dedup();
        vs
    }

    fn check_domain(&self, other: &Polynomial) {
        assert_eq!(
            self.domain, other.domain,
            "polynomials over different coefficient domains"
        );
    }

    pub(crate) fn ensure_domain(&self, domain: Domain) -> Result<()> {
        if self.domain != domain {
            return Err(Error::DomainMismatch {
                left: domain.name(),
                right: self.domain.name(),
            });
        }
        Ok(())
    }

    pub fn add(&self, other: &Polynomial) -> Polynomial {
        self.check_domain(other);
        let mut out = self.clone();
        out.nvars = out.nvars.max(other.nvars);
        for (m, c) in &other.terms {
            out.add_term(m.clone(), c.clone());
        }
        out
    }

    pub fn sub(&self, other: &Polynomial) -> Polynomial {
        self.add(&other.neg())
    }

    pub fn neg(&self) -> Polynomial {
        self.map_coeffs(|c| self.domain.neg(c))
    }

    pub fn scale(&self, s: &Coeff) -> Polynomial {
        if self.domain.is_zero(s) {
            return Polynomial::zero(self.domain, self.nvars);
        }
        self.map_coeffs(|c| self.domain.mul(c, s))
    }

    fn map_coeffs(&self, f: impl Fn(&Coeff) -> Coeff) -> Polynomial {
        Polynomial {
            domain: self.domain,
            nvars: self.nvars,
            terms: self.terms.iter().map(|(m, c)| (m.clone(), f(c))).collect(),
        }
    }

    pub fn mul(&self, other: &Polynomial) -> Polynomial {
        self.mul_capped(other, usize::MAX)
            .expect("uncapped multiplication cannot fail")
    }

    /// Product that fails once the partial result exceeds `cap` terms.
    pub fn mul_capped(&self, other: &Polynomial, cap: usize) -> Result<Polynomial> {
        self.mul_filtered(other, cap, |_| true)
    }

    /// Product keeping only terms of degree `<= max_degree` (power-series product).
    pub fn mul_truncated(&self, other: &Polynomial, max_degree: u32) -> Polynomial {
        self.mul_filtered(other, usize::MAX, |m| m.degree() <= max_degree)
            .expect("uncapped multiplication cannot fail")
    }

    fn mul_filtered(
        &self,
        other: &Polynomial,
        cap: usize,
        keep: impl Fn(&Monomial) -> bool,
    ) -> Result<Polynomial> {
        self.check_domain(other);
        let mut out = Polynomial::zero(self.domain, self.nvars.max(other.nvars));
        let (small, large) = if self.len() <= other.len() {
            (self, other)
        } else {
            (other, self)
        };
        for (ma, ca) in &small.terms {
            for (mb, cb) in &large.terms {
                let m = ma.mul(mb);
                if !keep(&m) {
                    continue;
                }
                out.add_term(m, self.domain.mul(ca, cb));
            }
            if out.len() > cap {
                return Err(Error::ExpansionTooLarge { cap });
            }
        }
        Ok(out)
    }

    pub fn pow(&self, e: u32, cap: usize) -> Result<Polynomial> {
        let mut acc = Polynomial::one(self.domain, self.nvars);
        let mut base = self.clone();
        let mut e = e;
        while e > 0 {
            if e & 1 == 1 {
                acc = acc.mul_capped(&base, cap)?;
            }
            e >>= 1;
            if e > 0 {
                base = base.mul_capped(&base, cap)?;
            }
        }
        Ok(acc)
    }

    /// Minimal monomial of the support under `order`.
    pub fn trailing_monomial(&self, order: MonomialOrder) -> Result<Monomial> {
        match order {
            MonomialOrder::GradedLex => self.terms.keys().next().cloned(),
            MonomialOrder::Lex => self.terms.keys().min_by(|a, b| a.cmp_lex(b)).cloned(),
        }
        .ok_or(Error::ZeroPolynomial)
    }

    /// Maximal monomial of the support under `order`.
    pub fn leading_monomial(&self, order: MonomialOrder) -> Result<Monomial> {
        match order {
            MonomialOrder::GradedLex => self.terms.keys().next_back().cloned(),
            MonomialOrder::Lex => self.terms.keys().max_by(|a, b| a.cmp_lex(b)).cloned(),
        }
        .ok_or(Error::ZeroPolynomial)
    }

    pub fn leading_coeff(&self) -> Option<Coeff> {
        self.terms.values().next_back().cloned()
    }

    /// `h^i[P]`: the degree-`i` part.
    pub fn homogeneous_component(&self, i: u32) -> Polynomial {
        self.filter_terms(|m| m.degree() == i)
    }

    /// `h^{<=i}[P]`.
    pub fn truncate(&self, i: u32) -> Polynomial {
        self.filter_terms(|m| m.degree() <= i)
    }

    /// `h^{>=i}[P]`.
    pub fn components_from(&self, i: u32) -> Polynomial {
        self.filter_terms(|m| m.degree() >= i)
    }

    /// `h[P] = (h^d[P], ..., h^0[P])` with `d = deg P`; empty for zero.
    pub fn homogeneous_components(&self) -> Vec<Polynomial> {
        match self.degree() {
            None => Vec::new(),
            Some(d) => (0..=d).rev().map(|i| self.homogeneous_component(i)).collect(),
        }
    }

    pub fn filter_terms(&self, keep: impl Fn(&Monomial) -> bool) -> Polynomial {
        Polynomial {
            domain: self.domain,
            nvars: self.nvars,
            terms: self
                .terms
                .iter()
                .filter(|(m, _)| keep(m))
                .map(|(m, c)| (m.clone(), c.clone()))
                .collect(),
        }
    }

    /// `mult[P]`: keeps exactly the multilinear terms.
    pub fn multilinear_project(&self) -> Polynomial {
        self.filter_terms(Monomial::is_multilinear)
    }

    /// Iterated formal derivative `d^|g| P / d g`.
    pub fn partial_derivative(&self, gamma: &Monomial) -> Polynomial {
        let d = self.domain;
        let mut out = Polynomial::zero(d, self.nvars);
        for (m, c) in &self.terms {
            let Some(q) = gamma.quotient_of(m) else {
                continue;
            };
            let mut coeff = c.clone();
            for (v, k) in gamma.pairs() {
                let e = m.exponent(v);
                for j in 0..k {
                    coeff = d.scale_u64(&coeff, (e - j) as u64);
                }
            }
            out.add_term(q, coeff);
        }
        out
    }

    pub fn derivative(&self, v: usize) -> Polynomial {
        self.partial_derivative(&Monomial::var(v))
    }

    /// Multiplies each degree-`j` term by `z^j`, i.e. substitutes `X -> z X`.
    pub fn scale_variables(&self, z: &Coeff) -> Polynomial {
        let d = self.domain;
        let mut out = Polynomial::zero(d, self.nvars);
        for (m, c) in &self.terms {
            out.add_term(m.clone(), d.mul(c, &d.pow(z, m.degree() as u64)));
        }
        out
    }

    /// `P(X + a)`, one variable at a time.
    pub fn translate(&self, a: &[Coeff]) -> Result<Polynomial> {
        if a.len() != self.nvars {
            return Err(Error::DimensionMismatch {
                expected: self.nvars,
                found: a.len(),
            });
        }
        let d = self.domain;
        let mut cur = self.clone();
        for (v, shift) in a.iter().enumerate() {
            if d.is_zero(shift) {
                continue;
            }
            let mut next = Polynomial::zero(d, self.nvars);
            for (m, c) in &cur.terms {
                let e = m.exponent(v);
                if e == 0 {
                    next.add_term(m.clone(), c.clone());
                    continue;
                }
                let rest = Monomial::from_pairs(m.pairs().filter(|&(w, _)| w != v));
                // (x + s)^e = sum_k C(e,k) s^(e-k) x^k
                let binom = pascal_row(d, e);
                for (k, b) in binom.iter().enumerate() {
                    let coeff = d.mul(&d.mul(c, b), &d.pow(shift, (e as u64) - k as u64));
                    next.add_term(rest.mul(&Monomial::var_pow(v, k as u32)), coeff);
                }
            }
            cur = next;
        }
        Ok(cur)
    }

    pub fn evaluate(&self, x: &[Coeff]) -> Result<Coeff> {
        if x.len() != self.nvars {
            return Err(Error::DimensionMismatch {
                expected: self.nvars,
                found: x.len(),
            });
        }
        let d = self.domain;
        let mut acc = d.zero();
        for (m, c) in &self.terms {
            let mut t = c.clone();
            for (v, e) in m.pairs() {
                t = d.mul(&t, &d.pow(&x[v], e as u64));
                if d.is_zero(&t) {
                    break;
                }
            }
            acc = d.add(&acc, &t);
        }
        Ok(acc)
    }

    /// `F(Q_1, ..., Q_t)` for `F = self` in `t` variables, fully expanded.
    pub fn compose(&self, args: &[Polynomial], cap: usize) -> Result<Polynomial> {
        self.compose_inner(args, cap, None)
    }

    /// `h^{<=max_degree}[F(Q_1, ..., Q_t)]`, truncating every intermediate product.
    pub fn compose_truncated(&self, args: &[Polynomial], max_degree: u32) -> Result<Polynomial> {
        self.compose_inner(args, usize::MAX, Some(max_degree))
    }

    fn compose_inner(
        &self,
        args: &[Polynomial],
        cap: usize,
        max_degree: Option<u32>,
    ) -> Result<Polynomial> {
        if self.nvars != args.len() {
            return Err(Error::ArityMismatch {
                expected: self.nvars,
                found: args.len(),
            });
        }
        for q in args {
            q.ensure_domain(self.domain)?;
        }
        let nvars = args.iter().map(Polynomial::nvars).max().unwrap_or(0);
        let d = self.domain;
        let mul = |a: &Polynomial, b: &Polynomial| -> Result<Polynomial> {
            match max_degree {
                Some(t) => Ok(a.mul_truncated(b, t)),
                None => a.mul_capped(b, cap),
            }
        };
        // powers[j][e] = Q_j^e, filled on demand
        let mut powers: Vec<Vec<Polynomial>> = args
            .iter()
            .map(|_| vec![Polynomial::one(d, nvars)])
            .collect();
        let mut out = Polynomial::zero(d, nvars);
        for (m, c) in &self.terms {
            let mut t = Polynomial::constant(d, nvars, c.clone());
            for (v, e) in m.pairs() {
                while powers[v].len() <= e as usize {
                    let last = powers[v].last().unwrap();
                    let next = mul(last, &args[v])?;
                    powers[v].push(next);
                }
                t = mul(&t, &powers[v][e as usize])?;
            }
            for (tm, tc) in t.terms {
                out.add_term(tm, tc);
            }
            if out.len() > cap {
                return Err(Error::ExpansionTooLarge { cap });
            }
        }
        out.nvars = nvars;
        Ok(out)
    }

    /// Exact quotient `self / divisor` when it exists in the polynomial ring.
    pub fn div_exact(&self, divisor: &Polynomial) -> Option<Polynomial> {
        self.check_domain(divisor);
        let d = self.domain;
        let (lm_d, lc_d) = divisor.terms.iter().next_back()?;
        let lc_inv = d.inv(lc_d)?;
        let mut rem = self.clone();
        let mut quot = Polynomial::zero(d, self.nvars.max(divisor.nvars));
        while let Some((lm_r, lc_r)) = rem.terms.iter().next_back() {
            let m = lm_d.quotient_of(lm_r)?;
            let c = d.mul(lc_r, &lc_inv);
            let step = Polynomial::monomial(d, quot.nvars, c, m);
            rem = rem.sub(&step.mul(divisor));
            quot = quot.add(&step);
        }
        Some(quot)
    }

    /// Image in `F_p`; `None` if some denominator vanishes mod `p`.
    pub fn reduce_mod(&self, p: u64) -> Option<Polynomial> {
        let target = Domain::Prime(p);
        let mut out = Polynomial::zero(target, self.nvars);
        for (m, c) in &self.terms {
            let c = match c {
                Coeff::Mod(v) => Coeff::Mod(v % p),
                Coeff::Rat(r) => target.from_rational(r)?,
            };
            out.add_term(m.clone(), c);
        }
        Some(out)
    }

    /// Sets every variable outside `alive` to zero.
    pub fn restrict(&self, alive: impl Fn(usize) -> bool) -> Polynomial {
        self.filter_terms(|m| m.support().all(&alive))
    }

    /// Renames variables through `f`, producing a polynomial in `nvars` variables.
    pub fn rename_vars(&self, nvars: usize, f: impl Fn(usize) -> usize) -> Polynomial {
        let mut out = Polynomial::zero(self.domain, nvars);
        for (m, c) in &self.terms {
            out.add_term(m.rename(&f), c.clone());
        }
        out
    }

    /// Canonical text with a custom variable prefix.
    pub fn to_text(&self, prefix: &str) -> String {
        text::format(self, prefix)
    }

    /// Parses the text form (`3*x1^2 - x2 + 1/2`, parentheses and powers allowed).
    ///
    /// `nvars = None` infers the count from the largest variable index.
    pub fn parse(domain: Domain, nvars: Option<usize>, src: &str) -> Result<Polynomial> {
        text::parse(domain, nvars, src)
    }
}

impl fmt::Display for Polynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.to_text("x"))
    }
}

/// Binomial coefficients `C(e, 0..=e)` built by additions only.
fn pascal_row(d: Domain, e: u32) -> Vec<Coeff> {
    let mut row = vec![d.one()];
    for _ in 0..e {
        let mut next = Vec::with_capacity(row.len() + 1);
        next.push(d.one());
        for w in row.windows(2) {
            next.push(d.add(&w[0], &w[1]));
        }
        next.push(d.one());
        row = next;
    }
    row
}

#[cfg(test)]
mod tests {
    use super::*;

    fn q() -> Domain {
        Domain::rational()
    }

    fn p(s: &str) -> Polynomial {
        Polynomial::parse(q(), None, s).unwrap()
    }

    fn pn(n: usize, s: &str) -> Polynomial {
        Polynomial::parse(q(), Some(n), s).unwrap()
    }

    #[test]
    fn trailing_monomial_examples() {
        let t = p("x1^2 + x1*x2").trailing_monomial(MonomialOrder::GradedLex).unwrap();
        assert_eq!(t.to_string(), "x1*x2");
        let t = p("1 + x1").trailing_monomial(MonomialOrder::GradedLex).unwrap();
        assert!(t.is_one());
        let t = p("x1^3*x2 + x1*x2^3 + x2")
            .trailing_monomial(MonomialOrder::GradedLex)
            .unwrap();
        assert_eq!(t.to_string(), "x2");
        assert_eq!(
            Polynomial::zero(q(), 2).trailing_monomial(MonomialOrder::Lex),
            Err(Error::ZeroPolynomial)
        );
        // lex puts x2^5 below x1
        let t = p("x1 + x2^5").trailing_monomial(MonomialOrder::Lex).unwrap();
        assert_eq!(t.to_string(), "x2^5");
    }

    #[test]
    fn homogeneous_component_examples() {
        assert_eq!(p("1 + x1 + x1^2").homogeneous_component(1), p("x1"));
        assert_eq!(p("(x1+1)^3").homogeneous_component(2), p("3*x1^2"));
        assert!(p("x1").homogeneous_component(7).is_zero());
        let parts = p("(x1+1)^3").homogeneous_components();
        assert_eq!(parts.len(), 4);
        assert_eq!(parts[0], p("x1^3"));
        assert_eq!(parts[3], pn(1, "1"));
        assert_eq!(p("(x1+x2+1)^2").truncate(1), p("1 + 2*x1 + 2*x2"));
        assert_eq!(p("(x1+1)^2").components_from(1), p("x1^2 + 2*x1"));
    }

    #[test]
    fn translate_examples() {
        let a = |v: &[i64]| v.iter().map(|&x| q().from_i64(x)).collect::<Vec<_>>();
        assert_eq!(p("x1^2").translate(&a(&[1])).unwrap(), p("x1^2 + 2*x1 + 1"));
        let f = p("x1*x2 + 3");
        assert_eq!(f.translate(&a(&[0, 0])).unwrap(), f);
        assert_eq!(
            p("x1*x2").translate(&a(&[1, 2])).unwrap(),
            p("x1*x2 + 2*x1 + x2 + 2")
        );
        assert_eq!(
            p("x1*x2").translate(&a(&[1])),
            Err(Error::DimensionMismatch {
                expected: 2,
                found: 1
            })
        );
    }

    #[test]
    fn derivative_examples() {
        assert_eq!(p("x1*x2").partial_derivative(&Monomial::var(0)), p("x2").with_nvars(2));
        assert_eq!(p("x1^3").partial_derivative(&Monomial::var_pow(0, 2)), p("6*x1"));
        assert!(p("x1^2").partial_derivative(&Monomial::var_pow(0, 3)).is_zero());
        // mod 3 the second derivative of x^3 vanishes
        let f3 = Domain::prime(3).unwrap();
        let cube = Polynomial::parse(f3, None, "x1^3").unwrap();
        assert!(cube.partial_derivative(&Monomial::var_pow(0, 1)).is_zero());
    }

    #[test]
    fn multilinear_projection_examples() {
        assert_eq!(p("x1^2*x2 + x1*x2").multilinear_project(), p("x1*x2"));
        let ml = p("x1*x2 + x3 + 1");
        assert_eq!(ml.multilinear_project(), ml);
        assert!(p("x1^2 + x2^2").multilinear_project().is_zero());
    }

    #[test]
    fn compose_examples() {
        let f = p("z1^2 - 2*z2");
        let args = [p("x1 + x2"), p("x1*x2")];
        assert_eq!(f.compose(&args, DEFAULT_TERM_CAP).unwrap(), p("x1^2 + x2^2"));
        let proj = pn(2, "z1");
        assert_eq!(proj.compose(&args, DEFAULT_TERM_CAP).unwrap(), args[0]);
        let ann = p("z2 - z1^2");
        assert!(ann
            .compose(&[p("x1"), p("x1^2")], DEFAULT_TERM_CAP)
            .unwrap()
            .is_zero());
        assert!(matches!(
            f.compose(&args[..1], DEFAULT_TERM_CAP),
            Err(Error::ArityMismatch { .. })
        ));
        let big = pn(1, "z1^6");
        assert_eq!(
            big.compose(&[p("x1+x2+x3+x4")], 20),
            Err(Error::ExpansionTooLarge { cap: 20 })
        );
    }

    #[test]
    fn evaluate_examples() {
        let x = |v: &[i64], d: Domain| v.iter().map(|&t| d.from_i64(t)).collect::<Vec<_>>();
        assert_eq!(p("x1 + x2").evaluate(&x(&[1, 2], q())).unwrap(), q().from_i64(3));
        let f = p("x1^2*x2 + 5");
        assert_eq!(f.evaluate(&x(&[0, 0], q())).unwrap(), f.constant_term());
        let f11 = Domain::prime(11).unwrap();
        let g = Polynomial::parse(f11, None, "x1*x2 - 1").unwrap();
        assert_eq!(g.evaluate(&x(&[3, 4], f11)).unwrap(), f11.zero());
    }

    #[test]
    fn exact_division() {
        let a = p("x1^2 - x2^2");
        assert_eq!(a.div_exact(&p("x1 - x2")).unwrap(), p("x1 + x2"));
        assert!(p("x1^2 + 1").div_exact(&p("x1 - 1")).is_none());
    }
}
