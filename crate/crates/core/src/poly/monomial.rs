use std::cmp::Ordering;
use std::fmt;

use serde::{Deserialize, Serialize};

/// A power product `x_{v1}^{e1} * ... * x_{vr}^{er}` stored sparsely.
///
/// Variable indices are 0-based internally and printed 1-based. Entries are
/// sorted by variable and never carry a zero exponent.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash)]
pub struct Monomial(Vec<(u32, u32)>);

impl Monomial {
    pub fn one() -> Self {
        Monomial(Vec::new())
    }

    pub fn var(v: usize) -> Self {
        Monomial(vec![(v as u32, 1)])
    }

    pub fn var_pow(v: usize, e: u32) -> Self {
        if e == 0 {
            Monomial::one()
        } else {
            Monomial(vec![(v as u32, e)])
        }
    }

    /// Builds from `(variable, exponent)` pairs in any order; duplicates are summed.
    pub fn from_pairs<I: IntoIterator<Item = (usize, u32)>>(pairs: I) -> Self {
        let mut v: Vec<(u32, u32)> = pairs
            .into_iter()
            .filter(|&(_, e)| e > 0)
            .map(|(var, e)| (var as u32, e))
            .collect();
        v.sort_unstable_by_key(|&(var, _)| var);
        let mut out: Vec<(u32, u32)> = Vec::with_capacity(v.len());
        for (var, e) in v {
            match out.last_mut() {
                Some((lv, le)) if *lv == var => *le += e,
                _ => out.push((var, e)),
            }
        }
        Monomial(out)
    }

    pub fn from_exponents(exps: &[u32]) -> Self {
        Monomial::from_pairs(exps.iter().enumerate().map(|(i, &e)| (i, e)))
    }

    /// Every monomial in `nvars` variables of total degree at most `max_degree`,
    /// in ascending graded-lex order.
    pub fn all_up_to(nvars: usize, max_degree: u32) -> Vec<Monomial> {
        fn rec(v: usize, nvars: usize, left: u32, cur: &mut Vec<u32>, out: &mut Vec<Monomial>) {
            if v == nvars {
                out.push(Monomial::from_exponents(cur));
                return;
            }
            for e in 0..=left {
                cur[v] = e;
                rec(v + 1, nvars, left - e, cur, out);
            }
            cur[v] = 0;
        }
        let mut out = Vec::new();
        rec(0, nvars, max_degree, &mut vec![0; nvars], &mut out);
        out.sort();
        out
    }

    /// Product of distinct variables.
    pub fn multilinear<I: IntoIterator<Item = usize>>(vars: I) -> Self {
        Monomial::from_pairs(vars.into_iter().map(|v| (v, 1)))
    }

    pub fn is_one(&self) -> bool {
        self.0.is_empty()
    }

    pub fn degree(&self) -> u32 {
        self.0.iter().map(|&(_, e)| e).sum()
    }

    pub fn exponent(&self, v: usize) -> u32 {
        self.0
            .binary_search_by_key(&(v as u32), |&(var, _)| var)
            .map(|i| self.0[i].1)
            .unwrap_or(0)
    }

    /// `(variable, exponent)` pairs in increasing variable order.
    pub fn pairs(&self) -> impl Iterator<Item = (usize, u32)> + '_ {
        self.0.iter().map(|&(v, e)| (v as usize, e))
    }

    pub fn support(&self) -> impl Iterator<Item = usize> + '_ {
        self.0.iter().map(|&(v, _)| v as usize)
    }

    pub fn support_size(&self) -> usize {
        self.0.len()
    }

    pub fn max_var(&self) -> Option<usize> {
        self.0.last().map(|&(v, _)| v as usize)
    }

    pub fn is_multilinear(&self) -> bool {
        self.0.iter().all(|&(_, e)| e == 1)
    }

    pub fn mul(&self, other: &Monomial) -> Monomial {
        let (a, b) = (&self.0, &other.0);
        let mut out = Vec::with_capacity(a.len() + b.len());
        let (mut i, mut j) = (0, 0);
        while i < a.len() && j < b.len() {
            match a[i].0.cmp(&b[j].0) {
                Ordering::Less => {
                    out.push(a[i]);
                    i += 1;
                }
                Ordering::Greater => {
                    out.push(b[j]);
                    j += 1;
                }
                Ordering::Equal => {
                    out.push((a[i].0, a[i].1 + b[j].1));
                    i += 1;
                    j += 1;
                }
            }
        }
        out.extend_from_slice(&a[i..]);
        out.extend_from_slice(&b[j..]);
        Monomial(out)
    }

    pub fn pow(&self, e: u32) -> Monomial {
        if e == 0 {
            return Monomial::one();
        }
        Monomial(self.0.iter().map(|&(v, x)| (v, x * e)).collect())
    }

    pub fn divides(&self, other: &Monomial) -> bool {
        self.0.iter().all(|&(v, e)| other.exponent(v as usize) >= e)
    }

    /// `other / self` when `self` divides `other`.
    pub fn quotient_of(&self, other: &Monomial) -> Option<Monomial> {
        if !self.divides(other) {
            return None;
        }
        let out = other
            .0
            .iter()
            .filter_map(|&(v, e)| {
                let r = e - self.exponent(v as usize);
                (r > 0).then_some((v, r))
            })
            .collect();
        Some(Monomial(out))
    }

    /// True when the two monomials share no variable.
    pub fn is_disjoint(&self, other: &Monomial) -> bool {
        let (a, b) = (&self.0, &other.0);
        let (mut i, mut j) = (0, 0);
        while i < a.len() && j < b.len() {
            match a[i].0.cmp(&b[j].0) {
                Ordering::Less => i += 1,
                Ordering::Greater => j += 1,
                Ordering::Equal => return false,
            }
        }
        true
    }

    /// Applies a variable renaming; colliding targets multiply together.
    pub fn rename(&self, f: impl Fn(usize) -> usize) -> Monomial {
        Monomial::from_pairs(self.pairs().map(|(v, e)| (f(v), e)))
    }

    /// Dense exponent vector of length `nvars`.
    pub fn to_exponents(&self, nvars: usize) -> Vec<u32> {
        let mut out = vec![0; nvars];
        for (v, e) in self.pairs() {
            if v < nvars {
                out[v] = e;
            }
        }
        out
    }

    /// Lexicographic comparison with `X_1 > X_2 > ...`.
    pub fn cmp_lex(&self, other: &Monomial) -> Ordering {
        let (a, b) = (&self.0, &other.0);
        let (mut i, mut j) = (0, 0);
        loop {
            match (a.get(i), b.get(j)) {
                (None, None) => return Ordering::Equal,
                (Some(_), None) => return Ordering::Greater,
                (None, Some(_)) => return Ordering::Less,
                (Some(&(va, ea)), Some(&(vb, eb))) => {
                    if va < vb {
                        return Ordering::Greater;
                    }
                    if vb < va {
                        return Ordering::Less;
                    }
                    if ea != eb {
                        return ea.cmp(&eb);
                    }
                    i += 1;
                    j += 1;
                }
            }
        }
    }

    pub fn cmp_grlex(&self, other: &Monomial) -> Ordering {
        self.degree()
            .cmp(&other.degree())
            .then_with(|| self.cmp_lex(other))
    }

    /// Text form with a custom variable prefix, e.g. `z1^2*z3`.
    pub fn to_text(&self, prefix: &str) -> String {
        if self.is_one() {
            return "1".to_string();
        }
        let parts: Vec<String> = self
            .pairs()
            .map(|(v, e)| {
                if e == 1 {
                    format!("{prefix}{}", v + 1)
                } else {
                    format!("{prefix}{}^{e}", v + 1)
                }
            })
            .collect();
        parts.join("*")
    }
}

/// The default order on monomials is graded-lex.
impl Ord for Monomial {
    fn cmp(&self, other: &Self) -> Ordering {
        self.cmp_grlex(other)
    }
}

impl PartialOrd for Monomial {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl fmt::Display for Monomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.to_text("x"))
    }
}

/// A multiplicative monomial order with `X_1 > X_2 > ...`.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum MonomialOrder {
    #[default]
    GradedLex,
    Lex,
}

impl MonomialOrder {
    pub fn cmp(&self, a: &Monomial, b: &Monomial) -> Ordering {
        match self {
            MonomialOrder::GradedLex => a.cmp_grlex(b),
            MonomialOrder::Lex => a.cmp_lex(b),
        }
    }
}
