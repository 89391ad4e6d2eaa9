//! Depth-4 circuits `C = sum_i Gamma_i(Q_i1, ..., Q_it)` whose outer
//! functions are either plain products or general expression DAGs over
//! sparse inner polynomials.

mod dag;
mod format;

use std::collections::HashSet;

use serde::{Deserialize, Serialize};

pub use dag::{Node, NodeId, OuterExpr};
pub use format::CircuitFile;

use crate::error::{Error, Result};
use crate::field::{Coeff, Domain};
use crate::linalg;
use crate::poly::{Monomial, Polynomial};

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Outer {
    Product,
    General(OuterExpr),
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Gate {
    pub outer: Outer,
    pub inner: Vec<Polynomial>,
    pub rank_bound: Option<u32>,
}

impl Gate {
    pub fn product(inner: Vec<Polynomial>) -> Self {
        Gate {
            outer: Outer::Product,
            inner,
            rank_bound: None,
        }
    }

    pub fn general(outer: OuterExpr, inner: Vec<Polynomial>) -> Self {
        Gate {
            outer: Outer::General(outer),
            inner,
            rank_bound: None,
        }
    }

    pub fn formal_degree(&self) -> u64 {
        let degs: Vec<u32> = self.inner.iter().map(Polynomial::total_degree).collect();
        match &self.outer {
            Outer::Product => degs.iter().map(|&d| d as u64).sum(),
            Outer::General(e) => e.formal_degree(&degs),
        }
    }

    pub fn evaluate(&self, domain: Domain, x: &[Coeff]) -> Result<Coeff> {
        let vals = self
            .inner
            .iter()
            .map(|q| q.evaluate(x))
            .collect::<Result<Vec<_>>>()?;
        self.apply_outer(domain, &vals)
    }

    /// Outer function applied to already-evaluated inner values.
    pub fn apply_outer(&self, domain: Domain, vals: &[Coeff]) -> Result<Coeff> {
        match &self.outer {
            Outer::Product => Ok(vals.iter().fold(domain.one(), |acc, v| domain.mul(&acc, v))),
            Outer::General(e) => e.evaluate(domain, vals),
        }
    }

    pub fn expand(&self, domain: Domain, nvars: usize, cap: usize) -> Result<Polynomial> {
        match &self.outer {
            Outer::Product => {
                let mut acc = Polynomial::one(domain, nvars);
                for q in &self.inner {
                    acc = acc.mul_capped(q, cap)?;
                }
                Ok(acc)
            }
            Outer::General(e) => e.expand(&self.inner, domain, nvars, cap),
        }
    }
}

/// Bounds a circuit file declares about itself.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Declared {
    /// Maximum inner degree.
    pub d: u32,
    /// Per-gate algebraic rank bound.
    pub k: u32,
    /// Formal degree bound.
    pub delta: u32,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Circuit {
    domain: Domain,
    nvars: usize,
    gates: Vec<Gate>,
    declared: Declared,
}

impl Circuit {
    /// Builds and validates: inner degrees against `d`, formal degrees against `delta`.
    pub fn new(domain: Domain, nvars: usize, gates: Vec<Gate>, declared: Declared) -> Result<Self> {
        for (gi, g) in gates.iter().enumerate() {
            if g.inner.is_empty() {
                return Err(Error::InvalidParams(format!("gate {gi} has no inner polynomials")));
            }
            if let Outer::General(e) = &g.outer {
                if e.arity() != g.inner.len() {
                    return Err(Error::ArityMismatch {
                        expected: e.arity(),
                        found: g.inner.len(),
                    });
                }
            }
            for q in &g.inner {
                q.ensure_domain(domain)?;
                if q.nvars() > nvars {
                    return Err(Error::DimensionMismatch {
                        expected: nvars,
                        found: q.nvars(),
                    });
                }
                let deg = q.total_degree();
                if deg > declared.d {
                    return Err(Error::BoundViolation {
                        gate: gi,
                        bound: "d",
                        declared: declared.d as u64,
                        actual: deg as u64,
                    });
                }
            }
            let fd = g.formal_degree();
            if fd > declared.delta as u64 {
                return Err(Error::BoundViolation {
                    gate: gi,
                    bound: "delta",
                    declared: declared.delta as u64,
                    actual: fd,
                });
            }
            if let Some(k) = g.rank_bound {
                if k > declared.k {
                    return Err(Error::BoundViolation {
                        gate: gi,
                        bound: "k",
                        declared: declared.k as u64,
                        actual: k as u64,
                    });
                }
            }
        }
        let gates = gates
            .into_iter()
            .map(|mut g| {
                g.inner = g.inner.into_iter().map(|q| q.with_nvars(nvars)).collect();
                g
            })
            .collect();
        Ok(Circuit {
            domain,
            nvars,
            gates,
            declared,
        })
    }

    pub fn domain(&self) -> Domain {
        self.domain
    }

    pub fn nvars(&self) -> usize {
        self.nvars
    }

    pub fn gates(&self) -> &[Gate] {
        &self.gates
    }

    pub fn declared(&self) -> Declared {
        self.declared
    }

    /// Top fan-in `T`.
    pub fn top_fan_in(&self) -> usize {
        self.gates.len()
    }

    /// `max(T, |union of inner monomial supports|)`; outer functions count for nothing.
    pub fn size(&self) -> usize {
        let monos: HashSet<&Monomial> = self
            .gates
            .iter()
            .flat_map(|g| g.inner.iter())
            .flat_map(|q| q.monomials())
            .collect();
        self.gates.len().max(monos.len())
    }

    /// Evaluates without expanding.
    pub fn evaluate(&self, x: &[Coeff]) -> Result<Coeff> {
        if x.len() != self.nvars {
            return Err(Error::DimensionMismatch {
                expected: self.nvars,
                found: x.len(),
            });
        }
        let mut acc = self.domain.zero();
        for g in &self.gates {
            acc = self.domain.add(&acc, &g.evaluate(self.domain, x)?);
        }
        Ok(acc)
    }

    /// The computed polynomial, fully expanded.
    pub fn expand(&self, cap: usize) -> Result<Polynomial> {
        let mut acc = Polynomial::zero(self.domain, self.nvars);
        for g in &self.gates {
            acc = acc.add(&g.expand(self.domain, self.nvars, cap)?);
            if acc.len() > cap {
                return Err(Error::ExpansionTooLarge { cap });
            }
        }
        Ok(acc)
    }

    /// The `Delta + 1` interpolation nodes: `1..=Delta+1` over Q, `0..=Delta` over F_p.
    pub fn interpolation_nodes(&self) -> Result<Vec<Coeff>> {
        let count = self.declared.delta as u64 + 1;
        if !self.domain.has_at_least(count) {
            return Err(Error::InsufficientField { needed: count });
        }
        let offset = match self.domain {
            Domain::Rational => 1,
            Domain::Prime(_) => 0,
        };
        Ok((0..count).map(|i| self.domain.scalar(i + offset)).collect())
    }

    /// A circuit for `h^l[C]` with top fan-in `(Delta + 1) * T`.
    ///
    /// Substitutes `X -> z X` for each interpolation node `z` and combines the
    /// copies with the row of the inverse Vandermonde matrix that isolates `Z^l`.
    /// Inner polynomials only get rescaled, so `d` and per-gate ranks carry over.
    pub fn homogeneous_component_circuit(&self, l: u32) -> Result<Circuit> {
        let d = self.domain;
        let nodes = self.interpolation_nodes()?;
        let n = nodes.len();
        let weights = if (l as usize) < n {
            // sum_i w_i z_i^j = [j == l] for j = 0..=Delta
            let a: Vec<Vec<Coeff>> = (0..n)
                .map(|j| nodes.iter().map(|z| d.pow(z, j as u64)).collect())
                .collect();
            let b: Vec<Coeff> = (0..n).map(|j| if j == l as usize { d.one() } else { d.zero() }).collect();
            linalg::solve(d, &a, &b, n).expect("Vandermonde system on distinct nodes is invertible")
        } else {
            vec![d.zero(); n]
        };
        let mut gates = Vec::with_capacity(n * self.gates.len());
        for g in &self.gates {
            for (z, w) in nodes.iter().zip(&weights) {
                let mut inner: Vec<Polynomial> = g.inner.iter().map(|q| q.scale_variables(z)).collect();
                let outer = match &g.outer {
                    Outer::Product => {
                        inner[0] = inner[0].scale(w);
                        Outer::Product
                    }
                    Outer::General(e) => Outer::General(e.scaled(w.clone())),
                };
                gates.push(Gate {
                    outer,
                    inner,
                    rank_bound: g.rank_bound,
                });
            }
        }
        Circuit::new(d, self.nvars, gates, self.declared)
    }

    /// Parses the JSON circuit format.
    pub fn from_json(text: &str) -> Result<Self> {
        CircuitFile::parse(text)?.to_circuit()
    }

    /// Canonical pretty-printed JSON, newline-terminated.
    pub fn to_json(&self) -> String {
        CircuitFile::from_circuit(self).to_canonical_string()
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::poly::DEFAULT_TERM_CAP;

    fn q() -> Domain {
        Domain::rational()
    }

    fn p(n: usize, s: &str) -> Polynomial {
        Polynomial::parse(q(), Some(n), s).unwrap()
    }

    fn decl(d: u32, k: u32, delta: u32) -> Declared {
        Declared { d, k, delta }
    }

    #[test]
    fn size_counts_monomial_union() {
        let c = Circuit::new(q(), 2, vec![Gate::product(vec![p(2, "x1 + x2"), p(2, "x1*x2")])], decl(2, 2, 3))
            .unwrap();
        assert_eq!(c.size(), 3);
        let gates = (0..5).map(|_| Gate::product(vec![p(1, "x1")])).collect();
        let c = Circuit::new(q(), 1, gates, decl(1, 1, 1)).unwrap();
        assert_eq!(c.size(), 5);
        let shared = vec![
            Gate::product(vec![p(2, "x1 + x1*x2")]),
            Gate::product(vec![p(2, "3*x1 - x1*x2")]),
        ];
        assert_eq!(Circuit::new(q(), 2, shared, decl(2, 1, 2)).unwrap().size(), 2);
    }

    #[test]
    fn evaluation_examples() {
        let c = Circuit::new(q(), 2, vec![Gate::product(vec![p(2, "x1 + x2"), p(2, "x1 - x2")])], decl(1, 2, 2))
            .unwrap();
        assert_eq!(c.evaluate(&[q().from_i64(3), q().from_i64(1)]).unwrap(), q().from_i64(8));
        let sq = OuterExpr::from_polynomial(&p(1, "z1^2"));
        let c = Circuit::new(q(), 1, vec![Gate::general(sq, vec![p(1, "x1")])], decl(1, 1, 2)).unwrap();
        assert_eq!(c.evaluate(&[q().from_i64(5)]).unwrap(), q().from_i64(25));
        assert!(matches!(c.evaluate(&[]), Err(Error::DimensionMismatch { .. })));
    }

    #[test]
    fn expansion_examples() {
        let zero = Circuit::new(
            q(),
            2,
            vec![
                Gate::product(vec![p(2, "x1 + x2"), p(2, "x1 - x2")]),
                Gate::product(vec![p(2, "-1"), p(2, "x1^2 - x2^2")]),
            ],
            decl(2, 2, 2),
        )
        .unwrap();
        assert!(zero.expand(DEFAULT_TERM_CAP).unwrap().is_zero());
        let gamma = OuterExpr::from_polynomial(&p(2, "z1^2 - 2*z2"));
        let c = Circuit::new(q(), 2, vec![Gate::general(gamma, vec![p(2, "x1 + x2"), p(2, "x1*x2")])], decl(2, 2, 4))
            .unwrap();
        assert_eq!(c.expand(DEFAULT_TERM_CAP).unwrap(), p(2, "x1^2 + x2^2"));
        let empty = Circuit::new(q(), 3, vec![], decl(1, 1, 1)).unwrap();
        assert!(empty.expand(DEFAULT_TERM_CAP).unwrap().is_zero());
    }

    #[test]
    fn bounds_are_validated() {
        let err = Circuit::new(q(), 1, vec![Gate::product(vec![p(1, "x1^2")])], decl(1, 1, 4)).unwrap_err();
        assert_eq!(
            err,
            Error::BoundViolation {
                gate: 0,
                bound: "d",
                declared: 1,
                actual: 2
            }
        );
        let err = Circuit::new(q(), 1, vec![Gate::product(vec![p(1, "x1"), p(1, "x1")])], decl(1, 1, 1)).unwrap_err();
        assert!(matches!(err, Error::BoundViolation { bound: "delta", .. }));
    }

    #[test]
    fn homogeneous_component_examples() {
        // (x + 1)^2 as a product gate
        let c = Circuit::new(q(), 1, vec![Gate::product(vec![p(1, "x1 + 1"), p(1, "x1 + 1")])], decl(1, 1, 2))
            .unwrap();
        let h1 = c.homogeneous_component_circuit(1).unwrap();
        assert_eq!(h1.top_fan_in(), 3);
        assert_eq!(h1.declared(), c.declared());
        assert_eq!(h1.expand(DEFAULT_TERM_CAP).unwrap(), p(1, "2*x1"));
        let h0 = c.homogeneous_component_circuit(0).unwrap();
        assert_eq!(h0.expand(DEFAULT_TERM_CAP).unwrap(), p(1, "1"));
        let h5 = c.homogeneous_component_circuit(5).unwrap();
        assert!(h5.expand(DEFAULT_TERM_CAP).unwrap().is_zero());
        // homogeneous input: the top component is everything
        let hom = Circuit::new(q(), 2, vec![Gate::product(vec![p(2, "x1 + x2"), p(2, "x1 - 3*x2")])], decl(1, 2, 2))
            .unwrap();
        assert_eq!(
            hom.homogeneous_component_circuit(2).unwrap().expand(DEFAULT_TERM_CAP).unwrap(),
            hom.expand(DEFAULT_TERM_CAP).unwrap()
        );
    }

    #[test]
    fn tiny_prime_field_lacks_nodes() {
        let f = Domain::prime(3).unwrap();
        let x = Polynomial::parse(f, Some(1), "x1 + 1").unwrap();
        let c = Circuit::new(f, 1, vec![Gate::product(vec![x.clone(), x.clone(), x])], decl(1, 1, 3)).unwrap();
        assert_eq!(
            c.homogeneous_component_circuit(1).unwrap_err(),
            Error::InsufficientField { needed: 4 }
        );
    }
}
