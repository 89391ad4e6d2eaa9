use std::sync::Arc;

use super::dependence::{dependent_annihilators, is_good_translation, sample_with};
use super::{algebraic_rank, reconstruct_dependence, DependenceWitness, RankMode, TranslationSampler};
use crate::circuit::{Circuit, Declared, Gate, Node, Outer, OuterExpr};
use crate::error::{Error, Result};
use crate::field::Coeff;
use crate::poly::{Monomial, Polynomial};

/// A rewritten circuit with `expand(circuit)(X) = expand(original)(X + a)`.
#[derive(Clone, Debug)]
pub struct Rewrite {
    pub circuit: Circuit,
    pub a: Vec<Coeff>,
    pub attempts: u32,
    pub witnesses: Vec<DependenceWitness>,
}

/// Moves every gate onto the homogeneous components of a transcendence basis
/// of its inputs, under one translation shared by all gates.
///
/// Gate `i` gets the inner list `{h^j[Q_b(X + a)] : b in B_i, 0 <= j <= deg Q_b}`;
/// its outer function rebuilds each basis input as the sum of its components
/// and each dependent input as `F_i` applied to those sums, keeping only
/// products of components whose degrees add up to at most `deg Q_i`.
pub fn rewrite_circuit(c: &Circuit, seed: u64) -> Result<Rewrite> {
    let domain = c.domain();
    let n = c.nvars();
    let declared = c.declared();
    let mut plans = Vec::with_capacity(c.top_fan_in());
    for (gi, g) in c.gates().iter().enumerate() {
        let cert = algebraic_rank(&g.inner, RankMode::randomized(seed ^ gi as u64))?;
        if cert.rank > declared.k as usize {
            return Err(Error::BoundViolation {
                gate: gi,
                bound: "k",
                declared: declared.k as u64,
                actual: cert.rank as u64,
            });
        }
        let anns = dependent_annihilators(&g.inner, &cert.basis_indices)?;
        plans.push((cert.basis_indices, anns));
    }
    let pairs: usize = plans.iter().map(|(_, anns)| anns.len()).sum();
    let kmax = plans.iter().map(|(b, _)| b.len()).max().unwrap_or(0);
    let sampler = TranslationSampler::new(pairs.max(1), kmax, declared.d, seed);
    let tr = sample_with(domain, n, &sampler, |a| {
        for (g, (basis, anns)) in c.gates().iter().zip(&plans) {
            if !is_good_translation(&g.inner, basis, anns, a)? {
                return Ok(false);
            }
        }
        Ok(true)
    })?;
    let a = tr.point;

    let mut gates = Vec::with_capacity(c.top_fan_in());
    let mut witnesses = Vec::with_capacity(c.top_fan_in());
    for (g, (basis, _)) in c.gates().iter().zip(&plans) {
        let w = reconstruct_dependence(&g.inner, basis, &a, None)?;
        gates.push(rewrite_gate(g, basis, &w, &a)?);
        witnesses.push(w);
    }
    let declared = Declared {
        k: declared.k * (declared.d + 1),
        ..declared
    };
    Ok(Rewrite {
        circuit: Circuit::new(domain, n, gates, declared)?,
        a,
        attempts: tr.attempts,
        witnesses,
    })
}

fn rewrite_gate(g: &Gate, basis: &[usize], w: &DependenceWitness, a: &[Coeff]) -> Result<Gate> {
    let mut inner = Vec::new();
    let mut weights = Vec::new();
    let mut groups: Vec<Vec<usize>> = Vec::new();
    for &b in basis {
        let shifted = g.inner[b].translate(a)?;
        let mut group = Vec::new();
        for j in 0..=shifted.total_degree() {
            group.push(inner.len());
            inner.push(shifted.homogeneous_component(j));
            weights.push(j);
        }
        groups.push(group);
    }
    let m = inner.len();
    let domain = g.inner[0].domain();

    let mut nodes: Vec<Node> = (0..m).map(Node::Input).collect();
    let mut sums = Vec::with_capacity(groups.len());
    for group in &groups {
        nodes.push(Node::Add(group.clone()));
        sums.push(nodes.len() - 1);
    }
    // Z_b -> sum_j W_{b,j} as polynomials in the m component variables
    let subs: Vec<Polynomial> = groups
        .iter()
        .map(|group| {
            Polynomial::from_terms(domain, m, group.iter().map(|&v| (Monomial::var(v), domain.one())))
        })
        .collect();
    let mut args = Vec::with_capacity(g.inner.len());
    for i in 0..g.inner.len() {
        if let Some(pos) = basis.iter().position(|&b| b == i) {
            args.push(sums[pos]);
            continue;
        }
        let f = weighted_substitution(&w.f[&i], &subs, &weights, w.truncation_degrees[&i]).with_nvars(m);
        nodes.push(Node::Compose {
            expr: Arc::new(OuterExpr::from_polynomial(&f)),
            args: (0..m).collect(),
        });
        args.push(nodes.len() - 1);
    }
    match &g.outer {
        Outer::Product => nodes.push(Node::Mul(args)),
        Outer::General(e) => nodes.push(Node::Compose {
            expr: Arc::new(e.clone()),
            args,
        }),
    }
    let out = nodes.len() - 1;
    Ok(Gate {
        outer: Outer::General(OuterExpr::new(m, nodes, out)?),
        inner,
        rank_bound: Some(m as u32),
    })
}

fn weight(m: &Monomial, weights: &[u32]) -> u32 {
    m.pairs().map(|(v, e)| weights[v] * e).sum()
}

/// `F(subs)` keeping only monomials of weighted degree at most `max`.
fn weighted_substitution(f: &Polynomial, subs: &[Polynomial], weights: &[u32], max: u32) -> Polynomial {
    let domain = f.domain();
    let nv = weights.len();
    let mul = |x: &Polynomial, y: &Polynomial| x.mul(y).filter_terms(|m| weight(m, weights) <= max);
    let mut out = Polynomial::zero(domain, nv);
    for (mono, c) in f.terms() {
        let mut t = Polynomial::constant(domain, nv, c.clone());
        for (v, e) in mono.pairs() {
            for _ in 0..e {
                t = mul(&t, &subs[v]);
            }
        }
        out = out.add(&t);
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::field::Domain;
    use crate::poly::DEFAULT_TERM_CAP;

    fn check(c: &Circuit, seed: u64) -> Rewrite {
        let r = rewrite_circuit(c, seed).unwrap();
        let lhs = r.circuit.expand(DEFAULT_TERM_CAP).unwrap();
        let rhs = c.expand(DEFAULT_TERM_CAP).unwrap().translate(&r.a).unwrap();
        assert_eq!(lhs, rhs);
        let d = c.declared();
        for g in r.circuit.gates() {
            assert!(g.inner.len() <= (d.k * (d.d + 1)) as usize);
        }
        r
    }

    #[test]
    fn sum_over_a_square() {
        let q = Domain::rational();
        let sum = OuterExpr::from_polynomial(&Polynomial::parse(q, Some(2), "z1 + z2").unwrap());
        let inner = vec![
            Polynomial::parse(q, Some(1), "x1").unwrap(),
            Polynomial::parse(q, Some(1), "x1^2").unwrap(),
        ];
        let c = Circuit::new(q, 1, vec![Gate::general(sum, inner)], Declared { d: 2, k: 1, delta: 2 }).unwrap();
        let r = check(&c, 1);
        assert_eq!(r.circuit.gates()[0].inner.len(), 2);
    }

    #[test]
    fn mixed_gates_share_one_translation() {
        let q = Domain::rational();
        let p = |s: &str| Polynomial::parse(q, Some(2), s).unwrap();
        let e1 = vec![p("x1 + x2"), p("x1*x2"), p("x1^2 + x2^2")];
        let e2 = vec![p("x1^2"), p("x1")];
        let c = Circuit::new(
            q,
            2,
            vec![Gate::product(e1), Gate::product(e2)],
            Declared { d: 2, k: 2, delta: 5 },
        )
        .unwrap();
        let r = check(&c, 9);
        assert!(r.attempts > 1, "origin is bad for the second gate");
    }

    #[test]
    fn full_rank_gates_are_only_componentized() {
        let q = Domain::rational();
        let p = |s: &str| Polynomial::parse(q, Some(2), s).unwrap();
        let c = Circuit::new(
            q,
            2,
            vec![Gate::product(vec![p("x1 + 1"), p("x2^2 - x1")])],
            Declared { d: 2, k: 2, delta: 3 },
        )
        .unwrap();
        let r = check(&c, 0);
        assert_eq!(r.circuit.gates()[0].inner.len(), 5);
        assert!(r.witnesses[0].f.is_empty());
    }
}
