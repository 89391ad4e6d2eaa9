//! Outer functions of general gates, kept as expression DAGs so that they are
//! evaluated rather than expanded.

use std::sync::Arc;

use crate::error::{Error, Result};
use crate::field::{Coeff, Domain};
use crate::poly::Polynomial;

pub type NodeId = usize;

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Node {
    Input(usize),
    Const(Coeff),
    Add(Vec<NodeId>),
    Mul(Vec<NodeId>),
    Pow(NodeId, u32),
    /// Applies a sub-expression to the values of `args`.
    Compose { expr: Arc<OuterExpr>, args: Vec<NodeId> },
}

/// A DAG over `arity` formal inputs. Nodes only reference earlier nodes.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct OuterExpr {
    arity: usize,
    nodes: Vec<Node>,
    output: NodeId,
}

/// Value semantics for DAG evaluation.
pub(crate) trait DagAlgebra {
    type Value: Clone;
    fn constant(&self, c: &Coeff) -> Self::Value;
    fn add(&self, a: &Self::Value, b: &Self::Value) -> Result<Self::Value>;
    fn mul(&self, a: &Self::Value, b: &Self::Value) -> Result<Self::Value>;
    fn zero(&self) -> Self::Value;
    fn one(&self) -> Self::Value;
}

pub(crate) struct Scalars(pub Domain);

impl DagAlgebra for Scalars {
    type Value = Coeff;
    fn constant(&self, c: &Coeff) -> Coeff {
        c.clone()
    }
    fn add(&self, a: &Coeff, b: &Coeff) -> Result<Coeff> {
        Ok(self.0.add(a, b))
    }
    fn mul(&self, a: &Coeff, b: &Coeff) -> Result<Coeff> {
        Ok(self.0.mul(a, b))
    }
    fn zero(&self) -> Coeff {
        self.0.zero()
    }
    fn one(&self) -> Coeff {
        self.0.one()
    }
}

pub(crate) struct Polys {
    pub domain: Domain,
    pub nvars: usize,
    pub cap: usize,
}

impl DagAlgebra for Polys {
    type Value = Polynomial;
    fn constant(&self, c: &Coeff) -> Polynomial {
        Polynomial::constant(self.domain, self.nvars, c.clone())
    }
    fn add(&self, a: &Polynomial, b: &Polynomial) -> Result<Polynomial> {
        let s = a.add(b);
        if s.len() > self.cap {
            return Err(Error::ExpansionTooLarge { cap: self.cap });
        }
        Ok(s)
    }
    fn mul(&self, a: &Polynomial, b: &Polynomial) -> Result<Polynomial> {
        a.mul_capped(b, self.cap)
    }
    fn zero(&self) -> Polynomial {
        Polynomial::zero(self.domain, self.nvars)
    }
    fn one(&self) -> Polynomial {
        Polynomial::one(self.domain, self.nvars)
    }
}

/// Formal degrees: `+` takes the max, `*` adds, constants have degree 0.
struct Degrees;

impl DagAlgebra for Degrees {
    type Value = u64;
    fn constant(&self, _: &Coeff) -> u64 {
        0
    }
    fn add(&self, a: &u64, b: &u64) -> Result<u64> {
        Ok(*a.max(b))
    }
    fn mul(&self, a: &u64, b: &u64) -> Result<u64> {
        Ok(a.saturating_add(*b))
    }
    fn zero(&self) -> u64 {
        0
    }
    fn one(&self) -> u64 {
        0
    }
}

impl OuterExpr {
    /// Checks topological order, input indices and composition arities.
    pub fn new(arity: usize, nodes: Vec<Node>, output: NodeId) -> Result<Self> {
        let bad = |msg: String| Error::InvalidParams(format!("outer expression: {msg}"));
        if output >= nodes.len() {
            return Err(bad(format!("output node {output} does not exist")));
        }
        for (i, node) in nodes.iter().enumerate() {
            let refs: Vec<NodeId> = match node {
                Node::Input(j) => {
                    if *j >= arity {
                        return Err(bad(format!("input {j} out of range for arity {arity}")));
                    }
                    Vec::new()
                }
                Node::Const(_) => Vec::new(),
                Node::Add(a) | Node::Mul(a) => a.clone(),
                Node::Pow(a, _) => vec![*a],
                Node::Compose { expr, args } => {
                    if expr.arity != args.len() {
                        return Err(Error::ArityMismatch {
                            expected: expr.arity,
                            found: args.len(),
                        });
                    }
                    args.clone()
                }
            };
            if let Some(&r) = refs.iter().find(|&&r| r >= i) {
                return Err(bad(format!("node {i} references later node {r}")));
            }
        }
        Ok(OuterExpr {
            arity,
            nodes,
            output,
        })
    }

    /// `Z_1 * Z_2 * ... * Z_t`.
    pub fn product(arity: usize) -> Self {
        let mut nodes: Vec<Node> = (0..arity).map(Node::Input).collect();
        nodes.push(Node::Mul((0..arity).collect()));
        OuterExpr {
            arity,
            output: nodes.len() - 1,
            nodes,
        }
    }

    /// Sum-of-products DAG for a polynomial in `arity = f.nvars()` inputs.
    pub fn from_polynomial(f: &Polynomial) -> Self {
        let arity = f.nvars();
        let mut nodes: Vec<Node> = (0..arity).map(Node::Input).collect();
        let mut summands = Vec::new();
        for (m, c) in f.terms().rev() {
            let mut factors = Vec::new();
            if !f.domain().is_one(c) || m.is_one() {
                nodes.push(Node::Const(c.clone()));
                factors.push(nodes.len() - 1);
            }
            for (v, e) in m.pairs() {
                if e == 1 {
                    factors.push(v);
                } else {
                    nodes.push(Node::Pow(v, e));
                    factors.push(nodes.len() - 1);
                }
            }
            if factors.len() == 1 {
                summands.push(factors[0]);
            } else {
                nodes.push(Node::Mul(factors));
                summands.push(nodes.len() - 1);
            }
        }
        nodes.push(Node::Add(summands));
        OuterExpr {
            arity,
            output: nodes.len() - 1,
            nodes,
        }
    }

    /// `c * self`.
    pub fn scaled(&self, c: Coeff) -> Self {
        let mut nodes = self.nodes.clone();
        nodes.push(Node::Const(c));
        nodes.push(Node::Mul(vec![self.output, nodes.len() - 1]));
        OuterExpr {
            arity: self.arity,
            output: nodes.len() - 1,
            nodes,
        }
    }

    pub fn arity(&self) -> usize {
        self.arity
    }

    pub fn nodes(&self) -> &[Node] {
        &self.nodes
    }

    pub fn output(&self) -> NodeId {
        self.output
    }

    /// Total node count, counting nested expressions.
    pub fn size(&self) -> usize {
        self.nodes
            .iter()
            .map(|n| match n {
                Node::Compose { expr, .. } => 1 + expr.size(),
                _ => 1,
            })
            .sum()
    }

    pub(crate) fn eval<A: DagAlgebra>(&self, alg: &A, inputs: &[A::Value]) -> Result<A::Value> {
        if inputs.len() != self.arity {
            return Err(Error::ArityMismatch {
                expected: self.arity,
                found: inputs.len(),
            });
        }
        let mut vals: Vec<A::Value> = Vec::with_capacity(self.nodes.len());
        for node in &self.nodes {
            let v = match node {
                Node::Input(j) => inputs[*j].clone(),
                Node::Const(c) => alg.constant(c),
                Node::Add(args) => {
                    let mut acc = alg.zero();
                    for &a in args {
                        acc = alg.add(&acc, &vals[a])?;
                    }
                    acc
                }
                Node::Mul(args) => {
                    let mut acc = alg.one();
                    for &a in args {
                        acc = alg.mul(&acc, &vals[a])?;
                    }
                    acc
                }
                Node::Pow(a, e) => {
                    let mut acc = alg.one();
                    let mut base = vals[*a].clone();
                    let mut e = *e;
                    while e > 0 {
                        if e & 1 == 1 {
                            acc = alg.mul(&acc, &base)?;
                        }
                        e >>= 1;
                        if e > 0 {
                            base = alg.mul(&base, &base)?;
                        }
                    }
                    acc
                }
                Node::Compose { expr, args } => {
                    let sub: Vec<A::Value> = args.iter().map(|&a| vals[a].clone()).collect();
                    expr.eval(alg, &sub)?
                }
            };
            vals.push(v);
        }
        Ok(vals.swap_remove(self.output))
    }

    pub fn evaluate(&self, domain: Domain, inputs: &[Coeff]) -> Result<Coeff> {
        self.eval(&Scalars(domain), inputs)
    }

    /// Substitutes polynomials for the inputs and expands.
    pub fn expand(&self, inputs: &[Polynomial], domain: Domain, nvars: usize, cap: usize) -> Result<Polynomial> {
        self.eval(&Polys { domain, nvars, cap }, inputs)
    }

    /// Formal degree given the degrees of the inputs.
    pub fn formal_degree(&self, input_degrees: &[u32]) -> u64 {
        let d: Vec<u64> = input_degrees.iter().map(|&x| x as u64).collect();
        self.eval(&Degrees, &d).unwrap_or(u64::MAX)
    }

    /// Every constant in the expression, nested ones included.
    pub fn constants(&self) -> Vec<&Coeff> {
        let mut out = Vec::new();
        for n in &self.nodes {
            match n {
                Node::Const(c) => out.push(c),
                Node::Compose { expr, .. } => out.extend(expr.constants()),
                _ => {}
            }
        }
        out
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn polynomial_dag_matches_composition() {
        let q = Domain::rational();
        let f = Polynomial::parse(q, Some(2), "z1^2 - 2*z2 + 3").unwrap();
        let dag = OuterExpr::from_polynomial(&f);
        let args = [
            Polynomial::parse(q, Some(2), "x1 + x2").unwrap(),
            Polynomial::parse(q, Some(2), "x1*x2").unwrap(),
        ];
        let via_dag = dag.expand(&args, q, 2, 1000).unwrap();
        assert_eq!(via_dag, f.compose(&args, 1000).unwrap());
        assert_eq!(dag.formal_degree(&[1, 2]), 2);
        assert_eq!(dag.formal_degree(&[3, 1]), 6);
        let at = dag.evaluate(q, &[q.from_i64(5), q.from_i64(1)]).unwrap();
        assert_eq!(at, q.from_i64(26));
    }

    #[test]
    fn rejects_malformed_graphs() {
        assert!(OuterExpr::new(1, vec![Node::Input(1)], 0).is_err());
        assert!(OuterExpr::new(1, vec![Node::Add(vec![0])], 0).is_err());
        assert!(OuterExpr::new(1, vec![Node::Input(0)], 3).is_err());
        let inner = Arc::new(OuterExpr::product(2));
        let bad = OuterExpr::new(
            1,
            vec![
                Node::Input(0),
                Node::Compose {
                    expr: inner,
                    args: vec![0],
                },
            ],
            1,
        );
        assert!(matches!(bad, Err(Error::ArityMismatch { .. })));
    }

    #[test]
    fn composition_nodes_nest() {
        let q = Domain::rational();
        // outer(Z1) = sq(Z1 + 1) with sq(W) = W^2
        let sq = Arc::new(OuterExpr::new(1, vec![Node::Input(0), Node::Pow(0, 2)], 1).unwrap());
        let e = OuterExpr::new(
            1,
            vec![
                Node::Input(0),
                Node::Const(q.one()),
                Node::Add(vec![0, 1]),
                Node::Compose {
                    expr: sq,
                    args: vec![2],
                },
            ],
            3,
        )
        .unwrap();
        assert_eq!(e.evaluate(q, &[q.from_i64(4)]).unwrap(), q.from_i64(25));
        assert_eq!(e.formal_degree(&[3]), 6);
        assert_eq!(e.size(), 6);
    }
}
