//! JSON circuit files.
//!
//! ```json
//! {
//!   "field": {"type": "prime", "p": "1000003"},
//!   "nvars": 2,
//!   "declared": {"d": 1, "k": 2, "delta": 2},
//!   "gates": [
//!     {"outer": "product", "inner": [[{"coeff": "1", "mono": {"1": 1}}], "x1 - x2"]}
//!   ]
//! }
//! ```
//!
//! General outer functions are `{"dag": {"arity": t, "nodes": [...], "output": i}}`
//! where each node is tagged by `op`: `input`, `const`, `add`, `mul`, `pow`
//! or `compose`.

use std::sync::Arc;

use serde::{Deserialize, Serialize};

use super::{Circuit, Declared, Gate, Node, Outer, OuterExpr};
use crate::error::{Error, Result};
use crate::field::Domain;
use crate::poly::PolyRepr;

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct CircuitFile {
    pub field: Domain,
    pub nvars: usize,
    pub declared: Declared,
    pub gates: Vec<GateRepr>,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct GateRepr {
    pub outer: OuterRepr,
    pub inner: Vec<PolyRepr>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub rank_bound: Option<u32>,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(untagged)]
pub enum OuterRepr {
    Keyword(String),
    Dag { dag: DagRepr },
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct DagRepr {
    pub arity: usize,
    pub nodes: Vec<NodeRepr>,
    pub output: usize,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(tag = "op", rename_all = "lowercase", deny_unknown_fields)]
pub enum NodeRepr {
    Input { index: usize },
    Const { value: String },
    Add { args: Vec<usize> },
    Mul { args: Vec<usize> },
    Pow { arg: usize, exp: u32 },
    Compose { dag: Box<DagRepr>, args: Vec<usize> },
}

impl DagRepr {
    fn from_expr(e: &OuterExpr, domain: Domain) -> Self {
        DagRepr {
            arity: e.arity(),
            output: e.output(),
            nodes: e
                .nodes()
                .iter()
                .map(|n| match n {
                    Node::Input(i) => NodeRepr::Input { index: *i },
                    Node::Const(c) => NodeRepr::Const {
                        value: domain.format(c),
                    },
                    Node::Add(a) => NodeRepr::Add { args: a.clone() },
                    Node::Mul(a) => NodeRepr::Mul { args: a.clone() },
                    Node::Pow(a, e) => NodeRepr::Pow { arg: *a, exp: *e },
                    Node::Compose { expr, args } => NodeRepr::Compose {
                        dag: Box::new(DagRepr::from_expr(expr, domain)),
                        args: args.clone(),
                    },
                })
                .collect(),
        }
    }

    fn to_expr(&self, domain: Domain) -> Result<OuterExpr> {
        let nodes = self
            .nodes
            .iter()
            .map(|n| {
                Ok(match n {
                    NodeRepr::Input { index } => Node::Input(*index),
                    NodeRepr::Const { value } => Node::Const(domain.parse_coeff(value)?),
                    NodeRepr::Add { args } => Node::Add(args.clone()),
                    NodeRepr::Mul { args } => Node::Mul(args.clone()),
                    NodeRepr::Pow { arg, exp } => Node::Pow(*arg, *exp),
                    NodeRepr::Compose { dag, args } => Node::Compose {
                        expr: Arc::new(dag.to_expr(domain)?),
                        args: args.clone(),
                    },
                })
            })
            .collect::<Result<Vec<_>>>()?;
        OuterExpr::new(self.arity, nodes, self.output)
    }
}

impl CircuitFile {
    pub fn parse(text: &str) -> Result<Self> {
        serde_json::from_str(text).map_err(|e| Error::Syntax {
            line: e.line(),
            column: e.column(),
            message: e.to_string(),
        })
    }

    pub fn from_circuit(c: &Circuit) -> Self {
        let domain = c.domain();
        CircuitFile {
            field: domain,
            nvars: c.nvars(),
            declared: c.declared(),
            gates: c
                .gates()
                .iter()
                .map(|g| GateRepr {
                    outer: match &g.outer {
                        Outer::Product => OuterRepr::Keyword("product".into()),
                        Outer::General(e) => OuterRepr::Dag {
                            dag: DagRepr::from_expr(e, domain),
                        },
                    },
                    inner: g.inner.iter().map(PolyRepr::from_poly).collect(),
                    rank_bound: g.rank_bound,
                })
                .collect(),
        }
    }

    pub fn to_circuit(&self) -> Result<Circuit> {
        let domain = self.field;
        let gates = self
            .gates
            .iter()
            .map(|g| {
                let outer = match &g.outer {
                    OuterRepr::Keyword(k) if k == "product" => Outer::Product,
                    OuterRepr::Keyword(k) => {
                        return Err(Error::InvalidParams(format!("unknown outer keyword '{k}'")))
                    }
                    OuterRepr::Dag { dag } => Outer::General(dag.to_expr(domain)?),
                };
                let inner = g
                    .inner
                    .iter()
                    .map(|p| p.to_poly(domain, self.nvars))
                    .collect::<Result<Vec<_>>>()?;
                Ok(Gate {
                    outer,
                    inner,
                    rank_bound: g.rank_bound,
                })
            })
            .collect::<Result<Vec<_>>>()?;
        Circuit::new(domain, self.nvars, gates, self.declared)
    }

    pub fn to_canonical_string(&self) -> String {
        let mut s = serde_json::to_string_pretty(self).expect("circuit serializes");
        s.push('\n');
        s
    }
}
