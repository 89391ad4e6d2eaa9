//! Reading a circuit file, evaluating without expanding, and extracting a homogeneous component.

use rankpit::circuit::{Circuit, CircuitFile};
use rankpit::poly::DEFAULT_TERM_CAP;
use rankpit::{Domain, Result};

const SRC: &str = r#"{
  "field": {"type": "rational"},
  "nvars": 2,
  "declared": {"d": 2, "k": 1, "delta": 4},
  "gates": [
    {
      "outer": {"dag": {"arity": 2, "nodes": [
        {"op": "input", "index": 0},
        {"op": "input", "index": 1},
        {"op": "mul", "args": [0, 1]},
        {"op": "const", "value": "3"},
        {"op": "add", "args": [2, 3]}
      ], "output": 4}},
      "inner": ["x1 + x2", "x1^2 + 2*x1*x2 + x2^2"]
    },
    {"outer": "product", "inner": ["x1 - 1", "x2"]}
  ]
}"#;

pub fn run_example() -> Result<String> {
    let c = Circuit::from_json(SRC)?;
    let q = Domain::rational();
    let x = [q.from_i64(1), q.from_i64(2)];
    println!("C(1, 2) = {}", q.format(&c.evaluate(&x)?));
    let full = c.expand(DEFAULT_TERM_CAP)?;
    println!("C = {full}");
    let h3 = c.homogeneous_component_circuit(3)?.expand(DEFAULT_TERM_CAP)?;
    println!("h^3[C] = {h3}");
    assert_eq!(h3, full.homogeneous_component(3));
    print!("{}", CircuitFile::from_circuit(&c).to_canonical_string());
    Ok(full.to_string())
}

#[allow(dead_code)]
fn main() -> Result<()> {
    run_example().map(|_| ())
}
