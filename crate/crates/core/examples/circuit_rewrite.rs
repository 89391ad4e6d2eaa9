//! Rewriting a product gate onto the homogeneous components of a transcendence basis.

use rankpit::algdep::rewrite_circuit;
use rankpit::circuit::{Circuit, Declared, Gate};
use rankpit::poly::DEFAULT_TERM_CAP;
use rankpit::{Domain, Polynomial, Result};

pub fn run_example() -> Result<usize> {
    let q = Domain::rational();
    let p = |s: &str| Polynomial::parse(q, Some(2), s);
    let gate = Gate::product(vec![p("x1 + x2")?, p("x1*x2")?, p("x1^2 + x2^2")?]);
    let c = Circuit::new(q, 2, vec![gate], Declared { d: 2, k: 2, delta: 5 })?;
    let r = rewrite_circuit(&c, 3)?;
    let inner = r.circuit.gates()[0].inner.len();
    println!("translation {:?}, {} inner polynomials", r.a.iter().map(|c| q.format(c)).collect::<Vec<_>>(), inner);
    for h in &r.circuit.gates()[0].inner {
        println!("  {h}");
    }
    let same = r.circuit.expand(DEFAULT_TERM_CAP)? == c.expand(DEFAULT_TERM_CAP)?.translate(&r.a)?;
    println!("C'(X) = C(X + a): {same}");
    assert!(same);
    Ok(inner)
}

#[allow(dead_code)]
fn main() -> Result<()> {
    run_example().map(|_| ())
}
