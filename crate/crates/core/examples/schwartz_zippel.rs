//! The randomized oracle on an identity and on a product.

use rankpit::circuit::{Circuit, Declared, Gate};
use rankpit::corpus::fixture_zero_circuit;
use rankpit::pit::{schwartz_zippel_test, OracleVerdict};
use rankpit::{Domain, Polynomial, Result};

pub fn run_example() -> Result<bool> {
    let zero = schwartz_zippel_test(&fixture_zero_circuit(), 10, 5)?;
    println!("identity: {:?}", zero.verdict);
    let q = Domain::rational();
    let x = |s: &str| Polynomial::parse(q, Some(2), s);
    let c = Circuit::new(q, 2, vec![Gate::product(vec![x("x1")?, x("x2")?])], Declared { d: 1, k: 2, delta: 2 })?;
    let r = schwartz_zippel_test(&c, 10, 5)?;
    println!("x1*x2: {:?} (|S| = {})", r.verdict, r.sample_set_size);
    Ok(zero.is_zero() && matches!(r.verdict, OracleVerdict::Nonzero { .. }))
}

#[allow(dead_code)]
fn main() -> Result<()> {
    run_example().map(|_| ())
}
