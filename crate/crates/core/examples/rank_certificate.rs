//! Algebraic rank of `(x1 + x2, x1 x2, x1^2 + x2^2)` three ways.

use rankpit::algdep::{algebraic_rank, annihilator_rank, RankMode};
use rankpit::{Domain, Polynomial, Result};

pub fn run_example() -> Result<(usize, Vec<usize>)> {
    let q = Domain::rational();
    let e1: Vec<Polynomial> = ["x1 + x2", "x1*x2", "x1^2 + x2^2"]
        .iter()
        .map(|s| Polynomial::parse(q, Some(2), s))
        .collect::<Result<_>>()?;
    let random = algebraic_rank(&e1, RankMode::randomized(42))?;
    let symbolic = algebraic_rank(&e1, RankMode::Symbolic)?;
    let (by_annihilators, _) = annihilator_rank(&e1)?;
    assert_eq!(random.rank, symbolic.rank);
    assert_eq!(symbolic.rank, by_annihilators);
    println!("rank {} with basis {:?} ({:?})", random.rank, random.basis_indices, random.method);
    Ok((random.rank, random.basis_indices))
}

#[allow(dead_code)]
fn main() -> Result<()> {
    run_example().map(|_| ())
}
