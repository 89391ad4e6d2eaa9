//! Minimal annihilating polynomials, and what happens for an independent pair.

use rankpit::algdep::{find_annihilator, kayal_cap};
use rankpit::{Domain, Error, Polynomial, Result};

pub fn run_example() -> Result<String> {
    let q = Domain::rational();
    let p = |s: &str| Polynomial::parse(q, Some(2), s);
    let e1 = vec![p("x1 + x2")?, p("x1*x2")?, p("x1^2 + x2^2")?];
    let a = find_annihilator(&e1, None)?;
    println!("degree {}: {}", a.degree, a.r.to_text("z"));

    let pair = vec![p("x1")?, p("x2 + x1^2")?];
    match find_annihilator(&pair, None) {
        Err(Error::NoAnnihilatorWithinCap { cap }) => {
            println!("independent: nothing up to degree {cap} = kayal_cap(1, 2) = {}", kayal_cap(1, 2))
        }
        other => panic!("unexpected {other:?}"),
    }
    Ok(a.r.to_text("z"))
}

#[allow(dead_code)]
fn main() -> Result<()> {
    run_example().map(|_| ())
}
