//! The lower-bound parameter choice evaluated in interval arithmetic.

use rankpit::nw::instantiate_parameters;
use rankpit::Result;

pub fn run_example() -> Result<Vec<bool>> {
    let mut valid = Vec::new();
    for n in [100, 10_000, 1_000_000] {
        let p = instantiate_parameters(n)?;
        println!(
            "n = {n}: epsilon {}, r {}, s {}, e {}, q^r constraint {:?}, valid {}",
            p.epsilon, p.r, p.s, p.e, p.q_power_constraint, p.valid
        );
        valid.push(p.valid);
    }
    Ok(valid)
}

#[allow(dead_code)]
fn main() -> Result<()> {
    run_example().map(|_| ())
}
