//! Projected shifted partial derivatives of `x1 x2 + x3 x4` and the matching upper bounds.

use rankpit::measure::{composition_upper_bound, psp_dimension, sweep, sweep_csv, MeasureSpec, DEFAULT_MATRIX_CAP};
use rankpit::{Domain, Monomial, Polynomial, Result};

pub fn run_example() -> Result<usize> {
    let p = Polynomial::parse(Domain::rational(), Some(4), "x1*x2 + x3*x4")?;
    let spec = MeasureSpec::new(vec![Monomial::var(0), Monomial::var(2)], 1)?;
    let rep = psp_dimension(&p, &spec)?;
    println!("Phi = {} from {} rows and {} columns", rep.dimension, rep.rows, rep.cols);
    print!("{}", sweep_csv(&sweep(&p, &[1, 2], &[0, 1, 2], DEFAULT_MATRIX_CAP)?));
    println!("composition bound (N=8, t=2, r=1, m=1, s=1): {}", composition_upper_bound(8, 2, 1, 1, 1)?);
    Ok(rep.dimension)
}

#[allow(dead_code)]
fn main() -> Result<()> {
    run_example().map(|_| ())
}
