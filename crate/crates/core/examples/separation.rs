//! Exact measure of small NW polynomials against the circuit upper bound.

use num_traits::ToPrimitive;
use rankpit::measure::{circuit_measure_bound, psp_dimension, MeasureSpec};
use rankpit::nw::{nw_polynomial, NWParams};
use rankpit::{Domain, Result};

pub fn run_example() -> Result<Vec<(usize, f64)>> {
    let mut rows = Vec::new();
    for (n, q, e, r, m) in [(2, 3, 1, 1, 1), (3, 3, 2, 1, 2), (3, 5, 2, 2, 1)] {
        let base = NWParams::new(n, q, e)?;
        let nw = nw_polynomial(&base, Domain::rational());
        let spec = MeasureSpec::all_multilinear(base.nvars(), r, m);
        let phi = psp_dimension(&nw, &spec)?.dimension;
        let bound = circuit_measure_bound(1, base.nvars() as u64, 1, n as u64, r as u64, m as u64, 1)?;
        let ratio = phi as f64 / bound.to_f64().unwrap();
        println!("NW({n},{q},{e}) r={r} m={m}: Phi {phi}, one-gate bound {bound}, ratio {ratio:.4}");
        rows.push((phi, ratio));
    }
    Ok(rows)
}

#[allow(dead_code)]
fn main() -> Result<()> {
    run_example().map(|_| ())
}
