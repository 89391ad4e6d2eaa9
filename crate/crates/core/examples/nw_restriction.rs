//! A replicated NW polynomial under a random restriction, projected back onto NW.

use rankpit::nw::{
    extract_nw_projection, hard_polynomial, nw_polynomial, restrict, sample_restriction, slot_survival_experiment,
    HardPolyParams, NWParams,
};
use rankpit::{Domain, Error, Result};

pub fn run_example() -> Result<usize> {
    let q = Domain::rational();
    let base = NWParams::new(3, 3, 2)?;
    let nw = nw_polynomial(&base, q);
    println!("NW(3, 3, 2) has {} monomials in {} variables", nw.len(), base.nvars());
    let hp = HardPolyParams::with_p(base, 0.5, 0.7, 3)?;
    let h = hard_polynomial(&hp, q, 1_000_000)?;
    println!("replicated polynomial: {} monomials in {} variables", h.len(), hp.nvars());

    let mut recovered = 0;
    for seed in 0..20 {
        let v = sample_restriction(hp.nvars(), hp.p, seed)?;
        match extract_nw_projection(&restrict(&h, &v), &hp, &v) {
            Ok(proj) => {
                assert_eq!(proj, nw);
                recovered += 1;
            }
            Err(Error::SlotDied { i, j }) => println!("seed {seed}: slot ({i},{j}) died"),
            Err(e) => return Err(e),
        }
    }
    println!("recovered NW in {recovered} of 20 restrictions");
    let stats = slot_survival_experiment(&hp, 1000, 1);
    println!(
        "dead slot rate {:.4}, expected {:.4} +- {:.4}",
        stats.dead_fraction, stats.expected, 3.0 * stats.sigma
    );
    Ok(recovered)
}

#[allow(dead_code)]
fn main() -> Result<()> {
    run_example().map(|_| ())
}
