//! Support bounds, hitting-set sizes, and a certified identity test.

use rankpit::corpus::{fixture_e1_circuit, fixture_zero_circuit};
use rankpit::pit::{hitting_set, pit_test, support_bound, Mode, PitOptions, Variant, Verdict};
use rankpit::{Domain, Result};

pub fn run_example() -> Result<(Verdict, Verdict)> {
    let b = support_bound(1, 1, 1, 1, Variant::General)?;
    println!("support bound for d = k = T = Delta = 1: {} (from {})", b.ell, b.value);
    let h = hitting_set(6, 4, 2, Domain::rational(), 1_000)?;
    println!("N = 6, Delta = 4, ell = 2: {} points", h.len());

    let opts = PitOptions {
        mode: Mode::Both,
        ..PitOptions::default()
    };
    let zero = pit_test(&fixture_zero_circuit(), &opts)?;
    let nonzero = pit_test(&fixture_e1_circuit(), &opts)?;
    println!("zero fixture: {:?}, consistent {}", zero.verdict, zero.consistent);
    println!("E1 circuit: {:?} at {:?}", nonzero.verdict, nonzero.witness);
    Ok((zero.verdict, nonzero.verdict))
}

#[allow(dead_code)]
fn main() -> Result<()> {
    run_example().map(|_| ())
}
