use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use crate::circuit::Circuit;
use crate::error::{Error, Result};
use crate::field::{Coeff, Domain};

/// Outcome of the randomized test.
#[derive(Clone, Debug, PartialEq, Serialize)]
#[serde(tag = "verdict", rename_all = "kebab-case")]
pub enum OracleVerdict {
    Nonzero { witness: Vec<String>, round: u32 },
    /// Every round vanished; a nonzero circuit does so with probability at most `error_bound`.
    ProbablyZero { error_bound: f64 },
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct OracleReport {
    pub rounds: u32,
    pub seed: u64,
    pub sample_set_size: u64,
    #[serde(flatten)]
    pub verdict: OracleVerdict,
}

impl OracleReport {
    pub fn is_zero(&self) -> bool {
        matches!(self.verdict, OracleVerdict::ProbablyZero { .. })
    }
}

/// `|S| = 2 Delta 2^10` over Q, capped at `p` over F_p.
pub fn oracle_set_size(domain: Domain, delta: u64) -> u64 {
    let want = 2 * delta.max(1) * 1024;
    domain.size().map_or(want, |p| p.min(want))
}

/// Evaluates `c` at `rounds` independent points of `S^N`, `S = {0, ..., |S| - 1}`.
pub fn schwartz_zippel_test(c: &Circuit, rounds: u32, seed: u64) -> Result<OracleReport> {
    let domain = c.domain();
    let delta = c.declared().delta as u64;
    let size = oracle_set_size(domain, delta);
    if size < 2 * delta {
        return Err(Error::FieldTooSmall {
            needed: 2 * delta,
            available: size,
        });
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    for round in 0..rounds {
        let x: Vec<Coeff> = (0..c.nvars()).map(|_| domain.scalar(rng.gen_range(0..size))).collect();
        if !domain.is_zero(&c.evaluate(&x)?) {
            return Ok(OracleReport {
                rounds,
                seed,
                sample_set_size: size,
                verdict: OracleVerdict::Nonzero {
                    witness: x.iter().map(|v| domain.format(v)).collect(),
                    round,
                },
            });
        }
    }
    Ok(OracleReport {
        rounds,
        seed,
        sample_set_size: size,
        verdict: OracleVerdict::ProbablyZero {
            error_bound: (delta as f64 / size as f64).powi(rounds as i32),
        },
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::circuit::{Declared, Gate};
    use crate::poly::Polynomial;

    fn circuit(gates: &[&[&str]], delta: u32) -> Circuit {
        let q = Domain::Rational;
        let gates = gates
            .iter()
            .map(|g| Gate::product(g.iter().map(|s| Polynomial::parse(q, Some(2), s).unwrap()).collect()))
            .collect();
        Circuit::new(q, 2, gates, Declared { d: 2, k: 2, delta }).unwrap()
    }

    #[test]
    fn identity_fixture_is_probably_zero() {
        let c = circuit(&[&["x1 + x2", "x1 - x2"], &["-1", "x1^2 - x2^2"]], 2);
        for seed in 0..5 {
            let r = schwartz_zippel_test(&c, 8, seed).unwrap();
            assert!(r.is_zero());
        }
    }

    #[test]
    fn product_has_a_witness() {
        let c = circuit(&[&["x1", "x2"]], 2);
        let r = schwartz_zippel_test(&c, 20, 3).unwrap();
        let OracleVerdict::Nonzero { witness, .. } = r.verdict else {
            panic!("x1*x2 reported zero")
        };
        assert!(witness.iter().all(|w| w != "0"));
    }

    #[test]
    fn small_field_is_rejected() {
        let f = Domain::prime(3).unwrap();
        let x = Polynomial::parse(f, Some(1), "x1").unwrap();
        let c = Circuit::new(f, 1, vec![Gate::product(vec![x.clone(), x])], Declared { d: 1, k: 1, delta: 2 }).unwrap();
        assert!(matches!(schwartz_zippel_test(&c, 1, 0), Err(Error::FieldTooSmall { .. })));
    }
}
