//! Outward-rounded `f64` intervals, enough to take a sound ceiling of
//! expressions built from `+`, `*`, `/`, `ln`, `exp` and `sqrt`.
//!
//! Library transcendental functions are not correctly rounded, so their
//! results are widened by a few ulps on each side.

use std::fmt;

use serde::Serialize;

#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
pub struct Interval {
    pub lo: f64,
    pub hi: f64,
}

const SLACK_ULPS: usize = 4;

fn down(mut x: f64, n: usize) -> f64 {
    for _ in 0..n {
        x = x.next_down();
    }
    x
}

fn up(mut x: f64, n: usize) -> f64 {
    for _ in 0..n {
        x = x.next_up();
    }
    x
}

impl Interval {
    pub fn new(lo: f64, hi: f64) -> Self {
        assert!(lo <= hi, "empty interval [{lo}, {hi}]");
        Interval { lo, hi }
    }

    /// The tightest interval around an integer (exact below 2^53).
    pub fn from_u64(n: u64) -> Self {
        let x = n as f64;
        if x as u64 == n && n < (1 << 53) {
            Interval { lo: x, hi: x }
        } else {
            Interval {
                lo: x.next_down(),
                hi: x.next_up(),
            }
        }
    }

    /// Euler's number.
    pub fn e() -> Self {
        Interval::from_u64(1).exp()
    }

    pub fn add(self, o: Interval) -> Self {
        Interval {
            lo: down(self.lo + o.lo, 1),
            hi: up(self.hi + o.hi, 1),
        }
    }

    pub fn sub(self, o: Interval) -> Self {
        Interval {
            lo: down(self.lo - o.hi, 1),
            hi: up(self.hi - o.lo, 1),
        }
    }

    pub fn mul(self, o: Interval) -> Self {
        let c = [self.lo * o.lo, self.lo * o.hi, self.hi * o.lo, self.hi * o.hi];
        let lo = c.iter().cloned().fold(f64::INFINITY, f64::min);
        let hi = c.iter().cloned().fold(f64::NEG_INFINITY, f64::max);
        Interval {
            lo: down(lo, 1),
            hi: up(hi, 1),
        }
    }

    /// Division by an interval that excludes zero.
    pub fn div(self, o: Interval) -> Self {
        assert!(o.lo > 0.0 || o.hi < 0.0, "division by an interval containing 0");
        let c = [self.lo / o.lo, self.lo / o.hi, self.hi / o.lo, self.hi / o.hi];
        let lo = c.iter().cloned().fold(f64::INFINITY, f64::min);
        let hi = c.iter().cloned().fold(f64::NEG_INFINITY, f64::max);
        Interval {
            lo: down(lo, 1),
            hi: up(hi, 1),
        }
    }

    /// Natural logarithm of a positive interval.
    pub fn ln(self) -> Self {
        assert!(self.lo > 0.0, "ln of a non-positive interval");
        Interval {
            lo: down(self.lo.ln(), SLACK_ULPS),
            hi: up(self.hi.ln(), SLACK_ULPS),
        }
    }

    pub fn exp(self) -> Self {
        Interval {
            lo: down(self.lo.exp(), SLACK_ULPS).max(0.0),
            hi: up(self.hi.exp(), SLACK_ULPS),
        }
    }

    pub fn sqrt(self) -> Self {
        assert!(self.lo >= 0.0, "sqrt of a negative interval");
        Interval {
            lo: down(self.lo.sqrt(), 1).max(0.0),
            hi: up(self.hi.sqrt(), 1),
        }
    }

    pub fn mid(self) -> f64 {
        0.5 * (self.lo + self.hi)
    }

    /// `ceil(x)` if it is the same for every point of the interval.
    pub fn ceil_exact(self) -> Option<u64> {
        let (a, b) = (self.lo.ceil(), self.hi.ceil());
        (a == b && a >= 0.0 && a < u64::MAX as f64).then_some(a as u64)
    }

    /// An upper bound on `ceil(x)` over the interval.
    pub fn ceil_upper(self) -> u64 {
        self.hi.ceil().max(0.0) as u64
    }

    pub fn certainly_lt(self, o: Interval) -> bool {
        self.hi < o.lo
    }

    pub fn certainly_ge(self, o: Interval) -> bool {
        self.lo >= o.hi
    }
}

impl fmt::Display for Interval {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[{}, {}]", self.lo, self.hi)
    }
}
