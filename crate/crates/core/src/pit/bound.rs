use serde::Serialize;

use crate::error::{Error, Result};
use crate::interval::Interval;

/// Which blow-up factor sits inside the logarithm.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Variant {
    /// `T (Delta + 1)`, for a single homogeneous component.
    Homogeneous,
    /// `T (Delta + 1)^2`, covering every component at once.
    General,
}

impl Variant {
    fn exponent(self) -> u64 {
        match self {
            Variant::Homogeneous => 1,
            Variant::General => 2,
        }
    }
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct SupportBound {
    pub ell: u64,
    pub d: u64,
    pub k: u64,
    pub t: u64,
    pub delta: u64,
    pub variant: Variant,
    /// Enclosure of the real value before the ceiling.
    pub value: Interval,
}

/// `ceil(2 e^3 d (ln(T (Delta+1)^v) + (d+1) k ln(2 (d+1) k) + 1))`.
///
/// The ceiling is taken of the interval's upper end, so `ell` never undershoots.
pub fn support_bound(d: u64, k: u64, t: u64, delta: u64, variant: Variant) -> Result<SupportBound> {
    if d == 0 || k == 0 || t == 0 || delta == 0 {
        return Err(Error::InvalidParams(format!(
            "support bound needs d, k, T, Delta >= 1, got ({d}, {k}, {t}, {delta})"
        )));
    }
    let i = Interval::from_u64;
    let e = Interval::e();
    let two_e3 = i(2).mul(e).mul(e).mul(e);
    let v = variant.exponent();
    let ln_t = i(t).ln().add(i(v).mul(i(delta + 1).ln()));
    let dk = i((d + 1) * k);
    let inner = ln_t.add(dk.mul(i(2 * (d + 1) * k).ln())).add(i(1));
    let value = two_e3.mul(i(d)).mul(inner);
    Ok(SupportBound {
        ell: value.ceil_upper(),
        d,
        k,
        t,
        delta,
        variant,
        value,
    })
}
