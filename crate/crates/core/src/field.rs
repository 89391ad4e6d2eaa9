//! Coefficient domains: prime fields with a 64-bit modulus and the rationals.
//!
//! Elements are plain values ([`Coeff`]); all arithmetic goes through the
//! owning [`Domain`], which knows the modulus. Mixing elements of different
//! domains is a logic error and is caught by the polynomial layer.

use std::fmt;

use num_bigint::{BigInt, Sign};
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Domain {
    Prime(u64),
    Rational,
}

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub enum Coeff {
    Mod(u64),
    Rat(BigRational),
}

impl Domain {
    pub fn prime(p: u64) -> Result<Self> {
        if !is_prime(p) {
            return Err(Error::InvalidParams(format!("{p} is not prime")));
        }
        Ok(Domain::Prime(p))
    }

    pub fn rational() -> Self {
        Domain::Rational
    }

    /// 0 for the rationals.
    pub fn characteristic(&self) -> u64 {
        match self {
            Domain::Prime(p) => *p,
            Domain::Rational => 0,
        }
    }

    /// Number of elements, `None` when infinite.
    pub fn size(&self) -> Option<u64> {
        match self {
            Domain::Prime(p) => Some(*p),
            Domain::Rational => None,
        }
    }

    pub fn has_at_least(&self, count: u64) -> bool {
        self.size().map_or(true, |p| p >= count)
    }

    pub fn zero(&self) -> Coeff {
        match self {
            Domain::Prime(_) => Coeff::Mod(0),
            Domain::Rational => Coeff::Rat(BigRational::zero()),
        }
    }

    pub fn one(&self) -> Coeff {
        match self {
            Domain::Prime(_) => Coeff::Mod(1),
            Domain::Rational => Coeff::Rat(BigRational::one()),
        }
    }

    pub fn from_i64(&self, v: i64) -> Coeff {
        match self {
            Domain::Prime(p) => Coeff::Mod((v as i128).rem_euclid(*p as i128) as u64),
            Domain::Rational => Coeff::Rat(BigRational::from_integer(BigInt::from(v))),
        }
    }

    pub fn from_u64(&self, v: u64) -> Coeff {
        match self {
            Domain::Prime(p) => Coeff::Mod(v % p),
            Domain::Rational => Coeff::Rat(BigRational::from_integer(BigInt::from(v))),
        }
    }

    pub fn from_bigint(&self, v: &BigInt) -> Coeff {
        match self {
            Domain::Prime(p) => Coeff::Mod(reduce_bigint(v, *p)),
            Domain::Rational => Coeff::Rat(BigRational::from_integer(v.clone())),
        }
    }

    /// Maps a rational into the domain; `None` if the denominator vanishes mod p.
    pub fn from_rational(&self, v: &BigRational) -> Option<Coeff> {
        match self {
            Domain::Prime(p) => {
                let num = reduce_bigint(v.numer(), *p);
                let den = reduce_bigint(v.denom(), *p);
                let inv = inv_mod(den, *p)?;
                Some(Coeff::Mod(mul_mod(num, inv, *p)))
            }
            Domain::Rational => Some(Coeff::Rat(v.clone())),
        }
    }

    pub fn is_zero(&self, c: &Coeff) -> bool {
        match c {
            Coeff::Mod(v) => *v == 0,
            Coeff::Rat(r) => r.is_zero(),
        }
    }

    pub fn is_one(&self, c: &Coeff) -> bool {
        match c {
            Coeff::Mod(v) => *v == 1,
            Coeff::Rat(r) => r.is_one(),
        }
    }

    pub fn add(&self, a: &Coeff, b: &Coeff) -> Coeff {
        match (self, a, b) {
            (Domain::Prime(p), Coeff::Mod(x), Coeff::Mod(y)) => Coeff::Mod(add_mod(*x, *y, *p)),
            (Domain::Rational, Coeff::Rat(x), Coeff::Rat(y)) => Coeff::Rat(x + y),
            _ => mixed(),
        }
    }

    pub fn sub(&self, a: &Coeff, b: &Coeff) -> Coeff {
        match (self, a, b) {
            (Domain::Prime(p), Coeff::Mod(x), Coeff::Mod(y)) => {
                Coeff::Mod(add_mod(*x, p - y % p, *p))
            }
            (Domain::Rational, Coeff::Rat(x), Coeff::Rat(y)) => Coeff::Rat(x - y),
            _ => mixed(),
        }
    }

    pub fn mul(&self, a: &Coeff, b: &Coeff) -> Coeff {
        match (self, a, b) {
            (Domain::Prime(p), Coeff::Mod(x), Coeff::Mod(y)) => Coeff::Mod(mul_mod(*x, *y, *p)),
            (Domain::Rational, Coeff::Rat(x), Coeff::Rat(y)) => Coeff::Rat(x * y),
            _ => mixed(),
        }
    }

    pub fn neg(&self, a: &Coeff) -> Coeff {
        match (self, a) {
            (Domain::Prime(p), Coeff::Mod(x)) => Coeff::Mod(if *x == 0 { 0 } else { p - x }),
            (Domain::Rational, Coeff::Rat(x)) => Coeff::Rat(-x),
            _ => mixed(),
        }
    }

    pub fn inv(&self, a: &Coeff) -> Option<Coeff> {
        match (self, a) {
            (Domain::Prime(p), Coeff::Mod(x)) => inv_mod(*x, *p).map(Coeff::Mod),
            (Domain::Rational, Coeff::Rat(x)) => (!x.is_zero()).then(|| Coeff::Rat(x.recip())),
            _ => mixed(),
        }
    }

    /// Panics on division by zero.
    pub fn div(&self, a: &Coeff, b: &Coeff) -> Coeff {
        let inv = self.inv(b).expect("division by zero");
        self.mul(a, &inv)
    }

    pub fn pow(&self, a: &Coeff, mut e: u64) -> Coeff {
        let mut base = a.clone();
        let mut acc = self.one();
        while e > 0 {
            if e & 1 == 1 {
                acc = self.mul(&acc, &base);
            }
            e >>= 1;
            if e > 0 {
                base = self.mul(&base, &base);
            }
        }
        acc
    }

    /// Multiplies by a small integer (used for derivative factors).
    pub fn scale_u64(&self, a: &Coeff, k: u64) -> Coeff {
        self.mul(a, &self.from_u64(k))
    }

    /// Parses a decimal integer or `num/den` fraction.
    pub fn parse_coeff(&self, s: &str) -> Result<Coeff> {
        let s = s.trim();
        let bad = || Error::Syntax {
            line: 1,
            column: 1,
            message: format!("invalid coefficient '{s}'"),
        };
        let (num, den) = match s.split_once('/') {
            Some((n, d)) => (
                n.trim().parse::<BigInt>().map_err(|_| bad())?,
                d.trim().parse::<BigInt>().map_err(|_| bad())?,
            ),
            None => (s.parse::<BigInt>().map_err(|_| bad())?, BigInt::one()),
        };
        if den.is_zero() {
            return Err(bad());
        }
        self.from_rational(&BigRational::new(num, den)).ok_or_else(|| Error::Syntax {
            line: 1,
            column: 1,
            message: format!("denominator of '{s}' vanishes modulo {}", self.characteristic()),
        })
    }

    /// Canonical decimal form: `[0, p)` representative or lowest-terms fraction.
    pub fn format(&self, c: &Coeff) -> String {
        match c {
            Coeff::Mod(v) => v.to_string(),
            Coeff::Rat(r) => format_rational(r),
        }
    }

    /// Splits off a sign for human-facing sums; prime-field values are never negative.
    pub fn is_negative(&self, c: &Coeff) -> bool {
        matches!(c, Coeff::Rat(r) if r.is_negative())
    }

    /// The `i`-th canonical scalar `0, 1, 2, ...` (reduced mod p).
    pub fn scalar(&self, i: u64) -> Coeff {
        self.from_u64(i)
    }

    pub fn to_u64(&self, c: &Coeff) -> Option<u64> {
        match c {
            Coeff::Mod(v) => Some(*v),
            Coeff::Rat(r) => r.is_integer().then(|| r.to_integer().to_u64()).flatten(),
        }
    }

    pub fn name(&self) -> String {
        match self {
            Domain::Prime(p) => format!("F_{p}"),
            Domain::Rational => "Q".to_string(),
        }
    }
}

impl fmt::Display for Domain {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.name())
    }
}

#[cold]
fn mixed() -> ! {
    panic!("coefficient does not belong to the domain")
}

fn format_rational(r: &BigRational) -> String {
    if r.denom().is_one() {
        r.numer().to_string()
    } else {
        format!("{}/{}", r.numer(), r.denom())
    }
}

fn reduce_bigint(v: &BigInt, p: u64) -> u64 {
    let m = BigInt::from(p);
    let r = ((v % &m) + &m) % &m;
    let (sign, digits) = r.to_u64_digits();
    match sign {
        Sign::NoSign => 0,
        _ => digits.first().copied().unwrap_or(0),
    }
}

#[inline]
pub(crate) fn add_mod(a: u64, b: u64, p: u64) -> u64 {
    let s = a as u128 + b as u128;
    (if s >= p as u128 { s - p as u128 } else { s }) as u64
}

#[inline]
pub(crate) fn mul_mod(a: u64, b: u64, p: u64) -> u64 {
    if p <= u32::MAX as u64 {
        return (a * b) % p;
    }
    ((a as u128 * b as u128) % p as u128) as u64
}

pub(crate) fn pow_mod(mut a: u64, mut e: u64, p: u64) -> u64 {
    let mut acc = 1 % p;
    a %= p;
    while e > 0 {
        if e & 1 == 1 {
            acc = mul_mod(acc, a, p);
        }
        a = mul_mod(a, a, p);
        e >>= 1;
    }
    acc
}

pub(crate) fn inv_mod(a: u64, p: u64) -> Option<u64> {
    let a = a % p;
    if a == 0 {
        return None;
    }
    // Extended Euclid over i128 to stay exact for 64-bit moduli.
    let (mut r0, mut r1) = (p as i128, a as i128);
    let (mut t0, mut t1) = (0i128, 1i128);
    while r1 != 0 {
        let q = r0 / r1;
        (r0, r1) = (r1, r0 - q * r1);
        (t0, t1) = (t1, t0 - q * t1);
    }
    Some(t0.rem_euclid(p as i128) as u64)
}

/// Deterministic Miller-Rabin for 64-bit integers.
pub fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    const BASES: [u64; 12] = [2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37];
    for &b in &BASES {
        if n % b == 0 {
            return n == b;
        }
    }
    let mut d = n - 1;
    let mut s = 0;
    while d % 2 == 0 {
        d /= 2;
        s += 1;
    }
    'outer: for &a in &BASES {
        let mut x = pow_mod(a, d, n);
        if x == 1 || x == n - 1 {
            continue;
        }
        for _ in 1..s {
            x = mul_mod(x, x, n);
            if x == n - 1 {
                continue 'outer;
            }
        }
        return false;
    }
    true
}

#[derive(Serialize, Deserialize)]
#[serde(tag = "type", rename_all = "lowercase")]
enum DomainRepr {
    Prime { p: String },
    Rational,
}

impl Serialize for Domain {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        match self {
            Domain::Prime(p) => DomainRepr::Prime { p: p.to_string() },
            Domain::Rational => DomainRepr::Rational,
        }
        .serialize(s)
    }
}

impl<'de> Deserialize<'de> for Domain {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        use serde::de::Error as _;
        match DomainRepr::deserialize(d)? {
            DomainRepr::Rational => Ok(Domain::Rational),
            DomainRepr::Prime { p } => {
                let p: u64 = p.trim().parse().map_err(D::Error::custom)?;
                Domain::prime(p).map_err(D::Error::custom)
            }
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn prime_detection() {
        let small: Vec<u64> = (0..40).filter(|&n| is_prime(n)).collect();
        assert_eq!(small, vec![2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37]);
        assert!(is_prime(1_000_003));
        assert!(is_prime((1 << 61) - 1));
        assert!(!is_prime(1_000_001));
        assert!(!is_prime(3_215_031_751)); // strong pseudoprime to bases 2,3,5,7
    }

    #[test]
    fn modular_arithmetic() {
        let f = Domain::prime(11).unwrap();
        let a = f.from_i64(-3);
        assert_eq!(a, Coeff::Mod(8));
        assert_eq!(f.mul(&f.from_u64(3), &f.from_u64(4)), Coeff::Mod(1));
        let inv = f.inv(&f.from_u64(3)).unwrap();
        assert_eq!(f.mul(&inv, &f.from_u64(3)), f.one());
        assert!(f.inv(&f.zero()).is_none());
    }

    #[test]
    fn parse_and_format() {
        let q = Domain::rational();
        let c = q.parse_coeff("6/-4").unwrap();
        assert_eq!(q.format(&c), "-3/2");
        assert_eq!(q.format(&q.parse_coeff("10/5").unwrap()), "2");
        let f = Domain::prime(7).unwrap();
        assert_eq!(f.parse_coeff("1/2").unwrap(), Coeff::Mod(4));
        assert!(f.parse_coeff("1/7").is_err());
        assert!(q.parse_coeff("abc").is_err());
    }

    #[test]
    fn domain_json() {
        let f = Domain::prime(1_000_003).unwrap();
        let s = serde_json::to_string(&f).unwrap();
        assert_eq!(s, r#"{"type":"prime","p":"1000003"}"#);
        assert_eq!(serde_json::from_str::<Domain>(&s).unwrap(), f);
        let q: Domain = serde_json::from_str(r#"{"type":"rational"}"#).unwrap();
        assert_eq!(q, Domain::Rational);
        assert!(serde_json::from_str::<Domain>(r#"{"type":"prime","p":"12"}"#).is_err());
    }
}
