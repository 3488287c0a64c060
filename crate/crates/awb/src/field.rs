//! Exact ground fields: the rationals and prime fields GF(p).
//!
//! Every scalar in the crate is either an arbitrary-precision rational or a
//! canonical residue `0..p-1`. There is no floating point anywhere; rank and
//! dimension decisions downstream depend on exact arithmetic.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};
use std::fmt;

/// A ground field: `Q` or `GF(p)` for a prime `p`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum FieldSpec {
    Rationals,
    PrimeField(u64),
}

/// An exact scalar. Residues are stored canonically in `0..p-1`; the modulus
/// lives on the owning [`FieldSpec`], not on the element.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Scalar {
    Rat(BigRational),
    Mod(u64),
}

#[derive(Debug, thiserror::Error, PartialEq, Eq)]
pub enum FieldError {
    #[error("invalid scalar `{0}`")]
    BadScalar(String),
    #[error("`{0}` is not a valid field (expected `Q` or `GF(p)` with p prime)")]
    BadField(String),
    #[error("division by zero")]
    DivisionByZero,
}

impl FieldSpec {
    pub fn rationals() -> Self {
        FieldSpec::Rationals
    }

    /// GF(p). Fails if `p` is not prime.
    pub fn prime_field(p: u64) -> Result<Self, FieldError> {
        if is_prime_u64(p) {
            Ok(FieldSpec::PrimeField(p))
        } else {
            Err(FieldError::BadField(format!("GF({p})")))
        }
    }

    pub fn characteristic(&self) -> u64 {
        match self {
            FieldSpec::Rationals => 0,
            FieldSpec::PrimeField(p) => *p,
        }
    }

    pub fn zero(&self) -> Scalar {
        match self {
            FieldSpec::Rationals => Scalar::Rat(BigRational::zero()),
            FieldSpec::PrimeField(_) => Scalar::Mod(0),
        }
    }

    pub fn one(&self) -> Scalar {
        match self {
            FieldSpec::Rationals => Scalar::Rat(BigRational::one()),
            FieldSpec::PrimeField(_) => Scalar::Mod(1),
        }
    }

    pub fn from_i64(&self, n: i64) -> Scalar {
        match self {
            FieldSpec::Rationals => Scalar::Rat(BigRational::from_integer(BigInt::from(n))),
            FieldSpec::PrimeField(p) => {
                let r = n.rem_euclid(*p as i64);
                Scalar::Mod(r as u64)
            }
        }
    }

    pub fn is_zero(&self, a: &Scalar) -> bool {
        match a {
            Scalar::Rat(r) => r.is_zero(),
            Scalar::Mod(v) => *v == 0,
        }
    }

    pub fn add(&self, a: &Scalar, b: &Scalar) -> Scalar {
        match (self, a, b) {
            (FieldSpec::Rationals, Scalar::Rat(x), Scalar::Rat(y)) => Scalar::Rat(x + y),
            (FieldSpec::PrimeField(p), Scalar::Mod(x), Scalar::Mod(y)) => {
                Scalar::Mod(add_mod(*x, *y, *p))
            }
            _ => panic!("scalar/field mismatch"),
        }
    }

    pub fn sub(&self, a: &Scalar, b: &Scalar) -> Scalar {
        self.add(a, &self.neg(b))
    }

    pub fn neg(&self, a: &Scalar) -> Scalar {
        match (self, a) {
            (FieldSpec::Rationals, Scalar::Rat(x)) => Scalar::Rat(-x),
            (FieldSpec::PrimeField(p), Scalar::Mod(x)) => {
                Scalar::Mod(if *x == 0 { 0 } else { p - x })
            }
            _ => panic!("scalar/field mismatch"),
        }
    }

    pub fn mul(&self, a: &Scalar, b: &Scalar) -> Scalar {
        match (self, a, b) {
            (FieldSpec::Rationals, Scalar::Rat(x), Scalar::Rat(y)) => Scalar::Rat(x * y),
            (FieldSpec::PrimeField(p), Scalar::Mod(x), Scalar::Mod(y)) => {
                Scalar::Mod(((*x as u128 * *y as u128) % *p as u128) as u64)
            }
            _ => panic!("scalar/field mismatch"),
        }
    }

    pub fn inv(&self, a: &Scalar) -> Result<Scalar, FieldError> {
        match (self, a) {
            (FieldSpec::Rationals, Scalar::Rat(x)) => {
                if x.is_zero() {
                    Err(FieldError::DivisionByZero)
                } else {
                    Ok(Scalar::Rat(x.recip()))
                }
            }
            (FieldSpec::PrimeField(p), Scalar::Mod(x)) => {
                if *x == 0 {
                    Err(FieldError::DivisionByZero)
                } else {
                    Ok(Scalar::Mod(inv_mod(*x, *p)))
                }
            }
            _ => panic!("scalar/field mismatch"),
        }
    }

    pub fn div(&self, a: &Scalar, b: &Scalar) -> Result<Scalar, FieldError> {
        Ok(self.mul(a, &self.inv(b)?))
    }

    /// Parses the canonical string form: `n` or `n/d` over the rationals,
    /// a (possibly signed) decimal residue over GF(p).
    pub fn parse(&self, s: &str) -> Result<Scalar, FieldError> {
        let s = s.trim();
        if s.is_empty() {
            return Err(FieldError::BadScalar(s.to_string()));
        }
        match self {
            FieldSpec::Rationals => {
                let (num, den) = match s.split_once('/') {
                    Some((n, d)) => (n, d),
                    None => (s, "1"),
                };
                let n: BigInt = num
                    .parse()
                    .map_err(|_| FieldError::BadScalar(s.to_string()))?;
                let d: BigInt = den
                    .parse()
                    .map_err(|_| FieldError::BadScalar(s.to_string()))?;
                if d.is_zero() {
                    return Err(FieldError::BadScalar(s.to_string()));
                }
                Ok(Scalar::Rat(BigRational::new(n, d)))
            }
            FieldSpec::PrimeField(p) => {
                let n: i128 = s
                    .parse()
                    .map_err(|_| FieldError::BadScalar(s.to_string()))?;
                Ok(Scalar::Mod(n.rem_euclid(*p as i128) as u64))
            }
        }
    }

    /// Canonical string form, inverse to [`FieldSpec::parse`].
    pub fn format(&self, a: &Scalar) -> String {
        match a {
            Scalar::Rat(r) => {
                if r.denom().is_one() {
                    r.numer().to_string()
                } else {
                    format!("{}/{}", r.numer(), r.denom())
                }
            }
            Scalar::Mod(v) => v.to_string(),
        }
    }

    /// Parses the field name used in files and reports: `Q` or `GF(p)`.
    pub fn parse_name(s: &str) -> Result<Self, FieldError> {
        let s = s.trim();
        if s == "Q" {
            return Ok(FieldSpec::Rationals);
        }
        if let Some(inner) = s.strip_prefix("GF(").and_then(|t| t.strip_suffix(')')) {
            let p: u64 = inner
                .parse()
                .map_err(|_| FieldError::BadField(s.to_string()))?;
            return FieldSpec::prime_field(p);
        }
        Err(FieldError::BadField(s.to_string()))
    }
}

impl fmt::Display for FieldSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            FieldSpec::Rationals => write!(f, "Q"),
            FieldSpec::PrimeField(p) => write!(f, "GF({p})"),
        }
    }
}

fn add_mod(a: u64, b: u64, p: u64) -> u64 {
    ((a as u128 + b as u128) % p as u128) as u64
}

fn inv_mod(a: u64, p: u64) -> u64 {
    // extended Euclid on (a, p), p prime, a != 0
    let (mut r0, mut r1) = (a as i128, p as i128);
    let (mut s0, mut s1) = (1i128, 0i128);
    while r1 != 0 {
        let q = r0 / r1;
        (r0, r1) = (r1, r0 - q * r1);
        (s0, s1) = (s1, s0 - q * s1);
    }
    debug_assert_eq!(r0, 1);
    s0.rem_euclid(p as i128) as u64
}

/// Deterministic Miller-Rabin for u64.
fn is_prime_u64(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    for p in [2u64, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37] {
        if n == p {
            return true;
        }
        if n.is_multiple_of(p) {
            return false;
        }
    }
    let mut d = n - 1;
    let mut s = 0u32;
    while d.is_multiple_of(2) {
        d /= 2;
        s += 1;
    }
    let pow_mod = |mut b: u64, mut e: u64, m: u64| -> u64 {
        let mut acc: u128 = 1;
        let mut bb = b as u128 % m as u128;
        while e > 0 {
            if e & 1 == 1 {
                acc = acc * bb % m as u128;
            }
            bb = bb * bb % m as u128;
            e >>= 1;
        }
        b = acc as u64;
        b
    };
    'witness: for a in [2u64, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37] {
        let mut x = pow_mod(a, d, n);
        if x == 1 || x == n - 1 {
            continue;
        }
        for _ in 1..s {
            x = pow_mod(x, 2, n);
            if x == n - 1 {
                continue 'witness;
            }
        }
        return false;
    }
    true
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn rational_round_trip() {
        let f = FieldSpec::Rationals;
        for s in ["0", "1", "-3", "2/3", "-7/5", "10/4"] {
            let v = f.parse(s).unwrap();
            let out = f.format(&v);
            let back = f.parse(&out).unwrap();
            assert_eq!(v, back);
        }
        assert_eq!(f.format(&f.parse("10/4").unwrap()), "5/2");
    }

    #[test]
    fn gf5_arithmetic() {
        let f = FieldSpec::prime_field(5).unwrap();
        let a = f.parse("3").unwrap();
        let b = f.parse("4").unwrap();
        assert_eq!(f.format(&f.add(&a, &b)), "2");
        assert_eq!(f.format(&f.mul(&a, &b)), "2");
        assert_eq!(f.format(&f.inv(&a).unwrap()), "2");
        assert_eq!(f.parse("-1").unwrap(), Scalar::Mod(4));
    }

    #[test]
    fn rejects_composite_characteristic() {
        assert!(FieldSpec::prime_field(6).is_err());
        assert!(FieldSpec::prime_field(1).is_err());
        assert!(FieldSpec::prime_field(7919).is_ok());
    }

    #[test]
    fn field_names() {
        assert_eq!(FieldSpec::parse_name("Q").unwrap(), FieldSpec::Rationals);
        assert_eq!(
            FieldSpec::parse_name("GF(5)").unwrap(),
            FieldSpec::PrimeField(5)
        );
        assert!(FieldSpec::parse_name("GF(4)").is_err());
        assert!(FieldSpec::parse_name("R").is_err());
    }
}
