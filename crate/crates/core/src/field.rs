//! Exact scalar arithmetic: arbitrary-precision rationals and prime fields.
//!
//! All linear algebra in this crate is generic over a [`Field`] object that
//! owns the arithmetic of its element type. A `Field` value (not just a type)
//! is threaded through every structure, so a prime modulus chosen at runtime
//! works the same way as the rationals.

use std::fmt;

use num::{BigInt, BigRational, One, Signed, Zero};
use serde::{Deserialize, Serialize};

use crate::error::Error;

/// Runtime description of a base field, as written in input files.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum FieldSpec {
    /// The rational numbers.
    Rationals,
    /// The prime field with `p` elements.
    Prime(u64),
}

impl FieldSpec {
    pub fn characteristic(&self) -> u64 {
        match self {
            FieldSpec::Rationals => 0,
            FieldSpec::Prime(p) => *p,
        }
    }

    pub fn parse(text: &str) -> Result<FieldSpec, String> {
        let t = text.trim();
        if t == "Q" || t == "QQ" || t == "0" {
            return Ok(FieldSpec::Rationals);
        }
        let p: u64 = t
            .parse()
            .map_err(|_| format!("expected `Q` or a prime number, found `{t}`"))?;
        if !is_prime(p) {
            return Err(format!("{p} is not prime"));
        }
        if p >= (1u64 << 31) {
            return Err(format!("prime {p} too large (must be < 2^31)"));
        }
        Ok(FieldSpec::Prime(p))
    }
}

impl fmt::Display for FieldSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            FieldSpec::Rationals => write!(f, "Q"),
            FieldSpec::Prime(p) => write!(f, "F_{p}"),
        }
    }
}

fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    let mut d = 2u64;
    while d * d <= n {
        if n % d == 0 {
            return false;
        }
        d += 1;
    }
    true
}

/// A field together with the arithmetic of its elements.
pub trait Field: Clone + PartialEq + fmt::Debug + Send + Sync + 'static {
    type Elem: Clone + PartialEq + fmt::Debug + Send + Sync + 'static;

    fn spec(&self) -> FieldSpec;
    fn zero(&self) -> Self::Elem;
    fn one(&self) -> Self::Elem;
    fn is_zero(&self, a: &Self::Elem) -> bool;
    fn add(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem;
    fn sub(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem;
    fn neg(&self, a: &Self::Elem) -> Self::Elem;
    fn mul(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem;
    /// Multiplicative inverse; `None` for zero.
    fn inv(&self, a: &Self::Elem) -> Option<Self::Elem>;
    fn from_i64(&self, n: i64) -> Self::Elem;
    fn render(&self, a: &Self::Elem) -> String;

    fn is_one(&self, a: &Self::Elem) -> bool {
        *a == self.one()
    }

    fn div(&self, a: &Self::Elem, b: &Self::Elem) -> Option<Self::Elem> {
        self.inv(b).map(|bi| self.mul(a, &bi))
    }

    /// `y += a * x`, the inner loop of elimination.
    fn axpy(&self, y: &mut Self::Elem, a: &Self::Elem, x: &Self::Elem) {
        if self.is_zero(a) || self.is_zero(x) {
            return;
        }
        *y = self.add(y, &self.mul(a, x));
    }

    /// Exact ratio of integers; fails over `F_p` when `p | den`.
    fn from_ratio(&self, num: i64, den: i64) -> Result<Self::Elem, Error> {
        if den == 0 {
            return Err(Error::Invalid("zero denominator".into()));
        }
        let d = self.from_i64(den);
        self.div(&self.from_i64(num), &d)
            .ok_or_else(|| Error::Invalid(format!("denominator {den} vanishes in {}", self.spec())))
    }
}

/// The field of rational numbers.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Default)]
pub struct Rationals;

impl Field for Rationals {
    type Elem = BigRational;

    fn spec(&self) -> FieldSpec {
        FieldSpec::Rationals
    }
    fn zero(&self) -> BigRational {
        BigRational::zero()
    }
    fn one(&self) -> BigRational {
        BigRational::one()
    }
    fn is_zero(&self, a: &BigRational) -> bool {
        a.is_zero()
    }
    fn add(&self, a: &BigRational, b: &BigRational) -> BigRational {
        a + b
    }
    fn sub(&self, a: &BigRational, b: &BigRational) -> BigRational {
        a - b
    }
    fn neg(&self, a: &BigRational) -> BigRational {
        -a
    }
    fn mul(&self, a: &BigRational, b: &BigRational) -> BigRational {
        if a.is_zero() || b.is_zero() {
            BigRational::zero()
        } else {
            a * b
        }
    }
    fn inv(&self, a: &BigRational) -> Option<BigRational> {
        if a.is_zero() {
            None
        } else {
            Some(a.recip())
        }
    }
    fn from_i64(&self, n: i64) -> BigRational {
        BigRational::from_integer(BigInt::from(n))
    }
    fn render(&self, a: &BigRational) -> String {
        if a.denom().is_one() {
            a.numer().to_string()
        } else if a.is_negative() && (-a).denom().is_one() {
            a.numer().to_string()
        } else {
            format!("{}/{}", a.numer(), a.denom())
        }
    }
    fn axpy(&self, y: &mut BigRational, a: &BigRational, x: &BigRational) {
        if a.is_zero() || x.is_zero() {
            return;
        }
        *y += a * x;
    }
}

/// The prime field `F_p`; elements are canonical residues in `[0, p)`.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct PrimeField {
    p: u64,
}

impl PrimeField {
    /// `p` must be prime and below `2^31` so products fit in `u64`.
    pub fn new(p: u64) -> PrimeField {
        assert!(is_prime(p) && p < (1 << 31), "invalid prime modulus {p}");
        PrimeField { p }
    }

    pub fn modulus(&self) -> u64 {
        self.p
    }
}

impl Field for PrimeField {
    type Elem = u64;

    fn spec(&self) -> FieldSpec {
        FieldSpec::Prime(self.p)
    }
    fn zero(&self) -> u64 {
        0
    }
    fn one(&self) -> u64 {
        1 % self.p
    }
    fn is_zero(&self, a: &u64) -> bool {
        *a == 0
    }
    fn add(&self, a: &u64, b: &u64) -> u64 {
        let s = a + b;
        if s >= self.p {
            s - self.p
        } else {
            s
        }
    }
    fn sub(&self, a: &u64, b: &u64) -> u64 {
        if a >= b {
            a - b
        } else {
            a + self.p - b
        }
    }
    fn neg(&self, a: &u64) -> u64 {
        if *a == 0 {
            0
        } else {
            self.p - a
        }
    }
    fn mul(&self, a: &u64, b: &u64) -> u64 {
        a * b % self.p
    }
    fn inv(&self, a: &u64) -> Option<u64> {
        if *a == 0 {
            return None;
        }
        // Extended Euclid on (a, p).
        let (mut t, mut new_t): (i64, i64) = (0, 1);
        let (mut r, mut new_r): (i64, i64) = (self.p as i64, *a as i64);
        while new_r != 0 {
            let q = r / new_r;
            (t, new_t) = (new_t, t - q * new_t);
            (r, new_r) = (new_r, r - q * new_r);
        }
        debug_assert_eq!(r, 1);
        Some(t.rem_euclid(self.p as i64) as u64)
    }
    fn from_i64(&self, n: i64) -> u64 {
        n.rem_euclid(self.p as i64) as u64
    }
    fn render(&self, a: &u64) -> String {
        a.to_string()
    }
    fn axpy(&self, y: &mut u64, a: &u64, x: &u64) {
        *y = (*y + a * x % self.p) % self.p;
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn prime_field_inverses() {
        let f5 = PrimeField::new(5);
        for a in 1..5u64 {
            let i = f5.inv(&a).unwrap();
            assert_eq!(f5.mul(&a, &i), 1);
        }
        assert_eq!(f5.inv(&0), None);
    }

    #[test]
    fn rational_ratio() {
        let q = Rationals;
        let x = q.from_ratio(2, 3).unwrap();
        assert_eq!(q.render(&x), "2/3");
        let f3 = PrimeField::new(3);
        assert!(f3.from_ratio(1, 3).is_err());
        assert_eq!(f3.from_ratio(1, 2).unwrap(), 2);
    }

    #[test]
    fn field_spec_parsing() {
        assert_eq!(FieldSpec::parse("Q").unwrap(), FieldSpec::Rationals);
        assert_eq!(FieldSpec::parse("5").unwrap(), FieldSpec::Prime(5));
        assert!(FieldSpec::parse("6").is_err());
        assert!(FieldSpec::parse("x").is_err());
    }
}
