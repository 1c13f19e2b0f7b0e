//! Exact coefficient arithmetic.
//!
//! Two field families are supported: the rationals with arbitrary precision
//! integers, and prime fields `GF(p)` with `p < 2^63`. A computation fixes one
//! [`Field`] up front; every [`Scalar`] remembers which field it lives in.

use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Field {
    Rationals,
    Prime(u64),
}

impl Field {
    /// `GF(p)`; rejects composite or out-of-range moduli.
    pub fn prime(p: u64) -> Result<Self> {
        if p >= 1 << 63 {
            return Err(Error::InvalidField(format!("modulus {p} is not below 2^63")));
        }
        if !is_prime(p) {
            return Err(Error::InvalidField(format!("{p} is not prime")));
        }
        Ok(Field::Prime(p))
    }

    pub fn zero(self) -> Scalar {
        match self {
            Field::Rationals => Scalar::Rational(BigRational::zero()),
            Field::Prime(p) => Scalar::Modular { value: 0, modulus: p },
        }
    }

    pub fn one(self) -> Scalar {
        self.from_i64(1)
    }

    pub fn from_i64(self, n: i64) -> Scalar {
        match self {
            Field::Rationals => Scalar::Rational(BigRational::from_integer(BigInt::from(n))),
            Field::Prime(p) => Scalar::Modular {
                value: reduce_i128(n as i128, p),
                modulus: p,
            },
        }
    }

    pub fn from_bigint(self, n: &BigInt) -> Scalar {
        match self {
            Field::Rationals => Scalar::Rational(BigRational::from_integer(n.clone())),
            Field::Prime(p) => {
                let r = n.mod_floor_u64(p);
                Scalar::Modular { value: r, modulus: p }
            }
        }
    }

    /// `num / den` in this field.
    pub fn ratio(self, num: &BigInt, den: &BigInt) -> Result<Scalar> {
        let n = self.from_bigint(num);
        let d = self.from_bigint(den);
        n.try_div(&d)
    }

    /// Parses `p/q` or an integer literal, with optional leading sign.
    pub fn parse_scalar(self, text: &str) -> Result<Scalar> {
        let text = text.trim();
        let bad = || Error::InvalidField(format!("malformed coefficient `{text}`"));
        let (num, den) = match text.split_once('/') {
            Some((n, d)) => (n.trim(), d.trim()),
            None => (text, "1"),
        };
        let num: BigInt = num.parse().map_err(|_| bad())?;
        let den: BigInt = den.parse().map_err(|_| bad())?;
        self.ratio(&num, &den)
    }
}

impl fmt::Display for Field {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Field::Rationals => write!(f, "Q"),
            Field::Prime(p) => write!(f, "GF({p})"),
        }
    }
}

/// An element of the configured field, always in canonical form: rationals
/// are fully reduced with a positive denominator, residues lie in `[0, p)`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub enum Scalar {
    Rational(BigRational),
    Modular { value: u64, modulus: u64 },
}

impl Scalar {
    pub fn field(&self) -> Field {
        match self {
            Scalar::Rational(_) => Field::Rationals,
            Scalar::Modular { modulus, .. } => Field::Prime(*modulus),
        }
    }

    pub fn is_zero(&self) -> bool {
        match self {
            Scalar::Rational(r) => r.is_zero(),
            Scalar::Modular { value, .. } => *value == 0,
        }
    }

    pub fn is_one(&self) -> bool {
        match self {
            Scalar::Rational(r) => r.is_one(),
            Scalar::Modular { value, .. } => *value == 1,
        }
    }

    /// True when the printed form carries a minus sign.
    pub fn is_negative(&self) -> bool {
        match self {
            Scalar::Rational(r) => r.is_negative(),
            Scalar::Modular { .. } => false,
        }
    }

    pub fn try_add(&self, other: &Scalar) -> Result<Scalar> {
        match (self, other) {
            (Scalar::Rational(a), Scalar::Rational(b)) => Ok(Scalar::Rational(a + b)),
            (Scalar::Modular { value: a, modulus: p }, Scalar::Modular { value: b, modulus: q }) if p == q => {
                Ok(Scalar::Modular {
                    value: ((*a as u128 + *b as u128) % *p as u128) as u64,
                    modulus: *p,
                })
            }
            _ => Err(Error::FieldMismatch(self.field(), other.field())),
        }
    }

    pub fn try_mul(&self, other: &Scalar) -> Result<Scalar> {
        match (self, other) {
            (Scalar::Rational(a), Scalar::Rational(b)) => Ok(Scalar::Rational(a * b)),
            (Scalar::Modular { value: a, modulus: p }, Scalar::Modular { value: b, modulus: q }) if p == q => {
                Ok(Scalar::Modular {
                    value: mul_mod(*a, *b, *p),
                    modulus: *p,
                })
            }
            _ => Err(Error::FieldMismatch(self.field(), other.field())),
        }
    }

    pub fn try_sub(&self, other: &Scalar) -> Result<Scalar> {
        self.try_add(&-other)
    }

    pub fn try_inverse(&self) -> Result<Scalar> {
        if self.is_zero() {
            return Err(Error::DivisionByZero);
        }
        Ok(match self {
            Scalar::Rational(r) => Scalar::Rational(r.recip()),
            Scalar::Modular { value, modulus } => Scalar::Modular {
                value: inverse_mod(*value, *modulus),
                modulus: *modulus,
            },
        })
    }

    pub fn try_div(&self, other: &Scalar) -> Result<Scalar> {
        self.try_mul(&other.try_inverse()?)
    }
}

impl fmt::Display for Scalar {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Scalar::Rational(r) if r.denom().is_one() => write!(f, "{}", r.numer()),
            Scalar::Rational(r) => write!(f, "{}/{}", r.numer(), r.denom()),
            Scalar::Modular { value, .. } => write!(f, "{value}"),
        }
    }
}

// Operator forms panic on mixed fields; a computation fixes its field when the
// problem is constructed, so mixing here is a logic error.
impl<'a> Add<&'a Scalar> for &'a Scalar {
    type Output = Scalar;
    fn add(self, rhs: &'a Scalar) -> Scalar {
        self.try_add(rhs).expect("scalar field mismatch")
    }
}

impl<'a> Sub<&'a Scalar> for &'a Scalar {
    type Output = Scalar;
    fn sub(self, rhs: &'a Scalar) -> Scalar {
        self.try_sub(rhs).expect("scalar field mismatch")
    }
}

impl<'a> Mul<&'a Scalar> for &'a Scalar {
    type Output = Scalar;
    fn mul(self, rhs: &'a Scalar) -> Scalar {
        self.try_mul(rhs).expect("scalar field mismatch")
    }
}

impl Neg for &Scalar {
    type Output = Scalar;
    fn neg(self) -> Scalar {
        match self {
            Scalar::Rational(r) => Scalar::Rational(-r),
            Scalar::Modular { value, modulus } => Scalar::Modular {
                value: if *value == 0 { 0 } else { modulus - value },
                modulus: *modulus,
            },
        }
    }
}

impl Neg for Scalar {
    type Output = Scalar;
    fn neg(self) -> Scalar {
        -&self
    }
}

trait ModFloor {
    fn mod_floor_u64(&self, p: u64) -> u64;
}

impl ModFloor for BigInt {
    fn mod_floor_u64(&self, p: u64) -> u64 {
        use num_integer::Integer;
        let m = BigInt::from(p);
        let r = self.mod_floor(&m);
        r.try_into().expect("residue fits in u64")
    }
}

fn reduce_i128(n: i128, p: u64) -> u64 {
    n.rem_euclid(p as i128) as u64
}

fn mul_mod(a: u64, b: u64, p: u64) -> u64 {
    ((a as u128 * b as u128) % p as u128) as u64
}

fn pow_mod(mut base: u64, mut exp: u64, p: u64) -> u64 {
    let mut acc = 1 % p;
    base %= p;
    while exp > 0 {
        if exp & 1 == 1 {
            acc = mul_mod(acc, base, p);
        }
        base = mul_mod(base, base, p);
        exp >>= 1;
    }
    acc
}

fn inverse_mod(a: u64, p: u64) -> u64 {
    let (mut old_r, mut r) = (a as i128, p as i128);
    let (mut old_s, mut s) = (1i128, 0i128);
    while r != 0 {
        let q = old_r / r;
        (old_r, r) = (r, old_r - q * r);
        (old_s, s) = (s, old_s - q * s);
    }
    old_s.rem_euclid(p as i128) as u64
}

/// Deterministic Miller-Rabin for 64-bit inputs.
fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    const BASES: [u64; 12] = [2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37];
    for &b in &BASES {
        if n.is_multiple_of(b) {
            return n == b;
        }
    }
    let mut d = n - 1;
    let mut s = 0;
    while d.is_multiple_of(2) {
        d /= 2;
        s += 1;
    }
    'witness: for &a in &BASES {
        let mut x = pow_mod(a, d, n);
        if x == 1 || x == n - 1 {
            continue;
        }
        for _ in 1..s {
            x = mul_mod(x, x, n);
            if x == n - 1 {
                continue 'witness;
            }
        }
        return false;
    }
    true
}
