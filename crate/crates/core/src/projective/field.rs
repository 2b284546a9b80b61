//! Exact scalar fields: the rationals and prime fields `F_p`.
//!
//! Elements are plain values; all arithmetic goes through a field context
//! so that a prime-field element never has to carry its modulus around.

use std::fmt;
use std::hash::Hash;
use std::str::FromStr;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};

use crate::error::{Error, Result};

/// Largest supported prime modulus (exclusive). Products of two residues fit in `u64`.
pub const MAX_PRIME: u64 = 1 << 32;

/// An exact field together with its element type.
pub trait Field: Copy + fmt::Debug + PartialEq + Eq + Send + Sync + 'static {
    type Elem: Clone + fmt::Debug + fmt::Display + PartialEq + Eq + Hash + Ord + Send + Sync;

    fn zero(&self) -> Self::Elem;
    fn one(&self) -> Self::Elem;
    fn from_i64(&self, value: i64) -> Self::Elem;
    /// `num / den`; fails when `den` is zero in the field.
    fn from_fraction(&self, num: &BigInt, den: &BigInt) -> Result<Self::Elem>;

    fn add(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem;
    fn sub(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem;
    fn mul(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem;
    fn neg(&self, a: &Self::Elem) -> Self::Elem;
    fn inv(&self, a: &Self::Elem) -> Option<Self::Elem>;
    fn is_zero(&self, a: &Self::Elem) -> bool;

    /// 0 for the rationals.
    fn characteristic(&self) -> u64;
    fn descriptor(&self) -> FieldDescriptor;

    /// Reduces an element into `target`, failing when a denominator vanishes mod p
    /// or when the fields are incompatible.
    fn reduce_into(&self, a: &Self::Elem, target: PrimeField) -> Result<u64>;

    /// A rational representative (residues map to `0..p`).
    fn lift(&self, a: &Self::Elem) -> BigRational;

    /// Rank of a dense row-major matrix with `cols` columns.
    fn rank(&self, rows: Vec<Vec<Self::Elem>>, cols: usize) -> usize {
        crate::projective::matrix::gaussian_rank(*self, rows, cols)
    }

    fn pow(&self, a: &Self::Elem, mut exp: u32) -> Self::Elem {
        let mut base = a.clone();
        let mut acc = self.one();
        while exp > 0 {
            if exp & 1 == 1 {
                acc = self.mul(&acc, &base);
            }
            exp >>= 1;
            if exp > 0 {
                base = self.mul(&base, &base);
            }
        }
        acc
    }

    fn div(&self, a: &Self::Elem, b: &Self::Elem) -> Option<Self::Elem> {
        self.inv(b).map(|b_inv| self.mul(a, &b_inv))
    }
}

/// Textual field tag used by the document formats: `rational` or `prime:<p>`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum FieldDescriptor {
    Rational,
    Prime(u64),
}

impl fmt::Display for FieldDescriptor {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            FieldDescriptor::Rational => write!(f, "rational"),
            FieldDescriptor::Prime(p) => write!(f, "prime:{p}"),
        }
    }
}

impl FromStr for FieldDescriptor {
    type Err = String;

    fn from_str(s: &str) -> std::result::Result<Self, Self::Err> {
        if s == "rational" {
            return Ok(FieldDescriptor::Rational);
        }
        match s.strip_prefix("prime:") {
            Some(p) => p
                .parse::<u64>()
                .map(FieldDescriptor::Prime)
                .map_err(|e| format!("bad prime `{p}`: {e}")),
            None => Err(format!("unknown field `{s}`, expected `rational` or `prime:<p>`")),
        }
    }
}

/// The field of rational numbers.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub struct Rationals;

impl Field for Rationals {
    type Elem = BigRational;

    fn zero(&self) -> BigRational {
        BigRational::zero()
    }

    fn one(&self) -> BigRational {
        BigRational::one()
    }

    fn from_i64(&self, value: i64) -> BigRational {
        BigRational::from_integer(BigInt::from(value))
    }

    fn from_fraction(&self, num: &BigInt, den: &BigInt) -> Result<BigRational> {
        if den.is_zero() {
            return Err(Error::NotRepresentable(format!("{num}/0")));
        }
        Ok(BigRational::new(num.clone(), den.clone()))
    }

    fn add(&self, a: &BigRational, b: &BigRational) -> BigRational {
        a + b
    }

    fn sub(&self, a: &BigRational, b: &BigRational) -> BigRational {
        a - b
    }

    fn mul(&self, a: &BigRational, b: &BigRational) -> BigRational {
        a * b
    }

    fn neg(&self, a: &BigRational) -> BigRational {
        -a
    }

    fn inv(&self, a: &BigRational) -> Option<BigRational> {
        (!a.is_zero()).then(|| a.recip())
    }

    fn is_zero(&self, a: &BigRational) -> bool {
        a.is_zero()
    }

    fn characteristic(&self) -> u64 {
        0
    }

    fn descriptor(&self) -> FieldDescriptor {
        FieldDescriptor::Rational
    }

    fn reduce_into(&self, a: &BigRational, target: PrimeField) -> Result<u64> {
        let p = BigInt::from(target.modulus());
        let num = a.numer().mod_floor(&p).to_u64().expect("residue fits");
        let den = a.denom().mod_floor(&p).to_u64().expect("residue fits");
        let den_inv = target
            .inv(&den)
            .ok_or_else(|| Error::NotRepresentable(format!("{a} has denominator divisible by {p}")))?;
        Ok(target.mul(&num, &den_inv))
    }

    fn lift(&self, a: &BigRational) -> BigRational {
        a.clone()
    }

    fn rank(&self, rows: Vec<Vec<BigRational>>, cols: usize) -> usize {
        crate::projective::matrix::rational_rank(rows, cols)
    }
}

/// The prime field `F_p` with `p < 2^32`; elements are canonical residues in `[0, p)`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct PrimeField {
    p: u64,
}

impl PrimeField {
    pub fn new(p: u64) -> Result<Self> {
        if p >= MAX_PRIME || !is_prime(p) {
            return Err(Error::NotPrime(p));
        }
        Ok(PrimeField { p })
    }

    pub fn modulus(&self) -> u64 {
        self.p
    }

    /// The residue class of `value`.
    pub fn elem(&self, value: i64) -> u64 {
        value.rem_euclid(self.p as i64) as u64
    }

    /// All residues `0..p`.
    pub fn elements(&self) -> impl Iterator<Item = u64> {
        0..self.p
    }
}

impl Field for PrimeField {
    type Elem = u64;

    fn zero(&self) -> u64 {
        0
    }

    fn one(&self) -> u64 {
        1
    }

    fn from_i64(&self, value: i64) -> u64 {
        self.elem(value)
    }

    fn from_fraction(&self, num: &BigInt, den: &BigInt) -> Result<u64> {
        let p = BigInt::from(self.p);
        let n = num.mod_floor(&p).to_u64().expect("residue fits");
        let d = den.mod_floor(&p).to_u64().expect("residue fits");
        let d_inv = self
            .inv(&d)
            .ok_or_else(|| Error::NotRepresentable(format!("{num}/{den} modulo {}", self.p)))?;
        Ok(self.mul(&n, &d_inv))
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

    fn mul(&self, a: &u64, b: &u64) -> u64 {
        (a * b) % self.p
    }

    fn neg(&self, a: &u64) -> u64 {
        if *a == 0 {
            0
        } else {
            self.p - a
        }
    }

    fn inv(&self, a: &u64) -> Option<u64> {
        if *a == 0 {
            return None;
        }
        // extended Euclid on (a, p)
        let (mut r0, mut r1) = (self.p as i64, *a as i64);
        let (mut t0, mut t1) = (0i64, 1i64);
        while r1 != 0 {
            let q = r0 / r1;
            (r0, r1) = (r1, r0 - q * r1);
            (t0, t1) = (t1, t0 - q * t1);
        }
        debug_assert_eq!(r0, 1);
        Some(self.elem(t0))
    }

    fn is_zero(&self, a: &u64) -> bool {
        *a == 0
    }

    fn characteristic(&self) -> u64 {
        self.p
    }

    fn descriptor(&self) -> FieldDescriptor {
        FieldDescriptor::Prime(self.p)
    }

    fn reduce_into(&self, a: &u64, target: PrimeField) -> Result<u64> {
        if target.p != self.p {
            return Err(Error::NotRepresentable(format!(
                "residue mod {} cannot be reduced mod {}",
                self.p, target.p
            )));
        }
        Ok(*a)
    }

    fn lift(&self, a: &u64) -> BigRational {
        BigRational::from_integer(BigInt::from(*a))
    }
}

/// Trial-division primality test; fine for `p < 2^32`.
pub fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    if n % 2 == 0 {
        return n == 2;
    }
    let mut d = 3u64;
    while d * d <= n {
        if n % d == 0 {
            return false;
        }
        d += 2;
    }
    true
}

/// Parses `a`, `-a` or `a/b` into a numerator/denominator pair (denominator positive).
pub fn parse_fraction(s: &str) -> std::result::Result<(BigInt, BigInt), String> {
    let (num, den) = match s.split_once('/') {
        Some((n, d)) => (n, d),
        None => (s, "1"),
    };
    let num: BigInt = num.parse().map_err(|_| format!("bad integer `{num}`"))?;
    let den: BigInt = den.parse().map_err(|_| format!("bad integer `{den}`"))?;
    if den.is_zero() {
        return Err(format!("zero denominator in `{s}`"));
    }
    if den.is_negative() {
        Ok((-num, -den))
    } else {
        Ok((num, den))
    }
}
