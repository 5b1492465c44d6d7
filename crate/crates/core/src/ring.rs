//! Arithmetic in the residue ring Z_m.
//!
//! Brackets take their coefficients in Z_m. Elements carry their modulus so
//! that mixing elements of different rings is caught instead of silently
//! reduced. Values are always stored fully reduced, so equality and hashing
//! are plain value comparisons.

use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum RingError {
    #[error("modulus must be at least 2, got {0}")]
    InvalidModulus(u64),
    #[error("modulus mismatch: {0} vs {1}")]
    ModulusMismatch(u32, u32),
    #[error("{value} is not a unit modulo {modulus}")]
    NotAUnit { value: u32, modulus: u32 },
}

/// A modulus `m >= 2` that fits in a machine word.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Modulus(u32);

impl Modulus {
    pub fn new(m: u64) -> Result<Self, RingError> {
        if m < 2 || m > u32::MAX as u64 {
            return Err(RingError::InvalidModulus(m));
        }
        Ok(Modulus(m as u32))
    }

    pub fn get(self) -> u32 {
        self.0
    }

    /// Reduces an arbitrary integer into `[0, m)`.
    pub fn elem(self, value: i64) -> RingElem {
        let m = self.0 as i64;
        RingElem {
            value: value.rem_euclid(m) as u32,
            modulus: self.0,
        }
    }

    pub fn zero(self) -> RingElem {
        self.elem(0)
    }

    pub fn one(self) -> RingElem {
        self.elem(1)
    }

    /// All units of Z_m in ascending order.
    pub fn units(self) -> Vec<RingElem> {
        (1..self.0 as i64)
            .map(|v| self.elem(v))
            .filter(|e| e.is_unit())
            .collect()
    }
}

impl fmt::Display for Modulus {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.0)
    }
}

/// An element of Z_m, kept reduced.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct RingElem {
    value: u32,
    modulus: u32,
}

impl RingElem {
    pub fn value(self) -> u32 {
        self.value
    }

    pub fn modulus(self) -> Modulus {
        Modulus(self.modulus)
    }

    fn same_ring(self, other: RingElem) -> Result<(), RingError> {
        if self.modulus == other.modulus {
            Ok(())
        } else {
            Err(RingError::ModulusMismatch(self.modulus, other.modulus))
        }
    }

    pub fn checked_add(self, other: RingElem) -> Result<RingElem, RingError> {
        self.same_ring(other)?;
        let m = self.modulus as u64;
        Ok(RingElem {
            value: ((self.value as u64 + other.value as u64) % m) as u32,
            modulus: self.modulus,
        })
    }

    pub fn checked_mul(self, other: RingElem) -> Result<RingElem, RingError> {
        self.same_ring(other)?;
        let m = self.modulus as u64;
        Ok(RingElem {
            value: ((self.value as u64 * other.value as u64) % m) as u32,
            modulus: self.modulus,
        })
    }

    pub fn is_zero(self) -> bool {
        self.value == 0
    }

    pub fn is_unit(self) -> bool {
        gcd(self.value as u64, self.modulus as u64) == 1
    }

    /// Multiplicative inverse via the extended Euclidean algorithm.
    pub fn inv(self) -> Result<RingElem, RingError> {
        let (g, x, _) = extended_gcd(self.value as i64, self.modulus as i64);
        if g != 1 {
            return Err(RingError::NotAUnit {
                value: self.value,
                modulus: self.modulus,
            });
        }
        Ok(self.modulus().elem(x))
    }

    /// `self^e`; negative exponents require a unit.
    pub fn pow(self, e: i64) -> Result<RingElem, RingError> {
        let base = if e < 0 { self.inv()? } else { self };
        let mut exp = e.unsigned_abs();
        let m = self.modulus as u64;
        let mut acc = 1 % m;
        let mut b = base.value as u64;
        while exp > 0 {
            if exp & 1 == 1 {
                acc = acc * b % m;
            }
            b = b * b % m;
            exp >>= 1;
        }
        Ok(RingElem {
            value: acc as u32,
            modulus: self.modulus,
        })
    }
}

impl fmt::Display for RingElem {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.value)
    }
}

// Operator forms panic on a modulus mismatch; use the `checked_*` methods
// when the operands come from different sources.
impl Add for RingElem {
    type Output = RingElem;
    fn add(self, rhs: RingElem) -> RingElem {
        self.checked_add(rhs)
            .expect("ring elements from different moduli")
    }
}

impl Sub for RingElem {
    type Output = RingElem;
    fn sub(self, rhs: RingElem) -> RingElem {
        self + (-rhs)
    }
}

impl Mul for RingElem {
    type Output = RingElem;
    fn mul(self, rhs: RingElem) -> RingElem {
        self.checked_mul(rhs)
            .expect("ring elements from different moduli")
    }
}

impl Neg for RingElem {
    type Output = RingElem;
    fn neg(self) -> RingElem {
        RingElem {
            value: (self.modulus - self.value) % self.modulus,
            modulus: self.modulus,
        }
    }
}

pub(crate) fn gcd(mut a: u64, mut b: u64) -> u64 {
    while b != 0 {
        let t = a % b;
        a = b;
        b = t;
    }
    a
}

/// Returns `(g, x, y)` with `a*x + b*y = g = gcd(a, b)`.
pub fn extended_gcd(a: i64, b: i64) -> (i64, i64, i64) {
    let (mut old_r, mut r) = (a, b);
    let (mut old_s, mut s) = (1i64, 0i64);
    let (mut old_t, mut t) = (0i64, 1i64);
    while r != 0 {
        let q = old_r / r;
        (old_r, r) = (r, old_r - q * r);
        (old_s, s) = (s, old_s - q * s);
        (old_t, t) = (t, old_t - q * t);
    }
    if old_r < 0 {
        (-old_r, -old_s, -old_t)
    } else {
        (old_r, old_s, old_t)
    }
}
