//! Arithmetic in prime fields GF(p), p < 2^16.
//!
//! Elements are plain `u16` values in `[0, p)`; the field object carries the
//! modulus. Products of two reduced elements fit in a `u32`.

use std::fmt;

use crate::error::{Error, Result};

#[derive(Clone, Copy, PartialEq, Eq, Hash)]
pub struct PrimeField {
    p: u16,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum ArithOp {
    Add,
    Sub,
    Mul,
    Inv,
    Neg,
}

fn is_prime(n: u32) -> bool {
    if n < 2 {
        return false;
    }
    let mut d = 2u32;
    while d * d <= n {
        if n.is_multiple_of(d) {
            return false;
        }
        d += 1;
    }
    true
}

impl PrimeField {
    pub fn new(p: u32) -> Result<Self> {
        if p >= 1 << 16 || !is_prime(p) {
            return Err(Error::NotPrime(p));
        }
        Ok(PrimeField { p: p as u16 })
    }

    #[inline]
    pub fn p(self) -> u16 {
        self.p
    }

    /// Field size as a `u64`, handy for counting.
    #[inline]
    pub fn order(self) -> u64 {
        self.p as u64
    }

    /// Reduces an arbitrary integer into the field.
    #[inline]
    pub fn reduce(self, x: u64) -> u16 {
        (x % self.p as u64) as u16
    }

    /// Reduces a signed integer into the field.
    #[inline]
    pub fn reduce_signed(self, x: i64) -> u16 {
        x.rem_euclid(self.p as i64) as u16
    }

    #[inline]
    pub fn add(self, a: u16, b: u16) -> u16 {
        let s = a as u32 + b as u32;
        let p = self.p as u32;
        (if s >= p { s - p } else { s }) as u16
    }

    #[inline]
    pub fn sub(self, a: u16, b: u16) -> u16 {
        let p = self.p as u32;
        let s = a as u32 + p - b as u32;
        (if s >= p { s - p } else { s }) as u16
    }

    #[inline]
    pub fn neg(self, a: u16) -> u16 {
        if a == 0 {
            0
        } else {
            self.p - a
        }
    }

    #[inline]
    pub fn mul(self, a: u16, b: u16) -> u16 {
        ((a as u32 * b as u32) % self.p as u32) as u16
    }

    pub fn pow(self, a: u16, mut e: u64) -> u16 {
        let mut base = a;
        let mut acc = 1 % self.p;
        while e > 0 {
            if e & 1 == 1 {
                acc = self.mul(acc, base);
            }
            base = self.mul(base, base);
            e >>= 1;
        }
        acc
    }

    pub fn inv(self, a: u16) -> Result<u16> {
        if a == 0 {
            return Err(Error::DivisionByZero(self.p));
        }
        Ok(self.pow(a, self.p as u64 - 2))
    }

    /// Applies `op` to `a` (and `b` for the binary operations).
    pub fn apply(self, op: ArithOp, a: u16, b: u16) -> Result<u16> {
        let (a, b) = (a % self.p, b % self.p);
        Ok(match op {
            ArithOp::Add => self.add(a, b),
            ArithOp::Sub => self.sub(a, b),
            ArithOp::Mul => self.mul(a, b),
            ArithOp::Neg => self.neg(a),
            ArithOp::Inv => self.inv(a)?,
        })
    }

    /// Smallest generator of the multiplicative group.
    pub fn primitive_element(self) -> u16 {
        if self.p == 2 {
            return 1;
        }
        let n = self.p as u32 - 1;
        let mut factors = Vec::new();
        let mut m = n;
        let mut d = 2;
        while d * d <= m {
            if m.is_multiple_of(d) {
                factors.push(d);
                while m.is_multiple_of(d) {
                    m /= d;
                }
            }
            d += 1;
        }
        if m > 1 {
            factors.push(m);
        }
        (2..self.p)
            .find(|&g| factors.iter().all(|&f| self.pow(g, (n / f) as u64) != 1))
            .expect("multiplicative group of a prime field is cyclic")
    }

    /// The inverse of 2, when it exists.
    pub fn half(self) -> Result<u16> {
        if self.p == 2 {
            return Err(Error::EvenCharacteristic);
        }
        Ok((self.p / 2) + 1)
    }
}

impl fmt::Debug for PrimeField {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "GF({})", self.p)
    }
}

impl fmt::Display for PrimeField {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "GF({})", self.p)
    }
}
