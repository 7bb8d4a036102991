//! Arithmetic in the prime field F_p.
//!
//! Everything in this crate computes with residues in `[0, p)` stored as
//! `u64`. [`Fp`] is the field context (the modulus plus primality data) and
//! [`Scalar`] a residue paired with its modulus, used at API boundaries
//! where a bare `u64` would be ambiguous.

use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

/// The prime field F_p for an odd prime p.
#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub struct Fp {
    p: u64,
}

impl Fp {
    /// Creates the field, checking that `p` is an odd prime.
    pub fn new(p: u64) -> Result<Self, FieldError> {
        if p < 3 || !is_prime(p) {
            return Err(FieldError::NotAnOddPrime(p));
        }
        Ok(Fp { p })
    }

    pub fn modulus(&self) -> u64 {
        self.p
    }

    #[inline]
    pub fn add(&self, a: u64, b: u64) -> u64 {
        let s = a + b;
        if s >= self.p {
            s - self.p
        } else {
            s
        }
    }

    #[inline]
    pub fn sub(&self, a: u64, b: u64) -> u64 {
        if a >= b {
            a - b
        } else {
            a + self.p - b
        }
    }

    #[inline]
    pub fn neg(&self, a: u64) -> u64 {
        if a == 0 {
            0
        } else {
            self.p - a
        }
    }

    #[inline]
    pub fn mul(&self, a: u64, b: u64) -> u64 {
        // moduli stay far below 2^32, so the product fits in u64
        (a * b) % self.p
    }

    pub fn pow(&self, mut base: u64, mut exp: u64) -> u64 {
        let mut acc = 1;
        base %= self.p;
        while exp > 0 {
            if exp & 1 == 1 {
                acc = self.mul(acc, base);
            }
            base = self.mul(base, base);
            exp >>= 1;
        }
        acc
    }

    /// Multiplicative inverse by Fermat's little theorem.
    pub fn inv(&self, a: u64) -> u64 {
        assert!(a % self.p != 0, "inverse of zero in F_{}", self.p);
        self.pow(a, self.p - 2)
    }

    /// Reduces an arbitrary signed integer into `[0, p)`.
    #[inline]
    pub fn reduce_i64(&self, a: i64) -> u64 {
        let p = self.p as i64;
        (((a % p) + p) % p) as u64
    }

    pub fn scalar(&self, a: i64) -> Scalar {
        Scalar {
            value: self.reduce_i64(a),
            p: self.p,
        }
    }
}

/// A residue in `[0, p)` tagged with its modulus.
#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub struct Scalar {
    pub value: u64,
    pub p: u64,
}

impl Scalar {
    pub fn new(value: i64, p: u64) -> Self {
        let q = p as i64;
        Scalar {
            value: (((value % q) + q) % q) as u64,
            p,
        }
    }

    pub fn is_zero(&self) -> bool {
        self.value == 0
    }

    pub fn inv(&self) -> Scalar {
        let f = Fp { p: self.p };
        Scalar {
            value: f.inv(self.value),
            p: self.p,
        }
    }

    fn field(&self, other: &Scalar) -> Fp {
        assert_eq!(self.p, other.p, "scalars over different moduli");
        Fp { p: self.p }
    }
}

impl Add for Scalar {
    type Output = Scalar;
    fn add(self, rhs: Scalar) -> Scalar {
        let f = self.field(&rhs);
        Scalar {
            value: f.add(self.value, rhs.value),
            p: self.p,
        }
    }
}

impl Sub for Scalar {
    type Output = Scalar;
    fn sub(self, rhs: Scalar) -> Scalar {
        let f = self.field(&rhs);
        Scalar {
            value: f.sub(self.value, rhs.value),
            p: self.p,
        }
    }
}

impl Mul for Scalar {
    type Output = Scalar;
    fn mul(self, rhs: Scalar) -> Scalar {
        let f = self.field(&rhs);
        Scalar {
            value: f.mul(self.value, rhs.value),
            p: self.p,
        }
    }
}

impl Neg for Scalar {
    type Output = Scalar;
    fn neg(self) -> Scalar {
        Scalar {
            value: Fp { p: self.p }.neg(self.value),
            p: self.p,
        }
    }
}

impl fmt::Display for Scalar {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.value)
    }
}

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum FieldError {
    #[error("{0} is not an odd prime")]
    NotAnOddPrime(u64),
}

/// Trial division; moduli here are tiny.
pub fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    if n % 2 == 0 {
        return n == 2;
    }
    let mut d = 3;
    while d * d <= n {
        if n % d == 0 {
            return false;
        }
        d += 2;
    }
    true
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn primality() {
        assert!(is_prime(2));
        assert!(is_prime(5));
        assert!(is_prime(7));
        assert!(!is_prime(1));
        assert!(!is_prime(4));
        assert!(!is_prime(9));
        assert!(is_prime(101));
    }

    #[test]
    fn field_rejects_composites() {
        assert!(Fp::new(4).is_err());
        assert!(Fp::new(2).is_err());
        assert!(Fp::new(5).is_ok());
    }

    #[test]
    fn arithmetic_mod_5() {
        let f = Fp::new(5).unwrap();
        assert_eq!(f.add(3, 4), 2);
        assert_eq!(f.sub(1, 3), 3);
        assert_eq!(f.mul(3, 4), 2);
        assert_eq!(f.neg(2), 3);
        assert_eq!(f.inv(3), 2); // 3*2 = 6 = 1
        assert_eq!(f.reduce_i64(-7), 3);
    }

    #[test]
    fn every_nonzero_invertible() {
        for p in [5u64, 7, 11] {
            let f = Fp::new(p).unwrap();
            for a in 1..p {
                assert_eq!(f.mul(a, f.inv(a)), 1);
            }
        }
    }
}
