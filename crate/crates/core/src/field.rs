//! Arithmetic in GF(p) for word-sized primes.

use crate::error::{Error, Result};

/// The prime field GF(p), `2 <= p < 2^31`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct PrimeField {
    p: u64,
}

pub fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    let mut d = 2;
    while d * d <= n {
        if n.is_multiple_of(d) {
            return false;
        }
        d += 1;
    }
    true
}

impl PrimeField {
    pub const MAX_MODULUS: u64 = 1 << 31;

    pub fn new(p: u64) -> Result<Self> {
        if p >= Self::MAX_MODULUS || !is_prime(p) {
            return Err(Error::input(format!("{p} is not a prime below 2^31")));
        }
        Ok(PrimeField { p })
    }

    /// Smallest admissible prime field with at least `n` elements.
    pub fn at_least(n: u64) -> Result<Self> {
        let mut p = n.max(2);
        while p < Self::MAX_MODULUS {
            if is_prime(p) {
                return Ok(PrimeField { p });
            }
            p += 1;
        }
        Err(Error::precondition(format!("no prime field of size >= {n} below 2^31")))
    }

    pub fn modulus(&self) -> u64 {
        self.p
    }

    pub fn reduce(&self, x: i64) -> u64 {
        x.rem_euclid(self.p as i64) as u64
    }

    pub fn add(&self, a: u64, b: u64) -> u64 {
        (a + b) % self.p
    }

    pub fn sub(&self, a: u64, b: u64) -> u64 {
        (a + self.p - b) % self.p
    }

    pub fn neg(&self, a: u64) -> u64 {
        (self.p - a) % self.p
    }

    pub fn mul(&self, a: u64, b: u64) -> u64 {
        a * b % self.p
    }

    pub fn pow(&self, mut base: u64, mut exp: u64) -> u64 {
        let mut acc = 1 % self.p;
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

    /// Multiplicative inverse; `a` must be nonzero.
    pub fn inv(&self, a: u64) -> u64 {
        debug_assert!(!a.is_multiple_of(self.p));
        self.pow(a, self.p - 2)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn rejects_composites_and_large_moduli() {
        assert!(PrimeField::new(9).is_err());
        assert!(PrimeField::new(1).is_err());
        assert!(PrimeField::new(2147483659).is_err());
        assert!(PrimeField::new(2147483647).is_ok());
    }

    #[test]
    fn inverses_multiply_to_one() {
        let f = PrimeField::new(13).unwrap();
        for a in 1..13 {
            assert_eq!(f.mul(a, f.inv(a)), 1);
        }
        assert_eq!(f.reduce(-1), 12);
        assert_eq!(f.neg(0), 0);
    }

    #[test]
    fn smallest_field_above_bound() {
        assert_eq!(PrimeField::at_least(1024).unwrap().modulus(), 1031);
        assert_eq!(PrimeField::at_least(0).unwrap().modulus(), 2);
    }

    #[test]
    fn large_modulus_products_do_not_overflow() {
        let f = PrimeField::new(2147483647).unwrap();
        assert_eq!(f.mul(2147483646, 2147483646), 1);
    }
}
