//! Arithmetic in the prime field `F_p`.
//!
//! Elements are plain `u32` values held in canonical form `[0, p)`. Products go
//! through `u64` so no intermediate ever overflows for `p < 2^31`.

use crate::error::{Error, Result};

/// The prime field `F_p` with `2 <= p < 2^31`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct PrimeField {
    p: u32,
}

fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    if n.is_multiple_of(2) {
        return n == 2;
    }
    let mut d = 3u64;
    while d * d <= n {
        if n.is_multiple_of(d) {
            return false;
        }
        d += 2;
    }
    true
}

impl PrimeField {
    pub fn new(p: u64) -> Result<Self> {
        if !(2..(1u64 << 31)).contains(&p) {
            return Err(Error::CharacteristicRange(p));
        }
        if !is_prime(p) {
            return Err(Error::NotPrime(p));
        }
        Ok(PrimeField { p: p as u32 })
    }

    #[inline]
    pub fn characteristic(&self) -> u32 {
        self.p
    }

    /// Reduces an arbitrary signed integer to its canonical representative.
    pub fn from_i64(&self, a: i64) -> u32 {
        a.rem_euclid(self.p as i64) as u32
    }

    pub fn from_u64(&self, a: u64) -> u32 {
        (a % self.p as u64) as u32
    }

    #[inline]
    pub fn add(&self, a: u32, b: u32) -> u32 {
        let s = a as u64 + b as u64;
        let p = self.p as u64;
        (if s >= p { s - p } else { s }) as u32
    }

    #[inline]
    pub fn sub(&self, a: u32, b: u32) -> u32 {
        if a >= b {
            a - b
        } else {
            (a as u64 + self.p as u64 - b as u64) as u32
        }
    }

    #[inline]
    pub fn neg(&self, a: u32) -> u32 {
        if a == 0 {
            0
        } else {
            self.p - a
        }
    }

    #[inline]
    pub fn mul(&self, a: u32, b: u32) -> u32 {
        ((a as u64 * b as u64) % self.p as u64) as u32
    }

    pub fn pow(&self, a: u32, mut e: u64) -> u32 {
        let mut base = a % self.p;
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

    /// Multiplicative inverse via Fermat, `a^(p-2)`.
    pub fn inv(&self, a: u32) -> Result<u32> {
        if a.is_multiple_of(self.p) {
            return Err(Error::Domain(format!("inversion of zero in F_{}", self.p)));
        }
        Ok(self.pow(a, self.p as u64 - 2))
    }

    /// Returns `e` with `q = p^e`, or an error when `q` is not a power of `p`.
    pub fn log_p(&self, q: u64) -> Result<u32> {
        if q == 0 {
            return Err(Error::NotPowerOfP { q, p: self.p });
        }
        let mut e = 0;
        let mut r = q;
        while r > 1 {
            if !r.is_multiple_of(self.p as u64) {
                return Err(Error::NotPowerOfP { q, p: self.p });
            }
            r /= self.p as u64;
            e += 1;
        }
        Ok(e)
    }

    /// `p^e`, failing when it does not fit in 64 bits.
    pub fn power_of_p(&self, e: u32) -> Result<u64> {
        (self.p as u64)
            .checked_pow(e)
            .ok_or_else(|| Error::ExponentOverflow(format!("{}^{} exceeds 64 bits", self.p, e)))
    }

    /// Symmetric representative, used only for display.
    pub fn signed(&self, a: u32) -> i64 {
        if (a as u64) * 2 > self.p as u64 {
            a as i64 - self.p as i64
        } else {
            a as i64
        }
    }
}
