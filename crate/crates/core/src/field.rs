//! Prime-field scalars.

use crate::error::{Error, Result};

/// The prime field GF(p) for a machine-word prime `p`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct FieldSpec {
    p: u64,
}

impl FieldSpec {
    /// Validates that `p` is prime.
    pub fn new(p: u64) -> Result<Self> {
        if is_prime_u64(p) {
            Ok(Self { p })
        } else {
            Err(Error::NotPrime(p))
        }
    }

    pub fn gf2() -> Self {
        Self { p: 2 }
    }

    #[inline]
    pub fn p(&self) -> u64 {
        self.p
    }

    pub fn check(&self, a: u64) -> Result<u64> {
        if a < self.p {
            Ok(a)
        } else {
            Err(Error::ResidueOutOfRange {
                value: a,
                p: self.p,
            })
        }
    }

    #[inline]
    pub fn add(&self, a: u64, b: u64) -> u64 {
        let (s, carry) = a.overflowing_add(b);
        if carry || s >= self.p {
            s.wrapping_sub(self.p)
        } else {
            s
        }
    }

    #[inline]
    pub fn sub(&self, a: u64, b: u64) -> u64 {
        if a >= b {
            a - b
        } else {
            self.p - (b - a)
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

    /// Operands must already be residues.
    #[inline]
    pub fn mul(&self, a: u64, b: u64) -> u64 {
        if self.p < 1 << 32 {
            (a * b) % self.p
        } else {
            ((a as u128 * b as u128) % self.p as u128) as u64
        }
    }

    pub fn pow(&self, mut base: u64, mut exp: u64) -> u64 {
        let mut acc = 1 % self.p;
        while exp > 0 {
            if exp & 1 == 1 {
                acc = self.mul(acc, base);
            }
            base = self.mul(base, base);
            exp >>= 1;
        }
        acc
    }

    /// Inverse by Fermat's little theorem.
    pub fn inv(&self, a: u64) -> Result<u64> {
        if a.is_multiple_of(self.p) {
            return Err(Error::ZeroInverse);
        }
        Ok(self.pow(a % self.p, self.p - 2))
    }
}

fn mul_mod(a: u64, b: u64, m: u64) -> u64 {
    ((a as u128 * b as u128) % m as u128) as u64
}

fn pow_mod(mut base: u64, mut exp: u64, m: u64) -> u64 {
    let mut acc = 1 % m;
    base %= m;
    while exp > 0 {
        if exp & 1 == 1 {
            acc = mul_mod(acc, base, m);
        }
        base = mul_mod(base, base, m);
        exp >>= 1;
    }
    acc
}

/// Deterministic Miller-Rabin; these witnesses are exact for all 64-bit inputs.
pub fn is_prime_u64(n: u64) -> bool {
    const WITNESSES: [u64; 12] = [2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37];
    if n < 2 {
        return false;
    }
    for &w in &WITNESSES {
        if n.is_multiple_of(w) {
            return n == w;
        }
    }
    let s = (n - 1).trailing_zeros();
    let d = (n - 1) >> s;
    'witness: for &a in &WITNESSES {
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

#[cfg(test)]
mod tests {
    use super::*;

    fn trial_division(n: u64) -> bool {
        n >= 2
            && (2..)
                .take_while(|d| d * d <= n)
                .all(|d| !n.is_multiple_of(d))
    }

    #[test]
    fn primality_matches_trial_division() {
        for n in 0..20_000 {
            assert_eq!(is_prime_u64(n), trial_division(n), "n = {n}");
        }
        assert!(is_prime_u64(18_446_744_073_709_551_557));
        assert!(!is_prime_u64(u64::MAX));
        // strong pseudoprime to bases 2..=23 combined
        assert!(!is_prime_u64(3_825_123_056_546_413_051));
    }

    #[test]
    fn rejects_non_prime_modulus() {
        assert_eq!(FieldSpec::new(1), Err(Error::NotPrime(1)));
        assert_eq!(FieldSpec::new(0), Err(Error::NotPrime(0)));
        assert_eq!(FieldSpec::new(9), Err(Error::NotPrime(9)));
        assert!(FieldSpec::new(257).is_ok());
    }

    #[test]
    fn small_field_table() {
        let f3 = FieldSpec::new(3).unwrap();
        assert_eq!(f3.mul(2, 2), 1);
        assert_eq!(f3.add(2, 2), 1);
        assert_eq!(f3.sub(0, 1), 2);
        assert_eq!(f3.neg(1), 2);
        for p in [2, 3, 5, 257] {
            let f = FieldSpec::new(p).unwrap();
            assert_eq!(f.inv(1).unwrap(), 1);
            assert_eq!(f.inv(0), Err(Error::ZeroInverse));
            for a in 1..p {
                assert_eq!(f.mul(a, f.inv(a).unwrap()), 1);
            }
        }
    }

    #[test]
    fn add_does_not_overflow_near_word_size() {
        let p = 18_446_744_073_709_551_557;
        let f = FieldSpec::new(p).unwrap();
        assert_eq!(f.add(p - 1, p - 1), p - 2);
        assert_eq!(f.mul(p - 1, p - 1), 1);
    }

    #[test]
    fn out_of_range_residue_is_rejected() {
        let f = FieldSpec::new(5).unwrap();
        assert_eq!(f.check(4), Ok(4));
        assert!(matches!(f.check(5), Err(Error::ResidueOutOfRange { .. })));
    }
}
