//! Arithmetic in the prime field GF(p), `2 <= p <= 251`.
//!
//! [`PrimeField`] is a one-byte copyable handle doing raw arithmetic on `u8`
//! residues; the inner kernels use it directly. [`Scalar`] bundles a residue
//! with its field and checks operand compatibility, which is what the public
//! accessors hand out.

use std::fmt;

use crate::error::{Error, Result};

/// Largest supported modulus; a residue always fits one byte.
pub const MAX_MODULUS: u8 = 251;

fn is_prime(p: u8) -> bool {
    if p < 2 {
        return false;
    }
    let mut d = 2u16;
    while d * d <= p as u16 {
        if (p as u16).is_multiple_of(d) {
            return false;
        }
        d += 1;
    }
    true
}

/// A prime field GF(p). Construction runs a deterministic primality check.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct PrimeField {
    p: u8,
}

impl PrimeField {
    pub fn new(p: u16) -> Result<Self> {
        if p < 2 || p > MAX_MODULUS as u16 || !is_prime(p as u8) {
            return Err(Error::BadModulus(p));
        }
        Ok(PrimeField { p: p as u8 })
    }

    pub fn modulus(self) -> u8 {
        self.p
    }

    /// Reduce an arbitrary integer into `[0, p)`.
    pub fn reduce(self, v: i64) -> u8 {
        v.rem_euclid(self.p as i64) as u8
    }

    pub fn add(self, a: u8, b: u8) -> u8 {
        ((a as u16 + b as u16) % self.p as u16) as u8
    }

    pub fn sub(self, a: u8, b: u8) -> u8 {
        ((a as u16 + self.p as u16 - b as u16) % self.p as u16) as u8
    }

    pub fn neg(self, a: u8) -> u8 {
        if a == 0 {
            0
        } else {
            self.p - a
        }
    }

    pub fn mul(self, a: u8, b: u8) -> u8 {
        ((a as u16 * b as u16) % self.p as u16) as u8
    }

    pub fn pow(self, a: u8, mut e: u32) -> u8 {
        let mut base = a % self.p;
        let mut acc = 1u8;
        while e > 0 {
            if e & 1 == 1 {
                acc = self.mul(acc, base);
            }
            base = self.mul(base, base);
            e >>= 1;
        }
        acc
    }

    /// Multiplicative inverse via Fermat; errors on zero.
    pub fn inv(self, a: u8) -> Result<u8> {
        if a.is_multiple_of(self.p) {
            return Err(Error::DivisionByZero { modulus: self.p });
        }
        Ok(self.pow(a, self.p as u32 - 2))
    }

    pub fn scalar(self, v: i64) -> Scalar {
        Scalar {
            value: self.reduce(v),
            field: self,
        }
    }

    /// All residues `0, 1, ..., p-1`.
    pub fn elements(self) -> impl Iterator<Item = u8> {
        0..self.p
    }
}

/// A fully reduced residue together with its field.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct Scalar {
    value: u8,
    field: PrimeField,
}

// checked arithmetic with field-compatibility errors, so the std operator
// traits (which are infallible) do not fit
#[allow(clippy::should_implement_trait)]
impl Scalar {
    pub fn value(self) -> u8 {
        self.value
    }

    pub fn field(self) -> PrimeField {
        self.field
    }

    pub fn is_zero(self) -> bool {
        self.value == 0
    }

    fn same_field(self, other: Scalar) -> Result<PrimeField> {
        if self.field != other.field {
            return Err(Error::FieldMismatch {
                left: self.field.modulus(),
                right: other.field.modulus(),
            });
        }
        Ok(self.field)
    }

    pub fn add(self, other: Scalar) -> Result<Scalar> {
        let f = self.same_field(other)?;
        Ok(f.scalar(f.add(self.value, other.value) as i64))
    }

    pub fn sub(self, other: Scalar) -> Result<Scalar> {
        let f = self.same_field(other)?;
        Ok(f.scalar(f.sub(self.value, other.value) as i64))
    }

    pub fn mul(self, other: Scalar) -> Result<Scalar> {
        let f = self.same_field(other)?;
        Ok(f.scalar(f.mul(self.value, other.value) as i64))
    }

    pub fn neg(self) -> Scalar {
        self.field.scalar(self.field.neg(self.value) as i64)
    }

    pub fn inv(self) -> Result<Scalar> {
        Ok(self.field.scalar(self.field.inv(self.value)? as i64))
    }
}

impl fmt::Display for Scalar {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.value)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn moduli_are_validated() {
        for bad in [0u16, 1, 4, 6, 9, 252, 255, 1000] {
            assert!(PrimeField::new(bad).is_err(), "accepted {bad}");
        }
        for good in [2u16, 3, 5, 7, 11, 101, 251] {
            assert!(PrimeField::new(good).is_ok(), "rejected {good}");
        }
    }

    #[test]
    fn field_axioms_exhaustive() {
        for p in [2u16, 3, 5] {
            let f = PrimeField::new(p).unwrap();
            for a in f.elements() {
                // identities and inverses
                assert_eq!(f.add(a, 0), a);
                assert_eq!(f.mul(a, 1), a);
                assert_eq!(f.add(a, f.neg(a)), 0);
                if a != 0 {
                    let ai = f.inv(a).unwrap();
                    assert_eq!(f.mul(a, ai), 1);
                    assert_eq!(f.inv(ai).unwrap(), a, "inv is an involution");
                }
                for b in f.elements() {
                    assert_eq!(f.add(a, b), f.add(b, a));
                    assert_eq!(f.mul(a, b), f.mul(b, a));
                    for c in f.elements() {
                        assert_eq!(f.add(f.add(a, b), c), f.add(a, f.add(b, c)));
                        assert_eq!(f.mul(f.mul(a, b), c), f.mul(a, f.mul(b, c)));
                        assert_eq!(f.mul(a, f.add(b, c)), f.add(f.mul(a, b), f.mul(a, c)));
                    }
                }
            }
        }
    }

    #[test]
    fn scalar_contract_examples() {
        let gf2 = PrimeField::new(2).unwrap();
        let gf3 = PrimeField::new(3).unwrap();
        let gf5 = PrimeField::new(5).unwrap();

        // characteristic 2
        assert_eq!(gf2.scalar(1).add(gf2.scalar(1)).unwrap().value(), 0);
        // 6 = 1 mod 5
        assert_eq!(gf5.scalar(2).mul(gf5.scalar(3)).unwrap().value(), 1);
        // mixed fields refuse to combine
        assert_eq!(
            gf2.scalar(1).add(gf3.scalar(1)),
            Err(Error::FieldMismatch { left: 2, right: 3 })
        );

        assert_eq!(gf5.scalar(1).inv().unwrap().value(), 1);
        assert_eq!(gf5.scalar(2).inv().unwrap().value(), 3);
        assert_eq!(
            gf5.scalar(0).inv(),
            Err(Error::DivisionByZero { modulus: 5 })
        );
    }

    #[test]
    fn reduce_handles_negatives() {
        let f = PrimeField::new(7).unwrap();
        assert_eq!(f.reduce(-1), 6);
        assert_eq!(f.reduce(-14), 0);
        assert_eq!(f.reduce(20), 6);
    }
}
