//! Chinese remainder theorem over GF(p)[x].

use crate::error::{Error, Result};
use crate::poly::Poly;

/// Precomputed data for solving `P = a_i (mod m_i)`.
///
/// With `M = m_1 * ... * m_r`, `M_i = M / m_i` and `y_i = M_i^-1 mod m_i`,
/// the solution is `sum a_i * M_i * y_i mod M`. The products `M_i * y_i` are
/// kept alongside so recombination costs one multiply per residue.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CrtSystem {
    moduli: Vec<Poly>,
    product: Poly,
    cofactors: Vec<Poly>,
    inverses: Vec<Poly>,
    basis: Vec<Poly>,
}

impl CrtSystem {
    /// Fails on an empty list, a constant modulus, or a pair with a
    /// nontrivial common factor.
    pub fn prepare(moduli: &[Poly]) -> Result<Self> {
        let first = moduli.first().ok_or(Error::EmptyModuli)?;
        let field = first.field();
        for m in moduli {
            if m.field() != field {
                return Err(Error::FieldMismatch(field.p(), m.field().p()));
            }
            if m.degree() < 1 {
                return Err(Error::ConstantModulus);
            }
        }
        for i in 0..moduli.len() {
            for j in i + 1..moduli.len() {
                if !moduli[i].gcd(&moduli[j])?.is_one() {
                    return Err(Error::NonCoprimeModuli(i, j));
                }
            }
        }
        let mut product = Poly::one(field);
        for m in moduli {
            product = product.mul(m)?;
        }
        let mut cofactors = Vec::with_capacity(moduli.len());
        let mut inverses = Vec::with_capacity(moduli.len());
        let mut basis = Vec::with_capacity(moduli.len());
        for m in moduli {
            let (cofactor, rem) = product.div_rem(m)?;
            debug_assert!(rem.is_zero());
            let inverse = cofactor.mod_inv(m)?;
            basis.push(cofactor.mul(&inverse)?);
            cofactors.push(cofactor);
            inverses.push(inverse);
        }
        Ok(Self {
            moduli: moduli.to_vec(),
            product,
            cofactors,
            inverses,
            basis,
        })
    }

    /// The unique `P` with `deg P < deg M` and `P = residues[i] (mod m_i)`.
    /// Residues need not be reduced.
    pub fn combine(&self, residues: &[Poly]) -> Result<Poly> {
        if residues.len() != self.moduli.len() {
            return Err(Error::LengthMismatch {
                expected: self.moduli.len(),
                actual: residues.len(),
            });
        }
        let mut acc = Poly::zero(self.product.field());
        for ((a, m), e) in residues.iter().zip(&self.moduli).zip(&self.basis) {
            let a = a.rem(m)?;
            if !a.is_zero() {
                acc = acc.add(&a.mul(e)?)?;
            }
        }
        acc.rem(&self.product)
    }

    pub fn moduli(&self) -> &[Poly] {
        &self.moduli
    }

    /// `M`, the product of all moduli.
    pub fn product(&self) -> &Poly {
        &self.product
    }

    /// `M_i = M / m_i`.
    pub fn cofactors(&self) -> &[Poly] {
        &self.cofactors
    }

    /// `y_i = M_i^-1 mod m_i`.
    pub fn inverses(&self) -> &[Poly] {
        &self.inverses
    }
}
