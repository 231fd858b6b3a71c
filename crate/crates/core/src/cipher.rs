//! Block encryption and decryption.
//!
//! A block is any polynomial of degree below `n = deg f`. Encryption is
//! `C = M^e mod f`. Decryption either raises to `d` modulo `f` directly or
//! works factor by factor with the reduced exponents `r_i` and recombines
//! with the CRT; both give the same result on every block because `f` is
//! squarefree.

use crate::codec::{self, BlockCapacity};
use crate::error::{Error, Result};
use crate::field::FieldSpec;
use crate::keygen::{PrivateKey, PublicKey};
use crate::poly::Poly;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum DecryptMode {
    #[default]
    Crt,
    Plain,
}

fn check_block(block: &Poly, key: &PublicKey) -> Result<()> {
    if block.field() != key.field() {
        return Err(Error::FieldMismatch(key.field().p(), block.field().p()));
    }
    if block.degree() >= key.degree() as isize {
        return Err(Error::BlockTooLarge {
            degree: block.degree(),
            limit: key.degree(),
        });
    }
    Ok(())
}

pub fn encrypt_block(pk: &PublicKey, m: &Poly) -> Result<Poly> {
    check_block(m, pk)?;
    m.mod_pow(pk.e(), pk.modulus())
}

pub fn decrypt_block_plain(sk: &PrivateKey, c: &Poly) -> Result<Poly> {
    check_block(c, sk.public())?;
    c.mod_pow(sk.d(), sk.public().modulus())
}

pub fn decrypt_block_crt(sk: &PrivateKey, c: &Poly) -> Result<Poly> {
    check_block(c, sk.public())?;
    let residues = sk
        .factors()
        .iter()
        .zip(sk.crt_exponents())
        .zip(sk.group_orders())
        .map(|((factor, r), order)| {
            let reduced = c.rem(factor)?;
            if reduced.is_zero() {
                return Ok(reduced);
            }
            // r = 0 means d is a multiple of the group order, so c^d = 1.
            let exp = if r.bits() == 0 { order } else { r };
            reduced.mod_pow(exp, factor)
        })
        .collect::<Result<Vec<_>>>()?;
    sk.crt_system().combine(&residues)
}

pub fn decrypt_block(sk: &PrivateKey, c: &Poly, mode: DecryptMode) -> Result<Poly> {
    match mode {
        DecryptMode::Crt => decrypt_block_crt(sk, c),
        DecryptMode::Plain => decrypt_block_plain(sk, c),
    }
}

/// An encrypted message: blocks under a modulus of degree `n` over GF(p).
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Ciphertext {
    pub field: FieldSpec,
    pub degree: usize,
    pub blocks: Vec<Poly>,
}

pub fn encrypt_message(pk: &PublicKey, message: &[u8]) -> Result<Ciphertext> {
    let capacity = BlockCapacity::new(pk.field(), pk.degree())?;
    let blocks = codec::encode(message, &capacity)
        .iter()
        .map(|m| encrypt_block(pk, m))
        .collect::<Result<Vec<_>>>()?;
    Ok(Ciphertext {
        field: pk.field(),
        degree: pk.degree(),
        blocks,
    })
}

pub fn decrypt_message(sk: &PrivateKey, ct: &Ciphertext, mode: DecryptMode) -> Result<Vec<u8>> {
    let pk = sk.public();
    if ct.field != pk.field() || ct.degree != pk.degree() {
        return Err(Error::KeyMismatch {
            ct_p: ct.field.p(),
            ct_n: ct.degree,
            key_p: pk.field().p(),
            key_n: pk.degree(),
        });
    }
    let capacity = BlockCapacity::new(pk.field(), pk.degree())?;
    let blocks = ct
        .blocks
        .iter()
        .map(|c| decrypt_block(sk, c, mode))
        .collect::<Result<Vec<_>>>()?;
    codec::decode(&blocks, &capacity)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::keygen::{keygen, ExponentMode, KeygenParams};
    use num_bigint::BigUint;

    fn poly(coeffs: &[u64]) -> Poly {
        Poly::new(FieldSpec::gf2(), coeffs.to_vec()).unwrap()
    }

    fn example_key() -> PrivateKey {
        let factors = vec![poly(&[1, 1, 0, 1]), poly(&[1, 0, 1, 1]), poly(&[1, 1, 1])];
        PrivateKey::with_public_exponent(FieldSpec::gf2(), factors, BigUint::from(34u32)).unwrap()
    }

    #[test]
    fn worked_example_block() {
        let sk = example_key();
        let m = poly(&[1, 0, 0, 1, 1]);
        let c = encrypt_block(sk.public(), &m).unwrap();
        assert_eq!(c, poly(&[1, 0, 1, 1, 1, 1]));
        assert_eq!(decrypt_block_plain(&sk, &c).unwrap(), m);
        assert_eq!(decrypt_block_crt(&sk, &c).unwrap(), m);
    }

    #[test]
    fn fixed_points() {
        let sk = example_key();
        let zero = Poly::zero(FieldSpec::gf2());
        let one = Poly::one(FieldSpec::gf2());
        for block in [&zero, &one] {
            assert_eq!(&encrypt_block(sk.public(), block).unwrap(), block);
            assert_eq!(&decrypt_block_plain(&sk, block).unwrap(), block);
            assert_eq!(&decrypt_block_crt(&sk, block).unwrap(), block);
        }
    }

    #[test]
    fn oversized_blocks_are_rejected() {
        let sk = example_key();
        let big = Poly::monomial(FieldSpec::gf2(), 1, 8);
        assert!(matches!(
            encrypt_block(sk.public(), &big),
            Err(Error::BlockTooLarge {
                degree: 8,
                limit: 8
            })
        ));
        assert!(decrypt_block_plain(&sk, &big).is_err());
        assert!(decrypt_block_crt(&sk, &big).is_err());
    }

    #[test]
    fn exhaustive_small_key() {
        let sk = example_key();
        for i in 0..256 {
            let m = Poly::from_index(FieldSpec::gf2(), i);
            let c = encrypt_block(sk.public(), &m).unwrap();
            assert_eq!(decrypt_block_crt(&sk, &c).unwrap(), m);
            assert_eq!(decrypt_block_plain(&sk, &c).unwrap(), m);
        }
    }

    #[test]
    fn zero_crt_exponent_on_linear_gf2_factor() {
        // The order of GF(2)[x]/(x+1) is 1, so r = d mod 1 = 0 there.
        let factors = vec![poly(&[1, 1]), poly(&[0, 1]), poly(&[1, 1, 1])];
        let sk = PrivateKey::from_factors(
            FieldSpec::gf2(),
            factors,
            BigUint::from(5u32),
            BigUint::from(2u32),
        )
        .unwrap();
        assert_eq!(sk.crt_exponents()[0], BigUint::from(0u32));
        for i in 0..16 {
            let m = Poly::from_index(FieldSpec::gf2(), i);
            let c = encrypt_block(sk.public(), &m).unwrap();
            assert_eq!(decrypt_block_crt(&sk, &c).unwrap(), m);
            assert_eq!(decrypt_block_plain(&sk, &c).unwrap(), m);
        }
    }

    #[test]
    fn message_round_trip_and_mismatch() {
        let field = FieldSpec::new(2).unwrap();
        let mut params = KeygenParams::new(field, 48, 2);
        params.exponent = ExponentMode::ChooseD;
        params.seed = 4;
        let (pk, sk) = keygen(&params).unwrap();
        let msg = b"polynomial rsa".to_vec();
        let ct = encrypt_message(&pk, &msg).unwrap();
        assert_eq!(decrypt_message(&sk, &ct, DecryptMode::Crt).unwrap(), msg);
        assert_eq!(decrypt_message(&sk, &ct, DecryptMode::Plain).unwrap(), msg);
        let empty = encrypt_message(&pk, b"").unwrap();
        assert_eq!(empty.blocks.len(), 1);
        assert!(decrypt_message(&sk, &empty, DecryptMode::Crt)
            .unwrap()
            .is_empty());

        let mut other = params.clone();
        other.total_degree = 50;
        let (_, sk_other) = keygen(&other).unwrap();
        assert!(matches!(
            decrypt_message(&sk_other, &ct, DecryptMode::Crt),
            Err(Error::KeyMismatch { .. })
        ));
    }
}
