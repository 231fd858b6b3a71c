//! Multi-prime RSA over polynomial rings GF(p)[x]/f(x).
//!
//! The modulus `f` is a product of `b` distinct monic irreducibles `p_i` of
//! degrees `n_i`. Keys satisfy `e*d = 1 mod prod(p^n_i - 1)`; blocks are
//! polynomials of degree below `deg f`; decryption can run per factor with
//! `r_i = d mod (p^n_i - 1)` and recombine through the CRT.
//!
//! This is an educational construction with no security: polynomials over
//! finite fields factor efficiently.

pub mod cipher;
pub mod codec;
pub mod crt;
pub mod error;
pub mod field;
mod gf2;
pub mod irreducible;
pub mod keygen;
pub mod keyio;
pub mod poly;
pub mod worked_example;

pub use cipher::{
    decrypt_block, decrypt_block_crt, decrypt_block_plain, decrypt_message, encrypt_block,
    encrypt_message, Ciphertext, DecryptMode,
};
pub use codec::BlockCapacity;
pub use crt::CrtSystem;
pub use error::{Error, Result};
pub use field::FieldSpec;
pub use irreducible::{
    count_irreducibles, distinct_irreducible_set, is_irreducible, random_irreducible,
    IrreducibleRequest,
};
pub use keygen::{
    crt_exponents, keygen, phi_of, split_degrees, ExponentMode, KeygenParams, PrivateKey,
    PublicKey, DEFAULT_PUBLIC_EXPONENT,
};
pub use poly::Poly;

pub use num_bigint::BigUint;
