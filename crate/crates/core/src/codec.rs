//! Byte strings to polynomial blocks and back.
//!
//! The message gets one `0x80` byte appended, then `0x00` bytes up to a
//! multiple of `B`. Each `B`-byte chunk is read as a big-endian integer
//! `v < 256^B <= p^(n-1)` and written in base `p`, least significant digit
//! first, as the coefficients of one block. Decoding reverses this and strips
//! the trailing zeros and the single `0x80`.

use num_bigint::BigUint;
use num_integer::Integer;
use num_traits::{ToPrimitive, Zero};

use crate::error::{Error, Result};
use crate::field::FieldSpec;
use crate::poly::Poly;

/// Chunks of up to 15 bytes are converted with native 128-bit arithmetic.
const NATIVE_CHUNK_BYTES: usize = 15;

/// How many bytes fit in one block for a modulus of degree `n`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BlockCapacity {
    field: FieldSpec,
    n: usize,
    chunk_bytes: usize,
}

impl BlockCapacity {
    /// `B` is the largest integer with `256^B <= p^(n-1)`.
    pub fn new(field: FieldSpec, n: usize) -> Result<Self> {
        if n < 2 {
            return Err(Error::CapacityTooSmall(n));
        }
        let bound = BigUint::from(field.p()).pow((n - 1) as u32);
        let chunk_bytes = ((bound.bits() - 1) / 8) as usize;
        if chunk_bytes < 1 {
            return Err(Error::CapacityTooSmall(n));
        }
        Ok(Self {
            field,
            n,
            chunk_bytes,
        })
    }

    pub fn field(&self) -> FieldSpec {
        self.field
    }

    /// Block degree bound: every block has degree below this.
    pub fn n(&self) -> usize {
        self.n
    }

    pub fn chunk_bytes(&self) -> usize {
        self.chunk_bytes
    }

    /// Number of blocks `encode` emits for a message of `len` bytes.
    pub fn blocks_for(&self, len: usize) -> usize {
        (len + 1).div_ceil(self.chunk_bytes)
    }
}

fn chunk_to_block(chunk: &[u8], field: FieldSpec) -> Poly {
    let p = field.p();
    let mut digits = Vec::new();
    if chunk.len() <= NATIVE_CHUNK_BYTES {
        let mut v = chunk.iter().fold(0u128, |acc, &b| (acc << 8) | b as u128);
        while v > 0 {
            digits.push((v % p as u128) as u64);
            v /= p as u128;
        }
    } else if p <= 256 {
        digits = BigUint::from_bytes_be(chunk)
            .to_radix_le(p as u32)
            .into_iter()
            .map(u64::from)
            .collect();
    } else {
        let mut v = BigUint::from_bytes_be(chunk);
        let base = BigUint::from(p);
        while !v.is_zero() {
            let (q, r) = v.div_rem(&base);
            digits.push(r.to_u64().expect("remainder is below p"));
            v = q;
        }
    }
    Poly::from_residues(field, digits)
}

pub fn encode(message: &[u8], capacity: &BlockCapacity) -> Vec<Poly> {
    let b = capacity.chunk_bytes;
    let mut padded = Vec::with_capacity(capacity.blocks_for(message.len()) * b);
    padded.extend_from_slice(message);
    padded.push(0x80);
    padded.resize(padded.len().div_ceil(b) * b, 0x00);
    padded
        .chunks(b)
        .map(|chunk| chunk_to_block(chunk, capacity.field))
        .collect()
}

/// Writes the block value as exactly `B` big-endian bytes, or fails if it
/// does not fit.
fn block_to_chunk(block: &Poly, capacity: &BlockCapacity, out: &mut Vec<u8>) -> Result<()> {
    let b = capacity.chunk_bytes;
    let p = capacity.field.p();
    let too_big = || Error::Padding(format!("block value does not fit in {b} bytes"));
    if b <= NATIVE_CHUNK_BYTES {
        let mut v = 0u128;
        for &c in block.coeffs().iter().rev() {
            v = v
                .checked_mul(p as u128)
                .and_then(|v| v.checked_add(c as u128))
                .ok_or_else(too_big)?;
        }
        if v >> (8 * b) != 0 {
            return Err(too_big());
        }
        out.extend((0..b).rev().map(|i| (v >> (8 * i)) as u8));
    } else {
        let base = BigUint::from(p);
        let v = block
            .coeffs()
            .iter()
            .rev()
            .fold(BigUint::zero(), |acc, &c| acc * &base + c);
        let bytes = v.to_bytes_be();
        if v.bits() > 8 * b as u64 {
            return Err(too_big());
        }
        let skip = if v.is_zero() { 1 } else { 0 };
        out.resize(out.len() + b - (bytes.len() - skip), 0);
        out.extend_from_slice(&bytes[skip..]);
    }
    Ok(())
}

pub fn decode(blocks: &[Poly], capacity: &BlockCapacity) -> Result<Vec<u8>> {
    let mut out = Vec::with_capacity(blocks.len() * capacity.chunk_bytes);
    for block in blocks {
        if block.field() != capacity.field {
            return Err(Error::FieldMismatch(capacity.field.p(), block.field().p()));
        }
        if block.degree() >= capacity.n as isize {
            return Err(Error::BlockTooLarge {
                degree: block.degree(),
                limit: capacity.n,
            });
        }
        block_to_chunk(block, capacity, &mut out)?;
    }
    let end = out
        .iter()
        .rposition(|&b| b != 0)
        .ok_or_else(|| Error::Padding("no 0x80 terminator".into()))?;
    if out[end] != 0x80 {
        return Err(Error::Padding(format!(
            "expected 0x80 terminator, found {:#04x}",
            out[end]
        )));
    }
    out.truncate(end);
    Ok(out)
}
