//! Bit-packed kernels for GF(2)[x].
//!
//! Polynomials are little-endian word vectors: bit `i` of the vector is the
//! coefficient of `x^i`. Vectors are kept trimmed (no high zero words) so the
//! zero polynomial is the empty vector. These are still schoolbook algorithms,
//! just 64 coefficients per machine operation.

use num_bigint::BigUint;

pub(crate) fn pack(coeffs: &[u64]) -> Vec<u64> {
    let mut words = vec![0u64; coeffs.len().div_ceil(64)];
    for (i, &c) in coeffs.iter().enumerate() {
        if c & 1 == 1 {
            words[i / 64] |= 1 << (i % 64);
        }
    }
    trim(&mut words);
    words
}

pub(crate) fn unpack(words: &[u64]) -> Vec<u64> {
    let deg = degree(words);
    if deg < 0 {
        return Vec::new();
    }
    (0..=deg as usize)
        .map(|i| (words[i / 64] >> (i % 64)) & 1)
        .collect()
}

fn trim(words: &mut Vec<u64>) {
    while words.last() == Some(&0) {
        words.pop();
    }
}

pub(crate) fn degree(words: &[u64]) -> isize {
    match words.iter().rposition(|&w| w != 0) {
        Some(i) => (i * 64 + 63 - words[i].leading_zeros() as usize) as isize,
        None => -1,
    }
}

#[inline]
fn bit(words: &[u64], i: usize) -> bool {
    (words[i / 64] >> (i % 64)) & 1 == 1
}

/// `dst ^= src << shift`. Bits that would land past the end of `dst` must be zero.
fn xor_shifted(dst: &mut [u64], src: &[u64], shift: usize) {
    let (off, s) = (shift / 64, shift % 64);
    if s == 0 {
        for (d, &w) in dst[off..].iter_mut().zip(src) {
            *d ^= w;
        }
        return;
    }
    for (i, &w) in src.iter().enumerate() {
        dst[off + i] ^= w << s;
        let hi = w >> (64 - s);
        if hi != 0 {
            dst[off + i + 1] ^= hi;
        }
    }
}

/// `src` shifted left by 0..64 bits, each one word longer than `src`,
/// stored contiguously.
struct ShiftTable {
    words: Vec<u64>,
    stride: usize,
}

impl ShiftTable {
    fn new(src: &[u64]) -> Self {
        let stride = src.len() + 1;
        let mut words = vec![0u64; 64 * stride];
        for (s, row) in words.chunks_mut(stride).enumerate() {
            xor_shifted(row, src, s);
        }
        Self { words, stride }
    }

    #[inline]
    fn row(&self, shift: usize) -> &[u64] {
        &self.words[shift * self.stride..(shift + 1) * self.stride]
    }
}

#[cfg(test)]
fn add(a: &[u64], b: &[u64]) -> Vec<u64> {
    let (long, short) = if a.len() >= b.len() { (a, b) } else { (b, a) };
    let mut out = long.to_vec();
    for (o, &w) in out.iter_mut().zip(short) {
        *o ^= w;
    }
    trim(&mut out);
    out
}

pub(crate) fn mul(a: &[u64], b: &[u64]) -> Vec<u64> {
    if a.is_empty() || b.is_empty() {
        return Vec::new();
    }
    let (a, b) = if a.len() <= b.len() { (a, b) } else { (b, a) };
    if a.len() >= 4 {
        return mul_by_table(a, &ShiftTable::new(b));
    }
    let mut out = vec![0u64; a.len() + b.len()];
    for (i, &w) in a.iter().enumerate() {
        let mut rest = w;
        while rest != 0 {
            let s = rest.trailing_zeros() as usize;
            rest &= rest - 1;
            xor_shifted(&mut out, b, i * 64 + s);
        }
    }
    trim(&mut out);
    out
}

/// `a * b` where `table` holds the shifts of `b`.
fn mul_by_table(a: &[u64], table: &ShiftTable) -> Vec<u64> {
    if a.is_empty() || table.stride == 1 {
        return Vec::new();
    }
    let mut out = vec![0u64; a.len() + table.stride - 1];
    for (i, &w) in a.iter().enumerate() {
        let mut rest = w;
        while rest != 0 {
            let s = rest.trailing_zeros() as usize;
            rest &= rest - 1;
            for (o, &t) in out[i..].iter_mut().zip(table.row(s)) {
                *o ^= t;
            }
        }
    }
    trim(&mut out);
    out
}

#[inline]
fn spread(x: u32) -> u64 {
    let mut x = x as u64;
    x = (x | (x << 16)) & 0x0000_FFFF_0000_FFFF;
    x = (x | (x << 8)) & 0x00FF_00FF_00FF_00FF;
    x = (x | (x << 4)) & 0x0F0F_0F0F_0F0F_0F0F;
    x = (x | (x << 2)) & 0x3333_3333_3333_3333;
    (x | (x << 1)) & 0x5555_5555_5555_5555
}

/// Cross terms cancel in characteristic 2, so squaring interleaves zero bits.
pub(crate) fn square(a: &[u64]) -> Vec<u64> {
    let mut out = Vec::with_capacity(2 * a.len());
    for &w in a {
        out.push(spread(w as u32));
        out.push(spread((w >> 32) as u32));
    }
    trim(&mut out);
    out
}

/// Long division; `m` must be nonzero.
pub(crate) fn div_rem(a: &[u64], m: &[u64]) -> (Vec<u64>, Vec<u64>) {
    let dm = degree(m);
    assert!(dm >= 0, "division by zero polynomial");
    let dm = dm as usize;
    let mut r = a.to_vec();
    let da = degree(&r);
    if da < dm as isize {
        trim(&mut r);
        return (Vec::new(), r);
    }
    let mut q = vec![0u64; (da as usize - dm) / 64 + 1];
    for pos in (dm..=da as usize).rev() {
        if bit(&r, pos) {
            let shift = pos - dm;
            q[shift / 64] |= 1 << (shift % 64);
            xor_shifted(&mut r, m, shift);
        }
    }
    trim(&mut q);
    trim(&mut r);
    (q, r)
}

pub(crate) fn rem(a: &[u64], m: &[u64]) -> Vec<u64> {
    let dm = degree(m);
    assert!(dm >= 0, "division by zero polynomial");
    let dm = dm as usize;
    let mut r = a.to_vec();
    let da = degree(&r);
    if da >= dm as isize {
        for pos in (dm..=da as usize).rev() {
            if bit(&r, pos) {
                xor_shifted(&mut r, m, pos - dm);
            }
        }
    }
    trim(&mut r);
    r
}

/// Euclid's algorithm. Over GF(2) every nonzero gcd is already monic.
pub(crate) fn gcd(a: &[u64], b: &[u64]) -> Vec<u64> {
    let mut a = a.to_vec();
    let mut b = b.to_vec();
    trim(&mut a);
    trim(&mut b);
    while !b.is_empty() {
        let r = rem(&a, &b);
        a = std::mem::replace(&mut b, r);
    }
    a
}

/// Reduction modulo a fixed polynomial with precomputed shifted copies.
pub(crate) struct Reducer {
    degree: usize,
    table: ShiftTable,
}

impl Reducer {
    /// `modulus` must have degree at least 1.
    pub(crate) fn new(modulus: &[u64]) -> Self {
        let degree = degree(modulus);
        assert!(degree >= 1, "reducer needs a non-constant modulus");
        Self {
            degree: degree as usize,
            table: ShiftTable::new(modulus),
        }
    }

    pub(crate) fn reduce(&self, a: &mut Vec<u64>) {
        let low_word = self.degree / 64;
        let low_mask = !0u64 << (self.degree % 64);
        if a.len() > low_word {
            for i in (low_word..a.len()).rev() {
                loop {
                    let word = if i == low_word { a[i] & low_mask } else { a[i] };
                    if word == 0 {
                        break;
                    }
                    let pos = i * 64 + 63 - word.leading_zeros() as usize;
                    let shift = pos - self.degree;
                    let row = self.table.row(shift % 64);
                    for (o, &t) in a[shift / 64..].iter_mut().zip(row) {
                        *o ^= t;
                    }
                }
            }
            a.truncate(low_word + 1);
        }
        trim(a);
    }

    pub(crate) fn square_mod(&self, a: &[u64]) -> Vec<u64> {
        let mut out = square(a);
        self.reduce(&mut out);
        out
    }

    /// Left-to-right square-and-multiply, reducing after every step.
    pub(crate) fn pow(&self, base: &[u64], exp: &BigUint) -> Vec<u64> {
        let mut b = base.to_vec();
        self.reduce(&mut b);
        let table = ShiftTable::new(&b);
        let mut acc = vec![1u64];
        for i in (0..exp.bits()).rev() {
            acc = self.square_mod(&acc);
            if exp.bit(i) {
                acc = mul_by_table(&acc, &table);
                self.reduce(&mut acc);
            }
        }
        acc
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    // Independent bit-at-a-time multiply over u128 for small operands.
    fn clmul(a: u64, b: u64) -> u128 {
        (0..64)
            .filter(|i| (a >> i) & 1 == 1)
            .fold(0u128, |acc, i| acc ^ ((b as u128) << i))
    }

    fn words_u128(x: u128) -> Vec<u64> {
        let mut v = vec![x as u64, (x >> 64) as u64];
        trim(&mut v);
        v
    }

    #[test]
    fn pack_round_trip() {
        let coeffs = vec![1, 0, 1, 1, 0, 0, 0, 1];
        assert_eq!(unpack(&pack(&coeffs)), coeffs);
        assert!(pack(&[0, 0, 0]).is_empty());
        assert_eq!(degree(&[]), -1);
        assert_eq!(degree(&[0, 1]), 64);
    }

    #[test]
    fn mul_and_square_match_carryless_product() {
        let samples = [
            0u64,
            1,
            3,
            0b1011,
            0xdead_beef,
            u64::MAX,
            0x8000_0000_0000_0001,
        ];
        for &a in &samples {
            for &b in &samples {
                let want = words_u128(clmul(a, b));
                let wa = words_u128(a as u128);
                let wb = words_u128(b as u128);
                assert_eq!(mul(&wa, &wb), want);
            }
            assert_eq!(square(&words_u128(a as u128)), words_u128(clmul(a, a)));
        }
    }

    #[test]
    fn table_mul_agrees_with_direct_mul() {
        let a: Vec<u64> = (1..=6)
            .map(|i| 0x9E37_79B9_7F4A_7C15u64.wrapping_mul(i))
            .collect();
        let b: Vec<u64> = (1..=5)
            .map(|i| 0xC2B2_AE3D_27D4_EB4Fu64.wrapping_mul(i))
            .collect();
        let mut direct = vec![0u64; a.len() + b.len()];
        for i in 0..a.len() * 64 {
            if bit(&a, i) {
                xor_shifted(&mut direct, &b, i);
            }
        }
        trim(&mut direct);
        assert_eq!(mul(&a, &b), direct);
    }

    #[test]
    fn reducer_agrees_with_long_division() {
        let m = vec![0x1234_5678_9abc_def1u64, 0x5];
        let r = Reducer::new(&m);
        let a: Vec<u64> = vec![0xffff_0000_ffff_0000, 0x0123_4567_89ab_cdef, 0xfedc_ba98];
        let mut reduced = a.clone();
        r.reduce(&mut reduced);
        let (q, rem) = div_rem(&a, &m);
        assert_eq!(reduced, rem);
        assert_eq!(add(&mul(&q, &m), &rem), a);
    }
}
