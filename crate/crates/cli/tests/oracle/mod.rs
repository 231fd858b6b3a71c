//! Reference arithmetic that shares no code with the library: GF(2)[x] on
//! u64 bitmasks and GF(p)[x] on plain coefficient vectors.

#![allow(dead_code)]

use polyrsa_core::{FieldSpec, Poly};

pub fn deg2(a: u64) -> i32 {
    63 - a.leading_zeros() as i32
}

/// Carry-less product; operands must have combined degree below 64.
pub fn mul2(a: u64, b: u64) -> u64 {
    (0..64)
        .filter(|i| (a >> i) & 1 == 1)
        .fold(0, |acc, i| acc ^ (b << i))
}

pub fn rem2(mut a: u64, m: u64) -> u64 {
    assert!(m != 0);
    let dm = deg2(m);
    while a != 0 && deg2(a) >= dm {
        a ^= m << (deg2(a) - dm);
    }
    a
}

pub fn gcd2(mut a: u64, mut b: u64) -> u64 {
    while b != 0 {
        let r = rem2(a, b);
        a = b;
        b = r;
    }
    a
}

/// `a^k mod m` by `k` successive multiplications.
pub fn pow2_naive(a: u64, k: u64, m: u64) -> u64 {
    let mut acc = rem2(1, m);
    let a = rem2(a, m);
    for _ in 0..k {
        acc = rem2(mul2(acc, a), m);
    }
    acc
}

pub fn is_irreducible2(f: u64) -> bool {
    let d = deg2(f);
    d >= 1 && (2u64..1 << (d / 2 + 1)).all(|g| deg2(g) > d / 2 || rem2(f, g) != 0)
}

/// All irreducibles over GF(2) of degree 1..=max_degree, by trial division.
pub fn irreducibles2(max_degree: u32) -> Vec<u64> {
    (2u64..1 << (max_degree + 1))
        .filter(|&f| is_irreducible2(f))
        .collect()
}

pub fn to_mask(p: &Poly) -> u64 {
    assert_eq!(p.field().p(), 2);
    p.coeffs()
        .iter()
        .enumerate()
        .fold(0, |acc, (i, &c)| acc | (c << i))
}

pub fn from_mask(mask: u64) -> Poly {
    Poly::from_index(FieldSpec::gf2(), mask)
}

fn trim(mut a: Vec<u64>) -> Vec<u64> {
    while a.last() == Some(&0) {
        a.pop();
    }
    a
}

fn pow_mod(mut b: u64, mut e: u64, p: u64) -> u64 {
    let mut acc = 1;
    b %= p;
    while e > 0 {
        if e & 1 == 1 {
            acc = acc * b % p;
        }
        b = b * b % p;
        e >>= 1;
    }
    acc
}

/// Remainder of `a` by `m` over GF(p) for small p.
pub fn rem_p(a: &[u64], m: &[u64], p: u64) -> Vec<u64> {
    let m = trim(m.to_vec());
    let mut a = trim(a.to_vec());
    let dm = m.len() - 1;
    let inv = pow_mod(m[dm], p - 2, p);
    while a.len() > dm {
        let shift = a.len() - 1 - dm;
        let c = a[a.len() - 1] * inv % p;
        for (j, &mc) in m.iter().enumerate() {
            a[shift + j] = (a[shift + j] + p - c * mc % p) % p;
        }
        a = trim(a);
    }
    a
}

/// Base-p digits of `index`, least significant first.
pub fn digits(mut index: u64, p: u64) -> Vec<u64> {
    let mut out = Vec::new();
    while index > 0 {
        out.push(index % p);
        index /= p;
    }
    out
}

/// Irreducible iff no monic polynomial of degree 1..=deg/2 divides it.
pub fn is_irreducible_trial(f: &[u64], p: u64) -> bool {
    let f = trim(f.to_vec());
    let d = f.len() as u32 - 1;
    for k in 1..=d / 2 {
        let monic_count = p.pow(k);
        for low in 0..monic_count {
            let mut g = digits(low, p);
            g.resize(k as usize, 0);
            g.push(1);
            if rem_p(&f, &g, p).is_empty() {
                return false;
            }
        }
    }
    d >= 1
}
