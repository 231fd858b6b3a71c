//! Dense polynomials over GF(p).

use std::fmt;

use num_bigint::BigUint;

use crate::error::{Error, Result};
use crate::field::FieldSpec;
use crate::gf2;

/// A polynomial over GF(p) with coefficients stored low-to-high.
///
/// The representation is canonical: every coefficient is a residue in
/// `[0, p)` and the highest stored coefficient is nonzero, so the zero
/// polynomial has no coefficients at all. Two polynomials are equal exactly
/// when their fields and coefficient vectors are equal.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Poly {
    field: FieldSpec,
    coeffs: Vec<u64>,
}

impl Poly {
    /// Builds a polynomial from low-to-high coefficients, trimming high zeros.
    pub fn new(field: FieldSpec, coeffs: Vec<u64>) -> Result<Self> {
        for &c in &coeffs {
            field.check(c)?;
        }
        Ok(Self::from_residues(field, coeffs))
    }

    /// Callers guarantee every entry is already a residue.
    pub(crate) fn from_residues(field: FieldSpec, mut coeffs: Vec<u64>) -> Self {
        while coeffs.last() == Some(&0) {
            coeffs.pop();
        }
        Self { field, coeffs }
    }

    fn from_words(field: FieldSpec, words: &[u64]) -> Self {
        Self {
            field,
            coeffs: gf2::unpack(words),
        }
    }

    fn words(&self) -> Vec<u64> {
        gf2::pack(&self.coeffs)
    }

    pub fn zero(field: FieldSpec) -> Self {
        Self {
            field,
            coeffs: Vec::new(),
        }
    }

    pub fn one(field: FieldSpec) -> Self {
        Self::constant(field, 1)
    }

    pub fn constant(field: FieldSpec, c: u64) -> Self {
        Self::from_residues(field, vec![c % field.p()])
    }

    /// The polynomial `x`.
    pub fn x(field: FieldSpec) -> Self {
        Self::monomial(field, 1, 1)
    }

    /// `c * x^k`.
    pub fn monomial(field: FieldSpec, c: u64, k: usize) -> Self {
        let mut coeffs = vec![0; k + 1];
        coeffs[k] = c % field.p();
        Self::from_residues(field, coeffs)
    }

    /// The polynomial whose coefficients are the base-p digits of `index`,
    /// least significant digit first. Enumerating `0..p^n` visits every
    /// polynomial of degree below `n` exactly once.
    pub fn from_index(field: FieldSpec, mut index: u64) -> Self {
        let mut coeffs = Vec::new();
        while index > 0 {
            coeffs.push(index % field.p());
            index /= field.p();
        }
        Self::from_residues(field, coeffs)
    }

    pub fn field(&self) -> FieldSpec {
        self.field
    }

    pub fn coeffs(&self) -> &[u64] {
        &self.coeffs
    }

    /// Coefficient of `x^i`, zero beyond the degree.
    pub fn coeff(&self, i: usize) -> u64 {
        self.coeffs.get(i).copied().unwrap_or(0)
    }

    /// Degree, with `-1` for the zero polynomial.
    pub fn degree(&self) -> isize {
        self.coeffs.len() as isize - 1
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn is_one(&self) -> bool {
        self.coeffs == [1]
    }

    pub fn leading_coeff(&self) -> Option<u64> {
        self.coeffs.last().copied()
    }

    pub fn is_monic(&self) -> bool {
        self.leading_coeff() == Some(1)
    }

    /// Checks the canonical-form invariant.
    pub fn is_canonical(&self) -> bool {
        self.coeffs.last() != Some(&0) && self.coeffs.iter().all(|&c| c < self.field.p())
    }

    fn same_field(&self, other: &Poly) -> Result<()> {
        if self.field == other.field {
            Ok(())
        } else {
            Err(Error::FieldMismatch(self.field.p(), other.field.p()))
        }
    }

    /// Scales to leading coefficient 1. The zero polynomial is returned as is.
    pub fn monic(&self) -> Poly {
        match self.leading_coeff() {
            None | Some(1) => self.clone(),
            Some(lc) => {
                let inv = self.field.inv(lc).expect("leading coefficient is nonzero");
                self.scale(inv)
            }
        }
    }

    pub fn scale(&self, c: u64) -> Poly {
        let f = self.field;
        let c = c % f.p();
        Self::from_residues(f, self.coeffs.iter().map(|&a| f.mul(a, c)).collect())
    }

    pub fn neg(&self) -> Poly {
        let f = self.field;
        Self::from_residues(f, self.coeffs.iter().map(|&a| f.neg(a)).collect())
    }

    pub fn add(&self, other: &Poly) -> Result<Poly> {
        self.same_field(other)?;
        let f = self.field;
        let len = self.coeffs.len().max(other.coeffs.len());
        let coeffs = (0..len)
            .map(|i| f.add(self.coeff(i), other.coeff(i)))
            .collect();
        Ok(Self::from_residues(f, coeffs))
    }

    pub fn sub(&self, other: &Poly) -> Result<Poly> {
        self.same_field(other)?;
        let f = self.field;
        let len = self.coeffs.len().max(other.coeffs.len());
        let coeffs = (0..len)
            .map(|i| f.sub(self.coeff(i), other.coeff(i)))
            .collect();
        Ok(Self::from_residues(f, coeffs))
    }

    pub fn mul(&self, other: &Poly) -> Result<Poly> {
        self.same_field(other)?;
        if self.is_zero() || other.is_zero() {
            return Ok(Self::zero(self.field));
        }
        let f = self.field;
        if f.p() == 2 {
            return Ok(Self::from_words(
                f,
                &gf2::mul(&self.words(), &other.words()),
            ));
        }
        let n = self.coeffs.len() + other.coeffs.len() - 1;
        let coeffs = if f.p() < 1 << 32 {
            // Products fit in 64 bits, so sums of them fit in 128.
            let mut acc = vec![0u128; n];
            for (i, &a) in self.coeffs.iter().enumerate() {
                for (j, &b) in other.coeffs.iter().enumerate() {
                    acc[i + j] += (a * b) as u128;
                }
            }
            let p = f.p() as u128;
            acc.into_iter().map(|c| (c % p) as u64).collect()
        } else {
            let mut acc = vec![0u64; n];
            for (i, &a) in self.coeffs.iter().enumerate() {
                for (j, &b) in other.coeffs.iter().enumerate() {
                    acc[i + j] = f.add(acc[i + j], f.mul(a, b));
                }
            }
            acc
        };
        Ok(Self::from_residues(f, coeffs))
    }

    /// Long division: returns `(q, r)` with `self = q*m + r` and `deg r < deg m`.
    pub fn div_rem(&self, m: &Poly) -> Result<(Poly, Poly)> {
        self.same_field(m)?;
        if m.is_zero() {
            return Err(Error::DivisionByZero);
        }
        let f = self.field;
        if f.p() == 2 {
            let (q, r) = gf2::div_rem(&self.words(), &m.words());
            return Ok((Self::from_words(f, &q), Self::from_words(f, &r)));
        }
        if self.degree() < m.degree() {
            return Ok((Self::zero(f), self.clone()));
        }
        let dm = m.coeffs.len() - 1;
        let lead_inv = f.inv(m.coeffs[dm])?;
        let mut r = self.coeffs.clone();
        let mut q = vec![0u64; r.len() - dm];
        for k in (0..q.len()).rev() {
            let c = f.mul(r[k + dm], lead_inv);
            q[k] = c;
            if c != 0 {
                for (j, &mc) in m.coeffs.iter().enumerate() {
                    r[k + j] = f.sub(r[k + j], f.mul(c, mc));
                }
            }
        }
        r.truncate(dm);
        Ok((Self::from_residues(f, q), Self::from_residues(f, r)))
    }

    pub fn rem(&self, m: &Poly) -> Result<Poly> {
        if self.field.p() == 2 && self.field == m.field {
            if m.is_zero() {
                return Err(Error::DivisionByZero);
            }
            return Ok(Self::from_words(
                self.field,
                &gf2::rem(&self.words(), &m.words()),
            ));
        }
        Ok(self.div_rem(m)?.1)
    }

    /// Monic greatest common divisor.
    pub fn gcd(&self, other: &Poly) -> Result<Poly> {
        self.same_field(other)?;
        if self.is_zero() && other.is_zero() {
            return Err(Error::ZeroGcd);
        }
        if self.field.p() == 2 {
            return Ok(Self::from_words(
                self.field,
                &gf2::gcd(&self.words(), &other.words()),
            ));
        }
        let mut a = self.clone();
        let mut b = other.clone();
        while !b.is_zero() {
            let r = a.rem(&b)?;
            a = std::mem::replace(&mut b, r);
        }
        Ok(a.monic())
    }

    /// Extended Euclid: `(g, s, t)` with `s*self + t*other = g` and `g` monic.
    pub fn ext_gcd(&self, other: &Poly) -> Result<(Poly, Poly, Poly)> {
        self.same_field(other)?;
        if self.is_zero() && other.is_zero() {
            return Err(Error::ZeroGcd);
        }
        let f = self.field;
        let (mut r0, mut r1) = (self.clone(), other.clone());
        let (mut s0, mut s1) = (Self::one(f), Self::zero(f));
        let (mut t0, mut t1) = (Self::zero(f), Self::one(f));
        while !r1.is_zero() {
            let (q, r) = r0.div_rem(&r1)?;
            let s = s0.sub(&q.mul(&s1)?)?;
            let t = t0.sub(&q.mul(&t1)?)?;
            r0 = std::mem::replace(&mut r1, r);
            s0 = std::mem::replace(&mut s1, s);
            t0 = std::mem::replace(&mut t1, t);
        }
        let lc = r0
            .leading_coeff()
            .expect("gcd of non-zero inputs is non-zero");
        let inv = f.inv(lc)?;
        Ok((r0.scale(inv), s0.scale(inv), t0.scale(inv)))
    }

    fn check_modulus(m: &Poly) -> Result<()> {
        match m.degree() {
            -1 => Err(Error::DivisionByZero),
            0 => Err(Error::ConstantModulus),
            _ => Ok(()),
        }
    }

    /// Inverse of `self` modulo `m`, reduced below `deg m`.
    pub fn mod_inv(&self, m: &Poly) -> Result<Poly> {
        self.same_field(m)?;
        Self::check_modulus(m)?;
        let a = self.rem(m)?;
        if a.is_zero() {
            return Err(Error::NotInvertible);
        }
        let (g, s, _) = a.ext_gcd(m)?;
        if !g.is_one() {
            return Err(Error::NotInvertible);
        }
        s.rem(m)
    }

    /// `self^exp mod m` by square-and-multiply with a reduction after every step.
    pub fn mod_pow(&self, exp: &BigUint, m: &Poly) -> Result<Poly> {
        self.same_field(m)?;
        Self::check_modulus(m)?;
        let f = self.field;
        if f.p() == 2 {
            let reducer = gf2::Reducer::new(&m.words());
            return Ok(Self::from_words(f, &reducer.pow(&self.words(), exp)));
        }
        let base = self.rem(m)?;
        let mut acc = Self::one(f);
        for i in (0..exp.bits()).rev() {
            acc = acc.mul(&acc)?.rem(m)?;
            if exp.bit(i) {
                acc = acc.mul(&base)?.rem(m)?;
            }
        }
        Ok(acc)
    }

    pub fn mod_pow_u64(&self, exp: u64, m: &Poly) -> Result<Poly> {
        self.mod_pow(&BigUint::from(exp), m)
    }

    /// Wire form: comma-separated decimal coefficients, low-to-high; zero is `0`.
    pub fn to_text(&self) -> String {
        if self.is_zero() {
            return "0".to_string();
        }
        self.coeffs
            .iter()
            .map(u64::to_string)
            .collect::<Vec<_>>()
            .join(",")
    }

    /// Parses the wire form. Non-canonical input (a trailing zero coefficient,
    /// an out-of-range residue, whitespace) is rejected.
    pub fn parse_text(field: FieldSpec, s: &str) -> std::result::Result<Poly, String> {
        if s == "0" {
            return Ok(Self::zero(field));
        }
        let mut coeffs = Vec::new();
        for part in s.split(',') {
            if part.is_empty() || !part.bytes().all(|b| b.is_ascii_digit()) {
                return Err(format!("invalid coefficient {part:?}"));
            }
            let c: u64 = part
                .parse()
                .map_err(|_| format!("coefficient {part:?} out of range"))?;
            if c >= field.p() {
                return Err(format!("coefficient {c} is not below p = {}", field.p()));
            }
            coeffs.push(c);
        }
        if coeffs.last() == Some(&0) {
            return Err("polynomial has a zero leading coefficient".to_string());
        }
        Ok(Self { field, coeffs })
    }
}

/// Raises to the p-th power modulo a fixed polynomial, reusing the
/// reduction tables across calls when p = 2.
pub(crate) struct Frobenius {
    modulus: Poly,
    exponent: BigUint,
    gf2: Option<gf2::Reducer>,
}

impl Frobenius {
    pub(crate) fn new(modulus: &Poly) -> Result<Self> {
        Poly::check_modulus(modulus)?;
        let f = modulus.field;
        Ok(Self {
            modulus: modulus.clone(),
            exponent: BigUint::from(f.p()),
            gf2: (f.p() == 2).then(|| gf2::Reducer::new(&modulus.words())),
        })
    }

    pub(crate) fn apply(&self, h: &Poly) -> Result<Poly> {
        match &self.gf2 {
            Some(r) => Ok(Poly::from_words(h.field, &r.square_mod(&h.words()))),
            None => h.mod_pow(&self.exponent, &self.modulus),
        }
    }
}

/// Human-readable form, e.g. `x^3+x+1` or `2x^2+1`.
impl fmt::Display for Poly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return f.write_str("0");
        }
        let mut first = true;
        for (k, &c) in self.coeffs.iter().enumerate().rev() {
            if c == 0 {
                continue;
            }
            if !first {
                f.write_str("+")?;
            }
            first = false;
            match (c, k) {
                (_, 0) => write!(f, "{c}")?,
                (1, 1) => f.write_str("x")?,
                (1, _) => write!(f, "x^{k}")?,
                (_, 1) => write!(f, "{c}x")?,
                _ => write!(f, "{c}x^{k}")?,
            }
        }
        Ok(())
    }
}
