//! Irreducibility testing and random generation of monic irreducibles.

use std::collections::BTreeMap;

use num_bigint::{BigInt, BigUint};
use num_traits::Zero;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::error::{Error, Result};
use crate::field::FieldSpec;
use crate::poly::{Frobenius, Poly};

/// Candidates are screened for factors up to this degree before the full
/// test; most random polynomials have a small factor.
const SIEVE_DEGREE: usize = 20;

/// Degrees (n_1, ..., n_b) of the irreducible factors wanted, and the seed
/// that makes the draw reproducible.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct IrreducibleRequest {
    pub field: FieldSpec,
    pub degrees: Vec<usize>,
    pub rng_seed: u64,
}

fn prime_factors(mut n: usize) -> Vec<usize> {
    let mut out = Vec::new();
    let mut q = 2;
    while q * q <= n {
        if n.is_multiple_of(q) {
            out.push(q);
            while n.is_multiple_of(q) {
                n /= q;
            }
        }
        q += 1;
    }
    if n > 1 {
        out.push(n);
    }
    out
}

/// Rabin's test: monic `f` of degree n is irreducible iff
/// `x^(p^n) = x mod f` and `gcd(x^(p^(n/q)) - x, f) = 1` for each prime q | n.
pub fn is_irreducible(f: &Poly) -> Result<bool> {
    if f.degree() < 1 {
        return Err(Error::ConstantPolynomial);
    }
    let n = f.degree() as usize;
    if n == 1 {
        return Ok(true);
    }
    let f = f.monic();
    let field = f.field();
    let x = Poly::x(field);
    let frob = Frobenius::new(&f)?;

    let primes = prime_factors(n);
    let mut wanted: BTreeMap<usize, Option<Poly>> = primes.iter().map(|q| (n / q, None)).collect();
    let mut h = x.clone();
    for k in 1..=n {
        h = frob.apply(&h)?;
        if let Some(slot) = wanted.get_mut(&k) {
            *slot = Some(h.clone());
        }
    }
    if h != x {
        return Ok(false);
    }
    for power in wanted.into_values() {
        let power = power.expect("every n/q lies in 1..n");
        if !power.sub(&x)?.gcd(&f)?.is_one() {
            return Ok(false);
        }
    }
    Ok(true)
}

/// True when `f` has an irreducible factor of degree at most `bound`
/// (with `bound < deg f`), using gcd(x^(p^i) - x, f) for i = 1..=bound.
fn has_small_factor(f: &Poly, bound: usize) -> Result<bool> {
    let x = Poly::x(f.field());
    let frob = Frobenius::new(f)?;
    let mut h = x.clone();
    for _ in 0..bound {
        h = frob.apply(&h)?;
        if !h.sub(&x)?.gcd(f)?.is_one() {
            return Ok(true);
        }
    }
    Ok(false)
}

/// Rejection-samples a uniformly random monic irreducible of exactly `degree`.
pub fn random_irreducible<R: Rng + ?Sized>(
    field: FieldSpec,
    degree: usize,
    rng: &mut R,
) -> Result<Poly> {
    if degree == 0 {
        return Err(Error::InvalidParameters(
            "irreducible degree must be at least 1".into(),
        ));
    }
    let sieve = (degree / 2).min(SIEVE_DEGREE);
    let cap = 1000 * degree;
    for _ in 0..cap {
        let mut coeffs: Vec<u64> = (0..degree).map(|_| rng.gen_range(0..field.p())).collect();
        coeffs.push(1);
        let candidate = Poly::new(field, coeffs)?;
        if degree > 1 && has_small_factor(&candidate, sieve)? {
            continue;
        }
        if is_irreducible(&candidate)? {
            return Ok(candidate);
        }
    }
    Err(Error::Internal(format!(
        "no irreducible of degree {degree} found in {cap} draws"
    )))
}

fn mobius(mut n: usize) -> i32 {
    let mut result = 1;
    let mut q = 2;
    while q * q <= n {
        if n.is_multiple_of(q) {
            n /= q;
            if n.is_multiple_of(q) {
                return 0;
            }
            result = -result;
        }
        q += 1;
    }
    if n > 1 {
        result = -result;
    }
    result
}

/// Number of monic irreducibles of `degree` over GF(p):
/// (1/d) * sum over e | d of mu(d/e) p^e.
pub fn count_irreducibles(p: u64, degree: usize) -> BigUint {
    if degree == 0 {
        return BigUint::zero();
    }
    let base = BigInt::from(p);
    let mut total = BigInt::zero();
    for e in (1..=degree).filter(|e| degree.is_multiple_of(*e)) {
        let mu = mobius(degree / e);
        if mu != 0 {
            total += BigInt::from(mu) * base.pow(e as u32);
        }
    }
    (total / BigInt::from(degree))
        .to_biguint()
        .expect("irreducible count is nonnegative")
}

/// Draws pairwise distinct monic irreducibles with the given degrees.
pub(crate) fn distinct_irreducibles<R: Rng + ?Sized>(
    field: FieldSpec,
    degrees: &[usize],
    rng: &mut R,
) -> Result<Vec<Poly>> {
    if degrees.is_empty() {
        return Err(Error::InvalidParameters(
            "at least one factor degree is required".into(),
        ));
    }
    if degrees.contains(&0) {
        return Err(Error::InvalidParameters(
            "factor degrees must be at least 1".into(),
        ));
    }
    let mut demand: BTreeMap<usize, usize> = BTreeMap::new();
    for &d in degrees {
        *demand.entry(d).or_default() += 1;
    }
    for (&degree, &wanted) in &demand {
        let available = count_irreducibles(field.p(), degree);
        if BigUint::from(wanted) > available {
            return Err(Error::InfeasibleDegrees {
                p: field.p(),
                degree,
                wanted,
                available: available.to_string(),
            });
        }
    }
    let mut out: Vec<Poly> = Vec::with_capacity(degrees.len());
    for &degree in degrees {
        let next = loop {
            let candidate = random_irreducible(field, degree, rng)?;
            if !out.contains(&candidate) {
                break candidate;
            }
        };
        out.push(next);
    }
    Ok(out)
}

/// `b` pairwise distinct monic irreducibles, deterministic in the seed.
pub fn distinct_irreducible_set(req: &IrreducibleRequest) -> Result<Vec<Poly>> {
    let mut rng = ChaCha8Rng::seed_from_u64(req.rng_seed);
    distinct_irreducibles(req.field, &req.degrees, &mut rng)
}
