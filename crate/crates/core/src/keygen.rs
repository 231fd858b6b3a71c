//! Key pairs for multi-prime RSA over GF(p)[x]/f(x).

use num_bigint::{BigUint, RandBigInt};
use num_integer::Integer;
use num_traits::{One, ToPrimitive, Zero};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::crt::CrtSystem;
use crate::error::{Error, Result};
use crate::field::FieldSpec;
use crate::irreducible::{distinct_irreducibles, is_irreducible};
use crate::poly::Poly;

pub const DEFAULT_PUBLIC_EXPONENT: u64 = 65537;

/// Below this totient, `choose-d` enumerates every candidate instead of sampling.
const ENUMERATE_BELOW: u64 = 1 << 12;

/// Everything an encrypter needs: the field, the modulus f(x) and e.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PublicKey {
    field: FieldSpec,
    modulus: Poly,
    e: BigUint,
}

impl PublicKey {
    pub fn new(modulus: Poly, e: BigUint) -> Result<Self> {
        if modulus.degree() < 2 {
            return Err(Error::InvariantViolation(format!(
                "modulus degree {} is below 2",
                modulus.degree()
            )));
        }
        if e < BigUint::from(3u32) {
            return Err(Error::InvariantViolation(format!(
                "public exponent {e} is below 3"
            )));
        }
        Ok(Self {
            field: modulus.field(),
            modulus,
            e,
        })
    }

    pub fn field(&self) -> FieldSpec {
        self.field
    }

    pub fn modulus(&self) -> &Poly {
        &self.modulus
    }

    pub fn e(&self) -> &BigUint {
        &self.e
    }

    /// `n = deg f`; blocks must have degree strictly below this.
    pub fn degree(&self) -> usize {
        self.modulus.degree() as usize
    }
}

/// The factorization of f(x), the private exponent, and everything
/// precomputed for CRT decryption.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PrivateKey {
    public: PublicKey,
    factors: Vec<Poly>,
    degrees: Vec<usize>,
    d: BigUint,
    phi: BigUint,
    group_orders: Vec<BigUint>,
    crt_exponents: Vec<BigUint>,
    crt: CrtSystem,
}

/// `prod (p^n_i - 1)`, the order of the unit group of GF(p)[x]/f when f is
/// squarefree with factor degrees `n_i`.
pub fn phi_of(field: FieldSpec, degrees: &[usize]) -> BigUint {
    degrees
        .iter()
        .map(|&n| group_order(field, n))
        .fold(BigUint::one(), |acc, x| acc * x)
}

fn group_order(field: FieldSpec, degree: usize) -> BigUint {
    BigUint::from(field.p()).pow(degree as u32) - 1u32
}

/// `r_i = d mod (p^n_i - 1)`.
pub fn crt_exponents(d: &BigUint, field: FieldSpec, degrees: &[usize]) -> Vec<BigUint> {
    degrees.iter().map(|&n| d % group_order(field, n)).collect()
}

/// Splits `n` into `b` parts of `n / b`, adding one to each of the last
/// `n mod b` parts.
pub fn split_degrees(n: usize, b: usize) -> Vec<usize> {
    let (base, extra) = (n / b, n % b);
    (0..b).map(|i| base + usize::from(i >= b - extra)).collect()
}

fn modinv(a: &BigUint, m: &BigUint) -> Option<BigUint> {
    if m.is_one() {
        return Some(BigUint::one());
    }
    a.modinv(m)
}

impl PrivateKey {
    /// Builds a key from explicit factors and exponents, checking every
    /// invariant: factors monic, irreducible and distinct; `e*d = 1 mod phi`;
    /// `1 <= d < phi` (d = 1 when phi = 1).
    pub fn from_factors(
        field: FieldSpec,
        factors: Vec<Poly>,
        e: BigUint,
        d: BigUint,
    ) -> Result<Self> {
        if factors.is_empty() {
            return Err(Error::InvariantViolation("no factors".into()));
        }
        for (i, f) in factors.iter().enumerate() {
            if f.field() != field {
                return Err(Error::FieldMismatch(field.p(), f.field().p()));
            }
            if f.degree() < 1 || !f.is_monic() || !is_irreducible(f)? {
                return Err(Error::InvariantViolation(format!(
                    "factor {} ({f}) is not a monic irreducible",
                    i + 1
                )));
            }
            if factors[..i].contains(f) {
                return Err(Error::InvariantViolation(format!(
                    "factor {} repeats an earlier factor",
                    i + 1
                )));
            }
        }
        Self::assemble(field, factors, e, d)
    }

    /// Derives `d = e^-1 mod phi` for the given factors.
    pub fn with_public_exponent(field: FieldSpec, factors: Vec<Poly>, e: BigUint) -> Result<Self> {
        let degrees: Vec<usize> = factors.iter().map(|f| f.degree().max(0) as usize).collect();
        let phi = phi_of(field, &degrees);
        let d = modinv(&(&e % &phi), &phi).ok_or_else(|| Error::IncompatibleExponent {
            e: e.to_string(),
            phi: phi.to_string(),
        })?;
        Self::from_factors(field, factors, e, d)
    }

    /// Trusts that `factors` are distinct monic irreducibles.
    fn assemble(field: FieldSpec, factors: Vec<Poly>, e: BigUint, d: BigUint) -> Result<Self> {
        let degrees: Vec<usize> = factors.iter().map(|f| f.degree() as usize).collect();
        let phi = phi_of(field, &degrees);
        let crt = CrtSystem::prepare(&factors)?;
        let public = PublicKey::new(crt.product().clone(), e)?;
        let d_in_range = if phi.is_one() {
            d.is_one()
        } else {
            !d.is_zero() && d < phi
        };
        if !d_in_range {
            return Err(Error::InvariantViolation(format!(
                "private exponent outside [1, {phi})"
            )));
        }
        if !((public.e() * &d) % &phi).is_one() && !phi.is_one() {
            return Err(Error::InvariantViolation(
                "e * d is not 1 modulo phi".into(),
            ));
        }
        let group_orders = degrees.iter().map(|&n| group_order(field, n)).collect();
        let crt_exponents = crt_exponents(&d, field, &degrees);
        Ok(Self {
            public,
            factors,
            degrees,
            d,
            phi,
            group_orders,
            crt_exponents,
            crt,
        })
    }

    pub fn public(&self) -> &PublicKey {
        &self.public
    }

    pub fn field(&self) -> FieldSpec {
        self.public.field
    }

    pub fn factors(&self) -> &[Poly] {
        &self.factors
    }

    pub fn degrees(&self) -> &[usize] {
        &self.degrees
    }

    pub fn d(&self) -> &BigUint {
        &self.d
    }

    pub fn phi(&self) -> &BigUint {
        &self.phi
    }

    /// `p^n_i - 1` for each factor.
    pub fn group_orders(&self) -> &[BigUint] {
        &self.group_orders
    }

    /// `r_i = d mod (p^n_i - 1)`.
    pub fn crt_exponents(&self) -> &[BigUint] {
        &self.crt_exponents
    }

    pub fn crt_system(&self) -> &CrtSystem {
        &self.crt
    }
}

/// How the exponent pair is chosen.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum ExponentMode {
    /// Fix e and derive d.
    FixedE(BigUint),
    /// Draw d uniformly from [2, phi) among units, then derive e.
    ChooseD,
}

impl Default for ExponentMode {
    fn default() -> Self {
        ExponentMode::FixedE(BigUint::from(DEFAULT_PUBLIC_EXPONENT))
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct KeygenParams {
    pub field: FieldSpec,
    /// n = deg f.
    pub total_degree: usize,
    /// b, the number of irreducible factors.
    pub factors: usize,
    /// Explicit factor degrees; must have `b` entries summing to `n`.
    pub degrees: Option<Vec<usize>>,
    pub exponent: ExponentMode,
    pub seed: u64,
}

impl KeygenParams {
    pub fn new(field: FieldSpec, total_degree: usize, factors: usize) -> Self {
        Self {
            field,
            total_degree,
            factors,
            degrees: None,
            exponent: ExponentMode::default(),
            seed: 0,
        }
    }

    /// Validated factor degrees: the explicit list, or the automatic split.
    pub fn factor_degrees(&self) -> Result<Vec<usize>> {
        let (n, b) = (self.total_degree, self.factors);
        if n < 2 {
            return Err(Error::InvalidParameters(format!(
                "total degree {n} is below 2"
            )));
        }
        if b == 0 || b > n {
            return Err(Error::InvalidParameters(format!(
                "factor count {b} must lie in 1..={n}"
            )));
        }
        match &self.degrees {
            None => Ok(split_degrees(n, b)),
            Some(list) => {
                if list.len() != b {
                    return Err(Error::InvalidParameters(format!(
                        "{} degrees given for {b} factors",
                        list.len()
                    )));
                }
                if list.contains(&0) {
                    return Err(Error::InvalidParameters(
                        "factor degrees must be at least 1".into(),
                    ));
                }
                if list.iter().sum::<usize>() != n {
                    return Err(Error::InvalidParameters(format!(
                        "degrees {list:?} do not sum to {n}"
                    )));
                }
                Ok(list.clone())
            }
        }
    }
}

fn choose_private_exponent<R: Rng + ?Sized>(
    phi: &BigUint,
    rng: &mut R,
) -> Result<(BigUint, BigUint)> {
    let two = BigUint::from(2u32);
    let three = BigUint::from(3u32);
    let usable = |d: &BigUint| -> Option<BigUint> {
        if !d.gcd(phi).is_one() {
            return None;
        }
        modinv(d, phi).filter(|e| *e >= three)
    };
    if let Some(small) = phi.to_u64().filter(|&v| v < ENUMERATE_BELOW) {
        let candidates: Vec<(BigUint, BigUint)> = (2..small)
            .map(BigUint::from)
            .filter_map(|d| usable(&d).map(|e| (d, e)))
            .collect();
        if candidates.is_empty() {
            return Err(Error::InvalidParameters(format!(
                "phi = {phi} admits no private exponent d in [2, phi) with e >= 3"
            )));
        }
        return Ok(candidates[rng.gen_range(0..candidates.len())].clone());
    }
    loop {
        let d = rng.gen_biguint_range(&two, phi);
        if let Some(e) = usable(&d) {
            return Ok((d, e));
        }
    }
}

/// Generates a key pair. Deterministic in `params.seed`.
pub fn keygen(params: &KeygenParams) -> Result<(PublicKey, PrivateKey)> {
    let field = params.field;
    let degrees = params.factor_degrees()?;
    let phi = phi_of(field, &degrees);
    if let ExponentMode::FixedE(e) = &params.exponent {
        if *e < BigUint::from(3u32) {
            return Err(Error::InvalidParameters(format!(
                "public exponent {e} is below 3"
            )));
        }
        // phi depends only on the degrees, so no choice of factors can fix this.
        if !e.gcd(&phi).is_one() {
            return Err(Error::IncompatibleExponent {
                e: e.to_string(),
                phi: phi.to_string(),
            });
        }
    }
    let mut rng = ChaCha8Rng::seed_from_u64(params.seed);
    let factors = distinct_irreducibles(field, &degrees, &mut rng)?;
    let (e, d) = match &params.exponent {
        ExponentMode::FixedE(e) => {
            let d = modinv(&(e % &phi), &phi).expect("e is coprime to phi");
            (e.clone(), d)
        }
        ExponentMode::ChooseD => {
            let (d, e) = choose_private_exponent(&phi, &mut rng)?;
            (e, d)
        }
    };
    let private = PrivateKey::assemble(field, factors, e, d)?;
    Ok((private.public.clone(), private))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn gf(p: u64) -> FieldSpec {
        FieldSpec::new(p).unwrap()
    }

    fn poly(coeffs: &[u64]) -> Poly {
        Poly::new(FieldSpec::gf2(), coeffs.to_vec()).unwrap()
    }

    fn example_factors() -> Vec<Poly> {
        vec![poly(&[1, 1, 0, 1]), poly(&[1, 0, 1, 1]), poly(&[1, 1, 1])]
    }

    fn big(v: u64) -> BigUint {
        BigUint::from(v)
    }

    #[test]
    fn phi_examples() {
        assert_eq!(phi_of(gf(2), &[3, 3, 2]), big(147));
        assert_eq!(phi_of(gf(2), &[1]), big(1));
        assert_eq!(phi_of(gf(3), &[2, 3]), big(208));
    }

    #[test]
    fn crt_exponent_examples() {
        assert_eq!(
            crt_exponents(&big(13), gf(2), &[3, 3, 2]),
            [big(6), big(6), big(1)]
        );
        assert_eq!(crt_exponents(&big(1), gf(3), &[2, 3]), [big(1), big(1)]);
        let phi = phi_of(gf(3), &[2, 3]);
        assert_eq!(
            crt_exponents(&(phi + 1u32), gf(3), &[2, 3]),
            [big(1), big(1)]
        );
        // a one-element group sends everything to exponent 0
        assert_eq!(crt_exponents(&big(5), gf(2), &[1]), [big(0)]);
    }

    #[test]
    fn private_exponent_of_worked_example() {
        let key = PrivateKey::with_public_exponent(gf(2), example_factors(), big(34)).unwrap();
        assert_eq!(key.d(), &big(13));
        assert_eq!(key.phi(), &big(147));
        assert_eq!(key.public().modulus(), &poly(&[1, 0, 1, 1, 1, 1, 1, 0, 1]));
        assert_eq!(key.crt_exponents(), [big(6), big(6), big(1)]);
    }

    #[test]
    fn auto_split() {
        assert_eq!(split_degrees(8, 3), [2, 3, 3]);
        assert_eq!(split_degrees(8, 2), [4, 4]);
        assert_eq!(split_degrees(7, 7), [1; 7]);
        assert_eq!(split_degrees(10, 4), [2, 2, 3, 3]);
    }

    #[test]
    fn fixed_exponent_key() {
        let mut params = KeygenParams::new(gf(2), 40, 3);
        params.seed = 17;
        let (pk, sk) = keygen(&params).unwrap();
        assert_eq!(pk.e(), &big(65537));
        assert_eq!((pk.e() * sk.d()) % sk.phi(), big(1));
        assert!(sk.d() < sk.phi());
        assert_eq!(sk.degrees(), [13, 13, 14]);
        assert_eq!(sk.degrees().iter().sum::<usize>(), pk.degree());
        let (pk2, sk2) = keygen(&params).unwrap();
        assert_eq!((pk, sk), (pk2, sk2));
    }

    #[test]
    fn incompatible_public_exponent() {
        // 65537 divides 2^32 - 1
        let params = KeygenParams::new(gf(2), 64, 2);
        assert!(matches!(
            keygen(&params),
            Err(Error::IncompatibleExponent { .. })
        ));
        let mut params = KeygenParams::new(gf(2), 8, 3);
        params.exponent = ExponentMode::FixedE(big(3));
        params.degrees = Some(vec![3, 3, 2]);
        assert!(matches!(
            keygen(&params),
            Err(Error::IncompatibleExponent { .. })
        ));
        assert!(matches!(
            PrivateKey::with_public_exponent(gf(2), example_factors(), big(21)),
            Err(Error::IncompatibleExponent { .. })
        ));
    }

    #[test]
    fn choose_d_mode() {
        for (p, n, b) in [(2, 8, 3), (3, 12, 2), (2, 80, 2), (5, 6, 3)] {
            let mut params = KeygenParams::new(gf(p), n, b);
            params.exponent = ExponentMode::ChooseD;
            params.seed = 99;
            let (pk, sk) = keygen(&params).unwrap();
            assert!(sk.d() >= &big(2) && sk.d() < sk.phi());
            assert!(pk.e() >= &big(3));
            assert_eq!((pk.e() * sk.d()) % sk.phi(), big(1));
        }
    }

    #[test]
    fn parameter_errors() {
        let bad = |n, b, degrees: Option<Vec<usize>>| {
            let mut params = KeygenParams::new(gf(2), n, b);
            params.degrees = degrees;
            keygen(&params)
        };
        assert!(matches!(bad(8, 0, None), Err(Error::InvalidParameters(_))));
        assert!(matches!(bad(3, 4, None), Err(Error::InvalidParameters(_))));
        assert!(matches!(bad(1, 1, None), Err(Error::InvalidParameters(_))));
        assert!(matches!(
            bad(8, 3, Some(vec![3, 3])),
            Err(Error::InvalidParameters(_))
        ));
        assert!(matches!(
            bad(8, 3, Some(vec![3, 3, 3])),
            Err(Error::InvalidParameters(_))
        ));
        assert!(matches!(
            bad(8, 3, Some(vec![4, 4, 0])),
            Err(Error::InvalidParameters(_))
        ));
        // x and x+1 only: a third linear factor cannot exist
        let mut params = KeygenParams::new(gf(2), 3, 3);
        params.exponent = ExponentMode::FixedE(big(3));
        assert!(matches!(
            keygen(&params),
            Err(Error::InfeasibleDegrees { .. })
        ));
    }

    #[test]
    fn from_factors_validates() {
        let f = example_factors();
        assert!(PrivateKey::from_factors(gf(2), f.clone(), big(34), big(13)).is_ok());
        assert!(matches!(
            PrivateKey::from_factors(gf(2), f.clone(), big(34), big(14)),
            Err(Error::InvariantViolation(_))
        ));
        assert!(matches!(
            PrivateKey::from_factors(gf(2), f.clone(), big(34), big(160)),
            Err(Error::InvariantViolation(_))
        ));
        let mut dup = f.clone();
        dup[1] = dup[0].clone();
        assert!(matches!(
            PrivateKey::from_factors(gf(2), dup, big(34), big(13)),
            Err(Error::InvariantViolation(_))
        ));
        let reducible = vec![poly(&[1, 0, 1])];
        assert!(matches!(
            PrivateKey::from_factors(gf(2), reducible, big(5), big(1)),
            Err(Error::InvariantViolation(_))
        ));
    }

    #[test]
    fn unit_totient_key() {
        // f = x(x+1): phi = 1, so d = 1
        let key =
            PrivateKey::with_public_exponent(gf(2), vec![poly(&[0, 1]), poly(&[1, 1])], big(3))
                .unwrap();
        assert_eq!(key.d(), &big(1));
        assert_eq!(key.phi(), &big(1));
    }
}
