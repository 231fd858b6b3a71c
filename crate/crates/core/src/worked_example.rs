//! Replays the three-factor example over GF(2): p_1 = x^3+x+1,
//! p_2 = x^3+x^2+1, p_3 = x^2+x+1, e = 34, message x^4+x^3+1.
//!
//! The headline values of the published example are checked against what the
//! library computes. Its intermediate CRT values are reported next to ours
//! but never asserted: r_3 is printed as 6 (13 mod 3 is 1) and the per-factor
//! residues as (x+1, x^2, 1) where reduction gives (x^2, x+1, x).

use num_bigint::BigUint;

use crate::cipher::{decrypt_block_crt, decrypt_block_plain, encrypt_block};
use crate::error::Result;
use crate::field::FieldSpec;
use crate::keygen::PrivateKey;
use crate::poly::Poly;

pub const FACTORS: [&[u64]; 3] = [&[1, 1, 0, 1], &[1, 0, 1, 1], &[1, 1, 1]];
pub const PUBLIC_EXPONENT: u64 = 34;
pub const MESSAGE: &[u64] = &[1, 0, 0, 1, 1];

/// A computed quantity that must equal its reference value.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Check {
    pub quantity: &'static str,
    pub expected: String,
    pub computed: String,
}

impl Check {
    pub fn passed(&self) -> bool {
        self.expected == self.computed
    }
}

/// A computed intermediate alongside the value the reference text prints.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Annotation {
    pub quantity: String,
    pub computed: String,
    pub printed: String,
}

impl Annotation {
    pub fn differs(&self) -> bool {
        self.computed != self.printed
    }
}

#[derive(Debug, Clone)]
pub struct WorkedExample {
    pub key: PrivateKey,
    pub message: Poly,
    pub ciphertext: Poly,
    /// `c^r_i mod p_i` as used by CRT decryption.
    pub residues: Vec<Poly>,
    pub recovered_crt: Poly,
    pub recovered_plain: Poly,
    pub checks: Vec<Check>,
    pub annotations: Vec<Annotation>,
}

impl WorkedExample {
    pub fn all_passed(&self) -> bool {
        self.checks.iter().all(Check::passed)
    }
}

pub fn replay() -> Result<WorkedExample> {
    let field = FieldSpec::gf2();
    let factors = FACTORS
        .iter()
        .map(|c| Poly::new(field, c.to_vec()))
        .collect::<Result<Vec<_>>>()?;
    let key = PrivateKey::with_public_exponent(field, factors, BigUint::from(PUBLIC_EXPONENT))?;
    let message = Poly::new(field, MESSAGE.to_vec())?;
    let ciphertext = encrypt_block(key.public(), &message)?;
    let residues = key
        .factors()
        .iter()
        .zip(key.crt_exponents())
        .map(|(f, r)| ciphertext.mod_pow(r, f))
        .collect::<Result<Vec<_>>>()?;
    let recovered_crt = decrypt_block_crt(&key, &ciphertext)?;
    let recovered_plain = decrypt_block_plain(&key, &ciphertext)?;

    let recovered = if recovered_crt == recovered_plain {
        recovered_crt.to_string()
    } else {
        format!("crt {recovered_crt} / plain {recovered_plain}")
    };
    let checks = vec![
        Check {
            quantity: "f(x)",
            expected: "x^8+x^6+x^5+x^4+x^3+x^2+1".into(),
            computed: key.public().modulus().to_string(),
        },
        Check {
            quantity: "phi",
            expected: "147".into(),
            computed: key.phi().to_string(),
        },
        Check {
            quantity: "d",
            expected: "13".into(),
            computed: key.d().to_string(),
        },
        Check {
            quantity: "c(x)",
            expected: "x^5+x^4+x^3+x^2+1".into(),
            computed: ciphertext.to_string(),
        },
        Check {
            quantity: "m(x)",
            expected: "x^4+x^3+1".into(),
            computed: recovered,
        },
    ];

    let printed_r = ["6", "6", "6"];
    let printed_residues = ["x+1", "x^2", "1"];
    let mut annotations = Vec::new();
    for (i, (r, printed)) in key.crt_exponents().iter().zip(printed_r).enumerate() {
        annotations.push(Annotation {
            quantity: format!("r_{}", i + 1),
            computed: r.to_string(),
            printed: printed.into(),
        });
    }
    for (i, (s, printed)) in residues.iter().zip(printed_residues).enumerate() {
        annotations.push(Annotation {
            quantity: format!("c^r_{0} mod p_{0}", i + 1),
            computed: s.to_string(),
            printed: printed.into(),
        });
    }

    Ok(WorkedExample {
        key,
        message,
        ciphertext,
        residues,
        recovered_crt,
        recovered_plain,
        checks,
        annotations,
    })
}
