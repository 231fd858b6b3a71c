//! Wall-clock comparison of plain and CRT decryption.
//!
//! For each factor count `b` a key with the same total degree is generated
//! in choose-d mode (a full-size private exponent), random blocks are
//! decrypted both ways, and the median time per block is reported.

use std::fmt::Write as _;
use std::time::{Duration, Instant};

use polyrsa_core::{
    decrypt_block_crt, decrypt_block_plain, keygen, Error, ExponentMode, FieldSpec, KeygenParams,
    Poly, PrivateKey, Result,
};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BenchConfig {
    pub field: FieldSpec,
    pub degree: usize,
    pub factor_counts: Vec<usize>,
    pub trials: usize,
    pub seed: u64,
}

#[derive(Debug, Clone, PartialEq)]
pub struct BenchRow {
    pub factors: usize,
    pub degrees: Vec<usize>,
    pub plain: Duration,
    pub crt: Duration,
}

impl BenchRow {
    /// Median plain time over median CRT time.
    pub fn speedup(&self) -> f64 {
        self.plain.as_secs_f64() / self.crt.as_secs_f64()
    }
}

pub fn median(samples: &mut [Duration]) -> Duration {
    assert!(!samples.is_empty(), "median of no samples");
    samples.sort_unstable();
    let mid = samples.len() / 2;
    if samples.len() % 2 == 1 {
        samples[mid]
    } else {
        (samples[mid - 1] + samples[mid]) / 2
    }
}

pub fn random_block<R: Rng + ?Sized>(field: FieldSpec, degree: usize, rng: &mut R) -> Poly {
    let coeffs = (0..degree).map(|_| rng.gen_range(0..field.p())).collect();
    Poly::new(field, coeffs).expect("coefficients are residues")
}

pub fn bench_key(field: FieldSpec, degree: usize, factors: usize, seed: u64) -> Result<PrivateKey> {
    let mut params = KeygenParams::new(field, degree, factors);
    params.exponent = ExponentMode::ChooseD;
    params.seed = seed;
    Ok(keygen(&params)?.1)
}

/// Times both strategies on the same `trials` random blocks after one
/// warm-up pass. Fails if the strategies ever disagree.
pub fn time_key(key: &PrivateKey, trials: usize, seed: u64) -> Result<BenchRow> {
    if trials == 0 {
        return Err(Error::InvalidParameters(
            "at least one trial is required".into(),
        ));
    }
    let field = key.field();
    let n = key.public().degree();
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let blocks: Vec<Poly> = (0..trials)
        .map(|_| random_block(field, n, &mut rng))
        .collect();

    decrypt_block_plain(key, &blocks[0])?;
    decrypt_block_crt(key, &blocks[0])?;

    let mut plain = Vec::with_capacity(trials);
    let mut crt = Vec::with_capacity(trials);
    for block in &blocks {
        let start = Instant::now();
        let a = decrypt_block_plain(key, block)?;
        plain.push(start.elapsed());
        let start = Instant::now();
        let b = decrypt_block_crt(key, block)?;
        crt.push(start.elapsed());
        if a != b {
            return Err(Error::Internal(format!(
                "plain and CRT decryption disagree on block {block}"
            )));
        }
    }
    Ok(BenchRow {
        factors: key.factors().len(),
        degrees: key.degrees().to_vec(),
        plain: median(&mut plain),
        crt: median(&mut crt),
    })
}

pub fn run(config: &BenchConfig) -> Result<Vec<BenchRow>> {
    if config.factor_counts.is_empty() {
        return Err(Error::InvalidParameters("no factor counts given".into()));
    }
    config
        .factor_counts
        .iter()
        .map(|&b| {
            let key = bench_key(
                config.field,
                config.degree,
                b,
                config.seed.wrapping_add(b as u64),
            )?;
            time_key(&key, config.trials, config.seed)
        })
        .collect()
}

/// `b,plain_ns,crt_ns,speedup`, one row per factor count.
pub fn to_csv(rows: &[BenchRow]) -> String {
    let mut out = String::from("b,plain_ns,crt_ns,speedup\n");
    for r in rows {
        let _ = writeln!(
            out,
            "{},{},{},{:.3}",
            r.factors,
            r.plain.as_nanos(),
            r.crt.as_nanos(),
            r.speedup()
        );
    }
    out
}

pub fn to_table(rows: &[BenchRow]) -> String {
    let mut out = format!(
        "{:>4}  {:>16}  {:>14}  {:>14}  {:>8}\n",
        "b", "degrees", "plain (median)", "crt (median)", "speedup"
    );
    for r in rows {
        let degrees = r
            .degrees
            .iter()
            .map(usize::to_string)
            .collect::<Vec<_>>()
            .join(",");
        let _ = writeln!(
            out,
            "{:>4}  {:>16}  {:>14}  {:>14}  {:>7.2}x",
            r.factors,
            degrees,
            format!("{:.3?}", r.plain),
            format!("{:.3?}", r.crt),
            r.speedup()
        );
    }
    out
}
