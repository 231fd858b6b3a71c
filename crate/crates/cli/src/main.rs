use std::fs;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{error::ErrorKind, Args, Parser, Subcommand, ValueEnum};
use num_bigint::BigUint;
use polyrsa_bench::{to_csv, to_table, BenchConfig};
use polyrsa_core::{
    decrypt_message, encrypt_message, keygen, keyio, worked_example, DecryptMode, Error,
    ExponentMode, FieldSpec, KeygenParams,
};

/// Multi-prime RSA over GF(p)[x]/f(x).
#[derive(Debug, Parser)]
#[command(name = "polyrsa", version)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Generate a key pair.
    Keygen(KeygenArgs),
    /// Encrypt a file under a public key.
    Encrypt(EncryptArgs),
    /// Decrypt a ciphertext file with a private key.
    Decrypt(DecryptArgs),
    /// Time plain against CRT decryption for several factor counts.
    Bench(BenchArgs),
    /// Replay the three-factor GF(2) example and check every headline value.
    PaperExample(ExampleArgs),
}

#[derive(Debug, Args)]
struct KeygenArgs {
    /// Field characteristic p.
    #[arg(long)]
    prime: u64,
    /// Total modulus degree n.
    #[arg(long)]
    degree: usize,
    /// Number of irreducible factors b.
    #[arg(long, value_parser = clap::value_parser!(u64).range(1..))]
    factors: u64,
    /// Explicit factor degrees, summing to n.
    #[arg(long, value_delimiter = ',')]
    degrees: Option<Vec<usize>>,
    /// Public exponent (default 65537).
    #[arg(long = "e", conflicts_with = "choose_d")]
    e: Option<BigUint>,
    /// Draw d at random and derive e from it.
    #[arg(long)]
    choose_d: bool,
    #[arg(long, default_value_t = 0)]
    seed: u64,
    #[arg(long)]
    pub_out: PathBuf,
    #[arg(long)]
    priv_out: PathBuf,
}

#[derive(Debug, Args)]
struct EncryptArgs {
    #[arg(long = "pub")]
    public: PathBuf,
    #[arg(long = "in")]
    input: PathBuf,
    #[arg(long = "out")]
    output: PathBuf,
}

#[derive(Debug, Args)]
struct DecryptArgs {
    #[arg(long = "priv")]
    private: PathBuf,
    #[arg(long = "in")]
    input: PathBuf,
    #[arg(long = "out")]
    output: PathBuf,
    /// Exponentiate modulo f directly instead of per factor.
    #[arg(long)]
    no_crt: bool,
}

#[derive(Debug, Clone, Copy, ValueEnum)]
enum Format {
    Table,
    Csv,
}

#[derive(Debug, Args)]
struct BenchArgs {
    #[arg(long)]
    prime: u64,
    #[arg(long)]
    degree: usize,
    /// Factor counts to compare, e.g. 1,2,4.
    #[arg(long, value_delimiter = ',', required = true)]
    factors_list: Vec<usize>,
    #[arg(long, default_value_t = 20, value_parser = clap::value_parser!(u64).range(1..))]
    trials: u64,
    #[arg(long, default_value_t = 0)]
    seed: u64,
    #[arg(long, value_enum, default_value_t = Format::Table)]
    format: Format,
}

#[derive(Debug, Args)]
struct ExampleArgs {
    #[arg(long)]
    verbose: bool,
}

struct Failure {
    code: u8,
    message: String,
}

impl Failure {
    fn usage(message: impl Into<String>) -> Self {
        Self {
            code: 1,
            message: message.into(),
        }
    }

    fn data(message: impl Into<String>) -> Self {
        Self {
            code: 2,
            message: message.into(),
        }
    }

    fn internal(message: impl Into<String>) -> Self {
        Self {
            code: 3,
            message: message.into(),
        }
    }
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        match e {
            Error::InvalidParameters(_) | Error::NotPrime(_) => Failure::usage(e.to_string()),
            Error::Internal(_) => Failure::internal(e.to_string()),
            _ => Failure::data(e.to_string()),
        }
    }
}

fn read(path: &Path) -> Result<Vec<u8>, Failure> {
    fs::read(path).map_err(|e| Failure::data(format!("{}: {e}", path.display())))
}

fn read_text(path: &Path) -> Result<String, Failure> {
    String::from_utf8(read(path)?)
        .map_err(|_| Failure::data(format!("{}: not valid UTF-8", path.display())))
}

fn write(path: &Path, contents: &[u8]) -> Result<(), Failure> {
    fs::write(path, contents).map_err(|e| Failure::data(format!("{}: {e}", path.display())))
}

fn field(p: u64) -> Result<FieldSpec, Failure> {
    FieldSpec::new(p).map_err(|e| Failure::usage(e.to_string()))
}

fn run_keygen(args: KeygenArgs) -> Result<(), Failure> {
    let mut params = KeygenParams::new(field(args.prime)?, args.degree, args.factors as usize);
    params.degrees = args.degrees;
    params.seed = args.seed;
    params.exponent = match (args.e, args.choose_d) {
        (_, true) => ExponentMode::ChooseD,
        (Some(e), false) => ExponentMode::FixedE(e),
        (None, false) => ExponentMode::default(),
    };
    let (public, private) = keygen(&params)?;
    write(&args.pub_out, keyio::save_public(&public).as_bytes())?;
    write(&args.priv_out, keyio::save_private(&private).as_bytes())?;
    let degrees: Vec<String> = private.degrees().iter().map(usize::to_string).collect();
    println!("degrees: {}", degrees.join(","));
    println!("phi bits: {}", private.phi().bits());
    println!("e: {}", public.e());
    println!("d bits: {}", private.d().bits());
    Ok(())
}

fn run_encrypt(args: EncryptArgs) -> Result<(), Failure> {
    let key = keyio::load_public(&read_text(&args.public)?)?;
    let message = read(&args.input)?;
    let ct = encrypt_message(&key, &message)?;
    write(&args.output, keyio::save_ciphertext(&ct).as_bytes())
}

fn run_decrypt(args: DecryptArgs) -> Result<(), Failure> {
    let key = keyio::load_private(&read_text(&args.private)?)?;
    let ct = keyio::load_ciphertext(&read_text(&args.input)?)?;
    let mode = if args.no_crt {
        DecryptMode::Plain
    } else {
        DecryptMode::Crt
    };
    let message = decrypt_message(&key, &ct, mode)?;
    write(&args.output, &message)
}

fn run_bench(args: BenchArgs) -> Result<(), Failure> {
    if args.factors_list.contains(&0) {
        return Err(Failure::usage("factor counts must be at least 1"));
    }
    let config = BenchConfig {
        field: field(args.prime)?,
        degree: args.degree,
        factor_counts: args.factors_list,
        trials: args.trials as usize,
        seed: args.seed,
    };
    let rows = polyrsa_bench::run(&config)?;
    match args.format {
        Format::Table => print!("{}", to_table(&rows)),
        Format::Csv => print!("{}", to_csv(&rows)),
    }
    Ok(())
}

fn tuple<T: ToString>(items: impl IntoIterator<Item = T>) -> String {
    let parts: Vec<String> = items.into_iter().map(|x| x.to_string()).collect();
    format!("({})", parts.join(", "))
}

fn run_example(args: ExampleArgs) -> Result<(), Failure> {
    let ex = worked_example::replay()?;
    if args.verbose {
        println!("field: GF(2)");
        for (i, f) in ex.key.factors().iter().enumerate() {
            println!("p_{}(x) = {f}", i + 1);
        }
        println!("e = {}", ex.key.public().e());
        println!("m(x) = {}", ex.message);
        println!();
    }
    for check in &ex.checks {
        let status = if check.passed() { "PASS" } else { "FAIL" };
        println!(
            "{status} {}: computed {} expected {}",
            check.quantity, check.computed, check.expected
        );
    }
    let (r, residues) = ex.annotations.split_at(ex.key.factors().len());
    let computed_r = tuple(r.iter().map(|a| &a.computed));
    let printed_r = tuple(r.iter().map(|a| &a.printed));
    let computed_s = tuple(residues.iter().map(|a| &a.computed));
    let printed_s = tuple(residues.iter().map(|a| &a.printed));
    let note = |computed: &str, printed: &str| {
        if computed == printed {
            String::new()
        } else {
            format!("  [published: {printed}]")
        }
    };
    println!("r = {computed_r}{}", note(&computed_r, &printed_r));
    println!("residues = {computed_s}{}", note(&computed_s, &printed_s));
    if args.verbose {
        for a in &ex.annotations {
            let mark = if a.differs() { "differs" } else { "matches" };
            println!(
                "  {} = {} (published {}, {mark})",
                a.quantity, a.computed, a.printed
            );
        }
        println!("plain decryption: {}", ex.recovered_plain);
        println!("crt decryption:   {}", ex.recovered_crt);
    }
    if ex.all_passed() {
        Ok(())
    } else {
        Err(Failure::internal("worked example does not reproduce"))
    }
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return match e.kind() {
                ErrorKind::DisplayHelp | ErrorKind::DisplayVersion => ExitCode::SUCCESS,
                _ => ExitCode::from(1),
            };
        }
    };
    let result = match cli.command {
        Command::Keygen(a) => run_keygen(a),
        Command::Encrypt(a) => run_encrypt(a),
        Command::Decrypt(a) => run_decrypt(a),
        Command::Bench(a) => run_bench(a),
        Command::PaperExample(a) => run_example(a),
    };
    match result {
        Ok(()) => ExitCode::SUCCESS,
        Err(f) => {
            eprintln!("error: {}", f.message);
            ExitCode::from(f.code)
        }
    }
}
