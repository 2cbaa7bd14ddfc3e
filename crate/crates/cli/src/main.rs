//! The `rkmx` command line: matrix and key generation, encryption,
//! decryption, analysis, keyspace counts, and benchmarks.
//!
//! Exit codes: 0 success, 2 usage or validation error, 3 ciphertext
//! integrity failure, 4 I/O failure.

use std::fmt;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{ArgGroup, Args, Parser, Subcommand, ValueEnum};
use rand::Rng;
use rkmx_core::analysis::{
    frequency_histogram, kasiski_classic, kasiski_paper, keyspace, shannon_entropy,
    AnalysisError, FrequencyReport, KasiskiReport, KeyspaceReport,
};
use rkmx_core::bench::{render_csv, render_table, run_suite, BenchError, SuiteConfig};
use rkmx_core::cipher::{
    decrypt, encrypt, generate_key, CipherError, CipherMode, SubstitutionKey,
};
use rkmx_core::matrix::{generate_matrix, parse_matrix, serialize_matrix, MatrixError};

#[derive(Parser)]
#[command(
    name = "rkmx",
    version,
    about = "Randomized key-matrix cipher toolkit",
    long_about = "Encrypts, decrypts, analyzes, and benchmarks a polyalphabetic \
                  substitution cipher built on a pre-shared 95x94 key matrix. \
                  A study instrument for classical cryptography, not a secure channel."
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Generate a key matrix from a seed and write it in RKMX1 form
    Genmatrix {
        /// Seed for the deterministic generator
        #[arg(long)]
        seed: u64,
        /// Where to write the matrix file
        #[arg(long)]
        out: PathBuf,
    },
    /// Pick a per-message key: distinct row identifiers from a matrix
    Keygen {
        /// Matrix file the key must match
        #[arg(long)]
        matrix: PathBuf,
        /// Number of rows to select (1 to 16)
        #[arg(long)]
        length: usize,
        /// Seed for reproducible keys; omitted means OS randomness
        #[arg(long)]
        seed: Option<u64>,
        /// Where to write the single-line key file
        #[arg(long)]
        out: PathBuf,
    },
    /// Encrypt a file
    Encrypt(CryptArgs),
    /// Decrypt a file
    Decrypt(CryptArgs),
    /// Frequency, entropy, and Kasiski reports over a file
    Analyze {
        #[command(subcommand)]
        what: AnalyzeCommand,
    },
    /// Exact key counts per cipher
    Keyspace {
        /// One of caesar, vigenere, playfair, rkm
        #[arg(long)]
        cipher: String,
        /// Keyword length for vigenere, key length for rkm
        #[arg(long)]
        key_length: Option<usize>,
        /// For rkm: sum the counts over key lengths 1..=K
        #[arg(long)]
        cumulative: bool,
        #[arg(long, value_enum, default_value_t = ReportFormat::Text)]
        format: ReportFormat,
    },
    /// Time encryption and decryption across input sizes
    Bench {
        /// Comma-separated input sizes in bytes
        #[arg(long, value_delimiter = ',')]
        sizes: Option<Vec<usize>>,
        /// Comma-separated subset of caesar, vigenere, playfair, rkm
        #[arg(long, value_delimiter = ',')]
        ciphers: Option<Vec<String>>,
        /// Key length for the rkm cipher
        #[arg(long, default_value_t = 8)]
        key_length: usize,
        #[arg(long, value_enum, default_value_t = BenchFormat::Text)]
        format: BenchFormat,
    },
}

#[derive(Args)]
#[command(group(ArgGroup::new("key_source").required(true).args(["key", "key_string"])))]
struct CryptArgs {
    /// Matrix file in RKMX1 form
    #[arg(long)]
    matrix: PathBuf,
    /// Key file: one line of row identifiers
    #[arg(long)]
    key: Option<PathBuf>,
    /// Key given inline instead of as a file
    #[arg(long)]
    key_string: Option<String>,
    #[arg(long, value_enum)]
    mode: ModeArg,
    /// Input file
    #[arg(long = "in")]
    input: PathBuf,
    /// Output file
    #[arg(long)]
    out: PathBuf,
}

#[derive(Subcommand)]
enum AnalyzeCommand {
    /// Per-byte histogram
    Freq {
        #[arg(long = "in")]
        input: PathBuf,
        #[arg(long, value_enum, default_value_t = ReportFormat::Text)]
        format: ReportFormat,
    },
    /// Shannon entropy in bits per symbol
    Entropy {
        #[arg(long = "in")]
        input: PathBuf,
        #[arg(long, value_enum, default_value_t = ReportFormat::Text)]
        format: ReportFormat,
    },
    /// Key-length estimation from repeated patterns
    Kasiski {
        #[arg(long = "in")]
        input: PathBuf,
        #[arg(long, value_enum, default_value_t = VariantArg::Classic)]
        variant: VariantArg,
        /// Single character to track (paper variant only)
        #[arg(long)]
        pattern: Option<char>,
        /// Repeated n-gram length (classic variant only)
        #[arg(long, default_value_t = 3)]
        ngram: usize,
        #[arg(long, value_enum, default_value_t = ReportFormat::Text)]
        format: ReportFormat,
    },
}

#[derive(Clone, Copy, ValueEnum)]
enum ModeArg {
    Text,
    Binary,
}

impl From<ModeArg> for CipherMode {
    fn from(mode: ModeArg) -> Self {
        match mode {
            ModeArg::Text => CipherMode::Text,
            ModeArg::Binary => CipherMode::Binary,
        }
    }
}

#[derive(Clone, Copy, ValueEnum)]
enum VariantArg {
    Paper,
    Classic,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum ReportFormat {
    Text,
    Json,
}

#[derive(Clone, Copy, ValueEnum)]
enum BenchFormat {
    Text,
    Csv,
}

enum CliError {
    Usage(String),
    Integrity(String),
    Io(String),
}

impl CliError {
    fn exit_code(&self) -> u8 {
        match self {
            CliError::Usage(_) => 2,
            CliError::Integrity(_) => 3,
            CliError::Io(_) => 4,
        }
    }
}

impl fmt::Display for CliError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            CliError::Usage(msg) | CliError::Integrity(msg) | CliError::Io(msg) => {
                f.write_str(msg)
            }
        }
    }
}

impl From<MatrixError> for CliError {
    fn from(err: MatrixError) -> Self {
        let mut msg = err.to_string();
        if let MatrixError::InvalidMatrix(violations) = &err {
            for v in violations.iter().take(5) {
                msg.push_str(&format!("\n  {v}"));
            }
            if violations.len() > 5 {
                msg.push_str(&format!("\n  ... and {} more", violations.len() - 5));
            }
        }
        CliError::Usage(msg)
    }
}

impl From<CipherError> for CliError {
    fn from(err: CipherError) -> Self {
        match err {
            CipherError::KeyLengthOutOfRange(_)
            | CipherError::DuplicateIdentifier(_)
            | CipherError::UnknownRowIdentifier(_) => CliError::Usage(err.to_string()),
            CipherError::TruncatedBlock { .. }
            | CipherError::InconsistentBlock { .. }
            | CipherError::NotInRow { .. }
            | CipherError::Codec(_) => CliError::Integrity(err.to_string()),
        }
    }
}

impl From<AnalysisError> for CliError {
    fn from(err: AnalysisError) -> Self {
        CliError::Usage(err.to_string())
    }
}

impl From<BenchError> for CliError {
    fn from(err: BenchError) -> Self {
        match err {
            BenchError::Cipher(inner) => inner.into(),
            other => CliError::Usage(other.to_string()),
        }
    }
}

fn read_file(path: &Path) -> Result<Vec<u8>, CliError> {
    std::fs::read(path).map_err(|e| CliError::Io(format!("reading {}: {e}", path.display())))
}

fn write_file(path: &Path, data: &[u8]) -> Result<(), CliError> {
    std::fs::write(path, data)
        .map_err(|e| CliError::Io(format!("writing {}: {e}", path.display())))
}

fn load_matrix(path: &Path) -> Result<rkmx_core::matrix::KeyMatrix, CliError> {
    Ok(parse_matrix(&read_file(path)?)?)
}

fn load_key(args: &CryptArgs) -> Result<SubstitutionKey, CliError> {
    let identifiers = match (&args.key, &args.key_string) {
        (Some(path), None) => {
            let mut raw = read_file(path)?;
            if raw.last() == Some(&b'\n') {
                raw.pop();
            }
            if raw.last() == Some(&b'\r') {
                raw.pop();
            }
            raw
        }
        (None, Some(s)) => s.clone().into_bytes(),
        // clap's argument group guarantees exactly one source
        _ => unreachable!("key source group"),
    };
    Ok(SubstitutionKey::new(identifiers)?)
}

fn byte_label(b: u8) -> String {
    if (0x21..=0x7e).contains(&b) {
        (b as char).to_string()
    } else {
        format!("0x{b:02x}")
    }
}

fn render_freq_text(report: &FrequencyReport) -> String {
    let mut out = format!("total: {}\n{:<6} {:>10} {:>12}\n", report.total, "byte", "count", "probability");
    for (&b, &count) in &report.counts {
        out.push_str(&format!(
            "{:<6} {:>10} {:>12.6}\n",
            byte_label(b),
            count,
            report.probabilities[&b]
        ));
    }
    out
}

fn render_kasiski_text(report: &KasiskiReport) -> String {
    let join = |v: &[usize]| {
        v.iter().map(|n| n.to_string()).collect::<Vec<_>>().join(" ")
    };
    format!(
        "variant: {}\npattern: {}\npositions: {}\ndistances: {}\ngcd: {}\nestimated key length: {}\n",
        match report.variant {
            rkmx_core::analysis::KasiskiVariant::Paper => "paper",
            rkmx_core::analysis::KasiskiVariant::Classic => "classic",
        },
        report.pattern,
        join(&report.positions),
        join(&report.distances),
        report.gcd,
        report.estimated_key_length
    )
}

fn render_keyspace_text(report: &KeyspaceReport) -> String {
    let mut out = format!("cipher: {}\n", report.cipher);
    for (name, value) in &report.parameters {
        out.push_str(&format!("{name}: {value}\n"));
    }
    out.push_str(&format!("value: {}\nscientific: {}\n", report.value, report.scientific));
    out
}

fn to_json<T: serde::Serialize>(value: &T) -> String {
    let mut out = serde_json::to_string_pretty(value).expect("reports serialize");
    out.push('\n');
    out
}

fn run(cli: Cli) -> Result<(), CliError> {
    match cli.command {
        Command::Genmatrix { seed, out } => {
            let matrix = generate_matrix(seed);
            write_file(&out, &serialize_matrix(&matrix))
        }
        Command::Keygen { matrix, length, seed, out } => {
            let matrix = load_matrix(&matrix)?;
            let seed = seed.unwrap_or_else(|| rand::thread_rng().gen());
            let key = generate_key(&matrix, length, seed)?;
            let mut line = key.as_str().as_bytes().to_vec();
            line.push(b'\n');
            write_file(&out, &line)
        }
        Command::Encrypt(args) => {
            let matrix = load_matrix(&args.matrix)?;
            let key = load_key(&args)?;
            let plaintext = read_file(&args.input)?;
            let ciphertext = encrypt(&matrix, &key, &plaintext, args.mode.into())?;
            write_file(&args.out, &ciphertext)
        }
        Command::Decrypt(args) => {
            let matrix = load_matrix(&args.matrix)?;
            let key = load_key(&args)?;
            let ciphertext = read_file(&args.input)?;
            let plaintext = decrypt(&matrix, &key, &ciphertext, args.mode.into())?;
            write_file(&args.out, &plaintext)
        }
        Command::Analyze { what } => {
            let rendered = match what {
                AnalyzeCommand::Freq { input, format } => {
                    let report = frequency_histogram(&read_file(&input)?);
                    match format {
                        ReportFormat::Text => render_freq_text(&report),
                        ReportFormat::Json => to_json(&report),
                    }
                }
                AnalyzeCommand::Entropy { input, format } => {
                    let report = shannon_entropy(&frequency_histogram(&read_file(&input)?));
                    match format {
                        ReportFormat::Text => {
                            format!("bits_per_symbol: {:.6}\n", report.bits_per_symbol)
                        }
                        ReportFormat::Json => to_json(&report),
                    }
                }
                AnalyzeCommand::Kasiski { input, variant, pattern, ngram, format } => {
                    let data = read_file(&input)?;
                    let report = match variant {
                        VariantArg::Paper => {
                            let pattern = pattern.ok_or_else(|| {
                                CliError::Usage(
                                    "--variant paper requires --pattern".to_string(),
                                )
                            })?;
                            if !pattern.is_ascii() {
                                return Err(CliError::Usage(format!(
                                    "pattern {pattern:?} is not a single-byte character"
                                )));
                            }
                            kasiski_paper(&data, pattern as u8)?
                        }
                        VariantArg::Classic => kasiski_classic(&data, ngram)?,
                    };
                    match format {
                        ReportFormat::Text => render_kasiski_text(&report),
                        ReportFormat::Json => to_json(&report),
                    }
                }
            };
            print!("{rendered}");
            Ok(())
        }
        Command::Keyspace { cipher, key_length, cumulative, format } => {
            let report = keyspace(&cipher, key_length, cumulative)?;
            let rendered = match format {
                ReportFormat::Text => render_keyspace_text(&report),
                ReportFormat::Json => to_json(&report),
            };
            print!("{rendered}");
            Ok(())
        }
        Command::Bench { sizes, ciphers, key_length, format } => {
            let defaults = SuiteConfig::default();
            let config = SuiteConfig {
                sizes: sizes.unwrap_or(defaults.sizes),
                ciphers: ciphers.unwrap_or(defaults.ciphers),
                key_length,
                seed: defaults.seed,
            };
            let reports = run_suite(&config)?;
            let rendered = match format {
                BenchFormat::Text => render_table(&reports),
                BenchFormat::Csv => render_csv(&reports),
            };
            print!("{rendered}");
            Ok(())
        }
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(err) => {
            eprintln!("error: {err}");
            ExitCode::from(err.exit_code())
        }
    }
}
