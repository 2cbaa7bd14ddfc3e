//! Timing harness: deterministic corpora, per-operation measurements,
//! and the cross-cipher suite.
//!
//! Each measurement runs one warm-up pass and then five timed passes on
//! a monotonic clock, reporting the median. Single-shot timings are
//! noise-dominated at the 10KB end, so the median is the published
//! number; every pass still measures one whole end-to-start
//! transformation. The warm-up output doubles as a correctness check:
//! what was encrypted must decrypt back to the expected bytes before
//! any timing is reported.

use crate::baselines::{
    caesar_decrypt, caesar_encrypt, normalize_letters, playfair_decrypt, playfair_encrypt,
    playfair_prepare, vigenere_decrypt, vigenere_encrypt, CaesarKey, PlayfairKey, VigenereKey,
};
use crate::cipher::{decrypt, encrypt, generate_key, CipherError, CipherMode, SubstitutionKey};
use crate::matrix::{generate_matrix, KeyMatrix};
use rand::{Rng, RngCore, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};
use std::hint::black_box;
use std::time::{Duration, Instant};

/// The suite's default input sizes: 10KB, 500KB, 1MB.
pub const DEFAULT_SIZES: [usize; 3] = [10_240, 512_000, 1_048_576];
/// Default rkm key length for benchmarks.
pub const DEFAULT_KEY_LENGTH: usize = 8;
/// Every cipher the suite knows, in its default order.
pub const DEFAULT_CIPHERS: [&str; 4] = ["caesar", "vigenere", "playfair", "rkm"];

const SEED_TEXT: &str = include_str!("../assets/corpus_seed.txt");

#[derive(Debug, thiserror::Error, Clone, PartialEq, Eq)]
pub enum BenchError {
    #[error("unknown cipher {0:?}, expected one of caesar, vigenere, playfair, rkm")]
    UnknownCipher(String),
    #[error("cannot time an empty corpus")]
    EmptyCorpus,
    #[error(transparent)]
    Cipher(#[from] CipherError),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum CorpusKind {
    EnglishLike,
    RandomBytes,
}

/// A deterministic test input: same kind, size, and seed always yield
/// the same bytes.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Corpus {
    pub kind: CorpusKind,
    pub size: usize,
    pub seed: u64,
    pub data: Vec<u8>,
}

/// Builds a corpus. English-like data samples whole sentences from the
/// bundled seed text, preserving realistic letter frequencies; random
/// bytes are uniform.
pub fn generate_corpus(kind: CorpusKind, size: usize, seed: u64) -> Corpus {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut data = Vec::with_capacity(size + 128);
    match kind {
        CorpusKind::EnglishLike => {
            let sentences: Vec<&str> = SEED_TEXT
                .split('.')
                .map(str::trim)
                .filter(|s| !s.is_empty())
                .collect();
            while data.len() < size {
                let sentence = sentences[rng.gen_range(0..sentences.len())];
                data.extend_from_slice(sentence.as_bytes());
                data.extend_from_slice(b". ");
            }
            data.truncate(size);
        }
        CorpusKind::RandomBytes => {
            data.resize(size, 0);
            rng.fill_bytes(&mut data);
        }
    }
    Corpus { kind, size, seed, data }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Operation {
    Encrypt,
    Decrypt,
}

impl std::fmt::Display for Operation {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(match self {
            Operation::Encrypt => "encrypt",
            Operation::Decrypt => "decrypt",
        })
    }
}

/// One timed measurement.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct BenchReport {
    pub cipher: String,
    pub operation: Operation,
    pub size_bytes: usize,
    pub duration_s: f64,
    pub throughput_bps: f64,
}

/// A cipher with its keys fixed, ready to run.
enum Runner {
    Caesar(CaesarKey),
    Vigenere(VigenereKey),
    Playfair(PlayfairKey),
    Rkm { matrix: KeyMatrix, key: SubstitutionKey },
}

impl Runner {
    fn build(cipher: &str, key_length: usize, seed: u64) -> Result<Self, BenchError> {
        match cipher {
            "caesar" => Ok(Self::Caesar(CaesarKey::new(3).expect("3 is a valid shift"))),
            "vigenere" => {
                Ok(Self::Vigenere(VigenereKey::new("SECURITY").expect("letters only")))
            }
            "playfair" => {
                Ok(Self::Playfair(PlayfairKey::new("MONARCHY").expect("letters only")))
            }
            "rkm" => {
                let matrix = generate_matrix(seed);
                let key = generate_key(&matrix, key_length, seed)?;
                Ok(Self::Rkm { matrix, key })
            }
            other => Err(BenchError::UnknownCipher(other.to_string())),
        }
    }

    fn encrypt(&self, data: &[u8]) -> Vec<u8> {
        match self {
            Self::Caesar(k) => caesar_encrypt(*k, data),
            Self::Vigenere(k) => vigenere_encrypt(k, data),
            Self::Playfair(k) => playfair_encrypt(k, data),
            Self::Rkm { matrix, key } => encrypt(matrix, key, data, CipherMode::Text)
                .expect("keys generated for this matrix resolve"),
        }
    }

    fn decrypt(&self, data: &[u8]) -> Vec<u8> {
        match self {
            Self::Caesar(k) => caesar_decrypt(*k, data),
            Self::Vigenere(k) => vigenere_decrypt(k, data),
            Self::Playfair(k) => playfair_decrypt(k, data),
            Self::Rkm { matrix, key } => decrypt(matrix, key, data, CipherMode::Text)
                .expect("ciphertext produced by this runner decrypts"),
        }
    }

    /// What decrypting this runner's own ciphertext must return.
    /// Vigenère and Playfair normalize their input, so the roundtrip
    /// lands on the normalized form, not the raw corpus.
    fn expected_roundtrip(&self, data: &[u8]) -> Vec<u8> {
        match self {
            Self::Caesar(_) | Self::Rkm { .. } => data.to_vec(),
            Self::Vigenere(_) => normalize_letters(data),
            Self::Playfair(_) => playfair_prepare(data),
        }
    }
}

fn median_of_five(runs: [Duration; 5]) -> Duration {
    let mut runs = runs;
    runs.sort_unstable();
    runs[2]
}

/// Times one operation of one cipher on one corpus: a warm-up pass,
/// then the median of five timed passes.
pub fn time_operation(
    cipher: &str,
    operation: Operation,
    key_length: usize,
    seed: u64,
    corpus: &Corpus,
) -> Result<BenchReport, BenchError> {
    if corpus.data.is_empty() {
        return Err(BenchError::EmptyCorpus);
    }
    let runner = Runner::build(cipher, key_length, seed)?;
    let input: Vec<u8> = match operation {
        Operation::Encrypt => corpus.data.clone(),
        Operation::Decrypt => runner.encrypt(&corpus.data),
    };

    // warm-up, also the correctness gate for the timed passes
    let warm = match operation {
        Operation::Encrypt => runner.decrypt(&runner.encrypt(&input)),
        Operation::Decrypt => runner.decrypt(&input),
    };
    assert_eq!(
        warm,
        runner.expected_roundtrip(&corpus.data),
        "{cipher} failed its roundtrip check before timing"
    );

    let mut runs = [Duration::ZERO; 5];
    for slot in &mut runs {
        let start = Instant::now();
        let output = match operation {
            Operation::Encrypt => runner.encrypt(&input),
            Operation::Decrypt => runner.decrypt(&input),
        };
        *slot = start.elapsed();
        black_box(output);
    }
    let duration = median_of_five(runs);
    let duration_s = duration.as_secs_f64();
    Ok(BenchReport {
        cipher: cipher.to_string(),
        operation,
        size_bytes: corpus.size,
        duration_s,
        throughput_bps: corpus.size as f64 / duration_s,
    })
}

/// Suite parameters. Defaults mirror the standard comparison: 10KB,
/// 500KB, and 1MB English-like inputs, all four ciphers, rkm key
/// length 8.
#[derive(Debug, Clone)]
pub struct SuiteConfig {
    pub sizes: Vec<usize>,
    pub ciphers: Vec<String>,
    pub key_length: usize,
    pub seed: u64,
}

impl Default for SuiteConfig {
    fn default() -> Self {
        Self {
            sizes: DEFAULT_SIZES.to_vec(),
            ciphers: DEFAULT_CIPHERS.iter().map(|s| s.to_string()).collect(),
            key_length: DEFAULT_KEY_LENGTH,
            seed: 0,
        }
    }
}

/// Runs every (cipher, size, operation) cell in that order and returns
/// one report per cell.
pub fn run_suite(config: &SuiteConfig) -> Result<Vec<BenchReport>, BenchError> {
    let corpora: Vec<Corpus> = config
        .sizes
        .iter()
        .map(|&size| generate_corpus(CorpusKind::EnglishLike, size, config.seed))
        .collect();
    let mut reports = Vec::with_capacity(config.ciphers.len() * config.sizes.len() * 2);
    for cipher in &config.ciphers {
        for corpus in &corpora {
            for operation in [Operation::Encrypt, Operation::Decrypt] {
                reports.push(time_operation(
                    cipher,
                    operation,
                    config.key_length,
                    config.seed,
                    corpus,
                )?);
            }
        }
    }
    Ok(reports)
}

/// Renders reports as an aligned text table.
pub fn render_table(reports: &[BenchReport]) -> String {
    let mut out = String::new();
    out.push_str(&format!(
        "{:<10} {:<9} {:>12} {:>12} {:>16}\n",
        "cipher", "operation", "size_bytes", "duration_s", "throughput_bps"
    ));
    for r in reports {
        out.push_str(&format!(
            "{:<10} {:<9} {:>12} {:>12.6} {:>16.0}\n",
            r.cipher, r.operation, r.size_bytes, r.duration_s, r.throughput_bps
        ));
    }
    out
}

/// Renders reports as comma-separated values with a header line.
pub fn render_csv(reports: &[BenchReport]) -> String {
    let mut out = String::from("cipher,operation,size_bytes,duration_s,throughput_bps\n");
    for r in reports {
        out.push_str(&format!(
            "{},{},{},{:.6},{:.0}\n",
            r.cipher, r.operation, r.size_bytes, r.duration_s, r.throughput_bps
        ));
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::analysis::frequency_histogram;

    #[test]
    fn corpora_are_deterministic() {
        let a = generate_corpus(CorpusKind::RandomBytes, 1024, 7);
        let b = generate_corpus(CorpusKind::RandomBytes, 1024, 7);
        assert_eq!(a, b);
        assert_eq!(a.data.len(), 1024);
        let c = generate_corpus(CorpusKind::RandomBytes, 1024, 8);
        assert_ne!(a.data, c.data);
        let e = generate_corpus(CorpusKind::EnglishLike, 2048, 0);
        assert_eq!(e, generate_corpus(CorpusKind::EnglishLike, 2048, 0));
        assert_eq!(e.data.len(), 2048);
    }

    #[test]
    fn empty_corpus_is_empty() {
        assert!(generate_corpus(CorpusKind::EnglishLike, 0, 3).data.is_empty());
        assert!(generate_corpus(CorpusKind::RandomBytes, 0, 3).data.is_empty());
    }

    #[test]
    fn english_corpus_has_english_letter_frequencies() {
        let corpus = generate_corpus(CorpusKind::EnglishLike, 10_240, 0);
        let hist = frequency_histogram(&corpus.data);
        let mut letters: Vec<(u8, u64)> = hist
            .counts
            .iter()
            .filter(|(b, _)| b.is_ascii_alphabetic())
            .map(|(&b, &n)| (b.to_ascii_lowercase(), n))
            .fold(std::collections::BTreeMap::<u8, u64>::new(), |mut acc, (b, n)| {
                *acc.entry(b).or_default() += n;
                acc
            })
            .into_iter()
            .collect();
        letters.sort_by_key(|&(_, n)| std::cmp::Reverse(n));
        let top3: Vec<u8> = letters.iter().take(3).map(|&(b, _)| b).collect();
        assert!(top3.contains(&b'e'), "top letters were {top3:?}");
    }

    #[test]
    fn timing_smoke_and_consistency() {
        let corpus = generate_corpus(CorpusKind::EnglishLike, 10_240, 0);
        let report = time_operation("rkm", Operation::Encrypt, 8, 0, &corpus).unwrap();
        assert!(report.duration_s > 0.0);
        assert_eq!(report.size_bytes, 10_240);
        let recomputed = report.size_bytes as f64 / report.duration_s;
        assert!((report.throughput_bps - recomputed).abs() < 1e-6 * recomputed);
        let decrypt_side = time_operation("rkm", Operation::Decrypt, 8, 0, &corpus).unwrap();
        assert!(decrypt_side.duration_s > 0.0);
    }

    #[test]
    fn empty_corpus_is_rejected() {
        let corpus = generate_corpus(CorpusKind::EnglishLike, 0, 0);
        assert_eq!(
            time_operation("caesar", Operation::Encrypt, 8, 0, &corpus),
            Err(BenchError::EmptyCorpus)
        );
        let corpus = generate_corpus(CorpusKind::EnglishLike, 64, 0);
        assert!(matches!(
            time_operation("rot13", Operation::Encrypt, 8, 0, &corpus),
            Err(BenchError::UnknownCipher(_))
        ));
    }

    #[test]
    fn suite_order_and_shape() {
        let config = SuiteConfig {
            sizes: vec![512, 1024],
            ciphers: DEFAULT_CIPHERS.iter().map(|s| s.to_string()).collect(),
            key_length: 4,
            seed: 1,
        };
        let reports = run_suite(&config).unwrap();
        assert_eq!(reports.len(), 4 * 2 * 2);
        // ordering: cipher, then size, then operation
        assert_eq!(reports[0].cipher, "caesar");
        assert_eq!(reports[0].size_bytes, 512);
        assert_eq!(reports[0].operation, Operation::Encrypt);
        assert_eq!(reports[1].operation, Operation::Decrypt);
        assert_eq!(reports[2].size_bytes, 1024);
        assert_eq!(reports[4].cipher, "vigenere");
        assert_eq!(reports[12].cipher, "rkm");
    }

    #[test]
    fn rendering_has_one_line_per_report() {
        let corpus = generate_corpus(CorpusKind::EnglishLike, 512, 0);
        let reports = vec![time_operation("caesar", Operation::Encrypt, 8, 0, &corpus).unwrap()];
        let csv = render_csv(&reports);
        assert!(csv.starts_with("cipher,operation,size_bytes,duration_s,throughput_bps\n"));
        assert_eq!(csv.lines().count(), 2);
        assert!(csv.lines().nth(1).unwrap().starts_with("caesar,encrypt,512,"));
        let table = render_table(&reports);
        assert_eq!(table.lines().count(), 2);
    }
}
