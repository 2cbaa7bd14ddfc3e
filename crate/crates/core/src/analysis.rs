//! Evaluation mathematics: frequency histograms, Shannon entropy,
//! Kasiski examination in two variants, and exact keyspace counts.
//!
//! The paper-style Kasiski variant tracks one character and measures
//! every later occurrence against the first. The classic variant is the
//! textbook attack: repeated n-grams, gaps between consecutive
//! occurrences, gcd over all gaps. Keyspace values are exact
//! arbitrary-precision integers, rendered in 3-significant-digit
//! scientific notation for report tables.

use crate::alphabet::ALPHABET_LEN;
use crate::cipher::{MAX_KEY_LEN, MIN_KEY_LEN};
use num_bigint::BigUint;
use num_integer::Integer;
use serde::{Deserialize, Serialize};
use std::collections::{BTreeMap, HashMap};

#[derive(Debug, thiserror::Error, Clone, PartialEq, Eq)]
pub enum AnalysisError {
    #[error("pattern {:?} occurs {found} times, need at least 2", *pattern as char)]
    PatternTooRare { pattern: u8, found: usize },
    #[error("n-gram length {0} is too small, need at least 2")]
    NgramTooSmall(usize),
    #[error("unknown cipher {0:?}, expected caesar, vigenere, playfair, or rkm")]
    UnknownCipher(String),
    #[error("cipher {cipher:?} requires the parameter {parameter:?}")]
    MissingParameter { cipher: &'static str, parameter: &'static str },
    #[error("parameter {parameter:?} is {value}, allowed range {min}..={max}")]
    ParameterOutOfRange { parameter: &'static str, value: usize, min: usize, max: usize },
}

/// Per-byte occurrence counts and probabilities.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct FrequencyReport {
    pub counts: BTreeMap<u8, u64>,
    pub probabilities: BTreeMap<u8, f64>,
    pub total: u64,
}

/// Counts every byte value as one character.
pub fn frequency_histogram(data: &[u8]) -> FrequencyReport {
    let mut table = [0u64; 256];
    for &b in data {
        table[b as usize] += 1;
    }
    let total = data.len() as u64;
    let mut counts = BTreeMap::new();
    let mut probabilities = BTreeMap::new();
    for (b, &n) in table.iter().enumerate() {
        if n > 0 {
            counts.insert(b as u8, n);
            probabilities.insert(b as u8, n as f64 / total as f64);
        }
    }
    FrequencyReport { counts, probabilities, total }
}

/// Entropy in bits per symbol.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct EntropyReport {
    pub bits_per_symbol: f64,
}

/// Shannon entropy over the report's probabilities; empty input is 0.
pub fn shannon_entropy(report: &FrequencyReport) -> EntropyReport {
    let bits = report
        .probabilities
        .values()
        .filter(|&&p| p > 0.0)
        .map(|&p| -p * p.log2())
        .sum();
    EntropyReport { bits_per_symbol: bits }
}

/// Convenience composition of histogram and entropy.
pub fn entropy_of(data: &[u8]) -> f64 {
    shannon_entropy(&frequency_histogram(data)).bits_per_symbol
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum KasiskiVariant {
    Paper,
    Classic,
}

/// Result of a Kasiski examination. Positions are 1-indexed; the key
/// length estimate is the gcd of the distances, 1 when no repeats
/// exist.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct KasiskiReport {
    pub variant: KasiskiVariant,
    /// The tracked character for the paper variant; a description of the
    /// n-gram length (for example "3-gram") for the classic variant.
    pub pattern: String,
    pub positions: Vec<usize>,
    pub distances: Vec<usize>,
    pub gcd: usize,
    pub estimated_key_length: usize,
}

fn gcd_all(distances: &[usize]) -> usize {
    distances.iter().fold(0, |acc, &d| acc.gcd(&d)).max(1)
}

/// Tracks a single character: records every occurrence position
/// (1-indexed) and the distance from each later occurrence to the FIRST
/// one, then estimates the key length as the gcd of those distances.
pub fn kasiski_paper(ciphertext: &[u8], pattern: u8) -> Result<KasiskiReport, AnalysisError> {
    let positions: Vec<usize> = ciphertext
        .iter()
        .enumerate()
        .filter(|&(_, &b)| b == pattern)
        .map(|(i, _)| i + 1)
        .collect();
    if positions.len() < 2 {
        return Err(AnalysisError::PatternTooRare { pattern, found: positions.len() });
    }
    let first = positions[0];
    let distances: Vec<usize> = positions[1..].iter().map(|&p| p - first).collect();
    let gcd = gcd_all(&distances);
    Ok(KasiskiReport {
        variant: KasiskiVariant::Paper,
        pattern: (pattern as char).to_string(),
        positions,
        distances,
        gcd,
        estimated_key_length: gcd,
    })
}

/// The textbook examination: finds repeated n-grams (sliding window)
/// and measures gaps between consecutive occurrences of each one.
///
/// Overlapping echoes of one repeat are not double-counted: n-grams are
/// processed in first-occurrence order, each counted occurrence claims
/// its n character positions, and occurrences that touch an already
/// claimed position are dropped. An n-gram needs two surviving
/// occurrences to contribute.
pub fn kasiski_classic(ciphertext: &[u8], ngram: usize) -> Result<KasiskiReport, AnalysisError> {
    if ngram < 2 {
        return Err(AnalysisError::NgramTooSmall(ngram));
    }
    let pattern = format!("{ngram}-gram");

    let mut order: Vec<&[u8]> = Vec::new();
    let mut occurrences: HashMap<&[u8], Vec<usize>> = HashMap::new();
    if ciphertext.len() >= ngram {
        for start in 0..=ciphertext.len() - ngram {
            let gram = &ciphertext[start..start + ngram];
            let entry = occurrences.entry(gram).or_default();
            if entry.is_empty() {
                order.push(gram);
            }
            entry.push(start);
        }
    }

    let mut claimed = vec![false; ciphertext.len()];
    let mut positions = Vec::new();
    let mut distances = Vec::new();
    for gram in order {
        let starts = &occurrences[gram];
        if starts.len() < 2 {
            continue;
        }
        let mut surviving = Vec::new();
        let mut last_claimed_end = usize::MAX;
        for &start in starts {
            let free = claimed[start..start + ngram].iter().all(|&c| !c)
                && (last_claimed_end == usize::MAX || start >= last_claimed_end);
            if free {
                surviving.push(start);
                last_claimed_end = start + ngram;
            }
        }
        if surviving.len() < 2 {
            continue;
        }
        for pair in surviving.windows(2) {
            distances.push(pair[1] - pair[0]);
        }
        for &start in &surviving {
            claimed[start..start + ngram].iter_mut().for_each(|c| *c = true);
            positions.push(start + 1);
        }
    }
    positions.sort_unstable();

    let gcd = gcd_all(&distances);
    Ok(KasiskiReport {
        variant: KasiskiVariant::Classic,
        pattern,
        positions,
        distances,
        gcd,
        estimated_key_length: gcd,
    })
}

/// An exact keyspace count with its scientific rendering.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct KeyspaceReport {
    pub cipher: String,
    pub parameters: BTreeMap<String, String>,
    /// Exact value as a decimal string.
    pub value: String,
    /// 3-significant-digit rendering, for example "1.55 × 10^25".
    pub scientific: String,
}

/// 25 shifts.
pub fn caesar_keyspace() -> BigUint {
    BigUint::from(25u32)
}

/// 25! grid orderings.
pub fn playfair_keyspace() -> BigUint {
    (1u32..=25).map(BigUint::from).product()
}

/// 26^L keywords of length L.
pub fn vigenere_keyspace(length: usize) -> BigUint {
    BigUint::from(26u32).pow(length as u32)
}

/// Ordered selections of k distinct rows from 94: 94 x 93 x ... x
/// (94 - k + 1).
pub fn rkm_keyspace(k: usize) -> BigUint {
    (0..k).map(|i| BigUint::from((ALPHABET_LEN - i) as u32)).product()
}

/// Sum of [`rkm_keyspace`] over key lengths 1..=max_k.
pub fn rkm_keyspace_cumulative(max_k: usize) -> BigUint {
    (1..=max_k).map(rkm_keyspace).sum()
}

/// Renders an exact integer with 3 significant digits, for example
/// 15511210043330985984000000 as "1.55 × 10^25".
pub fn format_scientific(value: &BigUint) -> String {
    let digits = value.to_string();
    let mut exponent = digits.len() - 1;
    // first three significant digits, rounded half-up by the fourth
    let mut leading: u32 = digits
        .chars()
        .take(3)
        .fold(0, |acc, c| acc * 10 + c.to_digit(10).unwrap());
    leading *= 10u32.pow(3u32.saturating_sub(digits.len() as u32));
    if digits.len() > 3 && digits.as_bytes()[3] >= b'5' {
        leading += 1;
        if leading == 1000 {
            leading = 100;
            exponent += 1;
        }
    }
    format!("{}.{:02} × 10^{}", leading / 100, leading % 100, exponent)
}

fn report(cipher: &str, parameters: BTreeMap<String, String>, value: BigUint) -> KeyspaceReport {
    KeyspaceReport {
        cipher: cipher.to_string(),
        parameters,
        scientific: format_scientific(&value),
        value: value.to_string(),
    }
}

/// Keyspace lookup by cipher name, as exposed on the command line.
/// `key_length` feeds Vigenère's L and the rkm k; `cumulative` switches
/// the rkm count to the sum over key lengths 1..=k.
pub fn keyspace(
    cipher: &str,
    key_length: Option<usize>,
    cumulative: bool,
) -> Result<KeyspaceReport, AnalysisError> {
    match cipher {
        "caesar" => Ok(report(cipher, BTreeMap::new(), caesar_keyspace())),
        "playfair" => Ok(report(cipher, BTreeMap::new(), playfair_keyspace())),
        "vigenere" => {
            let length = key_length.ok_or(AnalysisError::MissingParameter {
                cipher: "vigenere",
                parameter: "key-length",
            })?;
            let mut parameters = BTreeMap::new();
            parameters.insert("key_length".into(), length.to_string());
            Ok(report(cipher, parameters, vigenere_keyspace(length)))
        }
        "rkm" => {
            let k = key_length.ok_or(AnalysisError::MissingParameter {
                cipher: "rkm",
                parameter: "key-length",
            })?;
            if !(MIN_KEY_LEN..=MAX_KEY_LEN).contains(&k) {
                return Err(AnalysisError::ParameterOutOfRange {
                    parameter: "key-length",
                    value: k,
                    min: MIN_KEY_LEN,
                    max: MAX_KEY_LEN,
                });
            }
            let mut parameters = BTreeMap::new();
            parameters.insert("key_length".into(), k.to_string());
            if cumulative {
                parameters.insert("cumulative".into(), "true".into());
                Ok(report(cipher, parameters, rkm_keyspace_cumulative(k)))
            } else {
                Ok(report(cipher, parameters, rkm_keyspace(k)))
            }
        }
        other => Err(AnalysisError::UnknownCipher(other.to_string())),
    }
}
