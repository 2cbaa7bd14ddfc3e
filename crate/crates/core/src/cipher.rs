//! The substitution cipher itself: per-message keys, encryption, and
//! decryption.
//!
//! A key is an ordered list of 1 to 16 distinct row identifiers. Each
//! plaintext symbol at header index `j` is replaced by a block of k
//! characters, one from each selected row at column `j`, in key order.
//! Decryption inverts every block character through its row and requires
//! all k recovered indices to agree; disagreement means corruption or a
//! wrong key and is a hard error, never a best-effort guess.
//!
//! Characters 2..k of a block are determined by character 1 given the
//! matrix. They add expansion and integrity checking, not secrecy beyond
//! the row choice.

use crate::alphabet::{
    decode_binary, encode_binary, in_alphabet, symbol_at, symbol_index, tokenize_text, CodecError,
    SymbolIndex, Token, ALPHABET_LEN,
};
use crate::matrix::{KeyMatrix, KeyRow};
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use thiserror::Error;

/// Smallest allowed key length.
pub const MIN_KEY_LEN: usize = 1;
/// Largest allowed key length.
pub const MAX_KEY_LEN: usize = 16;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum CipherError {
    #[error("key length {0} is outside {MIN_KEY_LEN}..={MAX_KEY_LEN}")]
    KeyLengthOutOfRange(usize),
    #[error("key repeats the identifier {:?}", *.0 as char)]
    DuplicateIdentifier(u8),
    #[error("byte 0x{0:02x} does not identify any key row")]
    UnknownRowIdentifier(u8),
    #[error("ciphertext holds {symbols} alphabet symbols, not a multiple of the key length {k}")]
    TruncatedBlock { symbols: usize, k: usize },
    #[error("block {block} decrypts inconsistently across rows: corrupted data or wrong key")]
    InconsistentBlock { block: usize },
    #[error("character {:?} is absent from the row identified by {:?}", *ch as char, *identifier as char)]
    NotInRow { ch: u8, identifier: u8 },
    #[error(transparent)]
    Codec(#[from] CodecError),
}

/// Whether the input is treated as text (alphabet bytes substituted,
/// everything else passed through) or as raw binary (every byte encoded
/// as a base-94 digit pair, then substituted).
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum CipherMode {
    Text,
    Binary,
}

/// An ordered sequence of 1 to 16 distinct row identifiers.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SubstitutionKey {
    identifiers: Vec<u8>,
}

impl SubstitutionKey {
    /// Builds a key from identifier characters, enforcing the length
    /// bound, alphabet membership, and pairwise distinctness.
    pub fn new(identifiers: impl AsRef<[u8]>) -> Result<Self, CipherError> {
        let identifiers = identifiers.as_ref();
        if !(MIN_KEY_LEN..=MAX_KEY_LEN).contains(&identifiers.len()) {
            return Err(CipherError::KeyLengthOutOfRange(identifiers.len()));
        }
        let mut seen = [false; ALPHABET_LEN];
        for &id in identifiers {
            let idx = symbol_index(id).map_err(|_| CipherError::UnknownRowIdentifier(id))?;
            if seen[idx.as_usize()] {
                return Err(CipherError::DuplicateIdentifier(id));
            }
            seen[idx.as_usize()] = true;
        }
        Ok(Self { identifiers: identifiers.to_vec() })
    }

    /// The identifier characters in key order.
    pub fn identifiers(&self) -> &[u8] {
        &self.identifiers
    }

    /// Number of rows the key selects.
    pub fn k(&self) -> usize {
        self.identifiers.len()
    }

    /// The key's canonical string form: the identifiers concatenated.
    pub fn as_str(&self) -> &str {
        // identifiers are printable ASCII by construction
        std::str::from_utf8(&self.identifiers).expect("identifiers are ASCII")
    }
}

impl std::fmt::Display for SubstitutionKey {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(self.as_str())
    }
}

/// Samples k distinct row identifiers uniformly without replacement.
/// Deterministic for a given seed.
pub fn generate_key(matrix: &KeyMatrix, k: usize, seed: u64) -> Result<SubstitutionKey, CipherError> {
    if !(MIN_KEY_LEN..=MAX_KEY_LEN).contains(&k) {
        return Err(CipherError::KeyLengthOutOfRange(k));
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let identifiers: Vec<u8> = rand::seq::index::sample(&mut rng, ALPHABET_LEN, k)
        .iter()
        .map(|ordinal| matrix.rows()[ordinal].identifier())
        .collect();
    SubstitutionKey::new(identifiers)
}

/// The k ciphertext characters that replace one plaintext symbol.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CipherBlock {
    symbols: Vec<SymbolIndex>,
}

impl CipherBlock {
    pub fn symbols(&self) -> &[SymbolIndex] {
        &self.symbols
    }

    /// The block as raw ciphertext characters.
    pub fn to_bytes(&self) -> Vec<u8> {
        self.symbols.iter().map(|&s| symbol_at(s)).collect()
    }
}

/// Resolves the key's identifiers to rows of `matrix`, in key order.
fn select_rows<'m>(matrix: &'m KeyMatrix, key: &SubstitutionKey) -> Result<Vec<&'m KeyRow>, CipherError> {
    key.identifiers()
        .iter()
        .map(|&id| matrix.row_by_identifier(id).ok_or(CipherError::UnknownRowIdentifier(id)))
        .collect()
}

/// Encrypts one plaintext symbol: block character i is cell `j` of the
/// i-th selected row.
pub fn encrypt_symbol(
    matrix: &KeyMatrix,
    key: &SubstitutionKey,
    j: SymbolIndex,
) -> Result<CipherBlock, CipherError> {
    let rows = select_rows(matrix, key)?;
    let symbols = rows
        .iter()
        .map(|row| symbol_index(row.cell(j)).expect("matrix cells are alphabet symbols"))
        .collect();
    Ok(CipherBlock { symbols })
}

/// Encrypts a byte sequence. Text mode substitutes alphabet bytes and
/// copies everything else through unmodified; binary mode encodes each
/// byte as two base-94 digits first, so the output holds exactly
/// 2k bytes per input byte.
pub fn encrypt(
    matrix: &KeyMatrix,
    key: &SubstitutionKey,
    plaintext: &[u8],
    mode: CipherMode,
) -> Result<Vec<u8>, CipherError> {
    let rows = select_rows(matrix, key)?;
    match mode {
        CipherMode::Text => {
            let mut out = Vec::with_capacity(plaintext.len() * key.k());
            for token in tokenize_text(plaintext) {
                match token {
                    Token::Symbol(j) => out.extend(rows.iter().map(|row| row.cell(j))),
                    Token::PassThrough(b) => out.push(b),
                }
            }
            Ok(out)
        }
        CipherMode::Binary => {
            let mut out = Vec::with_capacity(plaintext.len() * 2 * key.k());
            for j in encode_binary(plaintext) {
                out.extend(rows.iter().map(|row| row.cell(j)));
            }
            Ok(out)
        }
    }
}

/// Recovers the plaintext symbol of one block: inverts each character
/// through its row and requires all k recovered indices to agree.
fn resolve_block(
    rows: &[&KeyRow],
    block: &[u8],
    block_ordinal: usize,
) -> Result<SymbolIndex, CipherError> {
    debug_assert_eq!(rows.len(), block.len());
    let mut agreed: Option<SymbolIndex> = None;
    for (row, &ch) in rows.iter().zip(block) {
        let j = row
            .position_of(ch)
            .ok_or(CipherError::NotInRow { ch, identifier: row.identifier() })?;
        match agreed {
            None => agreed = Some(j),
            Some(prev) if prev != j => {
                return Err(CipherError::InconsistentBlock { block: block_ordinal })
            }
            Some(_) => {}
        }
    }
    Ok(agreed.expect("keys hold at least one identifier"))
}

/// Decrypts a byte sequence. Exact inverse of [`encrypt`] under the same
/// matrix, key, and mode.
pub fn decrypt(
    matrix: &KeyMatrix,
    key: &SubstitutionKey,
    ciphertext: &[u8],
    mode: CipherMode,
) -> Result<Vec<u8>, CipherError> {
    let rows = select_rows(matrix, key)?;
    let k = key.k();
    match mode {
        CipherMode::Text => {
            let symbol_total = ciphertext.iter().filter(|&&b| in_alphabet(b)).count();
            if symbol_total % k != 0 {
                return Err(CipherError::TruncatedBlock { symbols: symbol_total, k });
            }
            let mut out = Vec::with_capacity(symbol_total / k + ciphertext.len() - symbol_total);
            let mut block = Vec::with_capacity(k);
            let mut block_ordinal = 0;
            for &b in ciphertext {
                if in_alphabet(b) {
                    block.push(b);
                    if block.len() == k {
                        let j = resolve_block(&rows, &block, block_ordinal)?;
                        out.push(symbol_at(j));
                        block.clear();
                        block_ordinal += 1;
                    }
                } else {
                    out.push(b);
                }
            }
            Ok(out)
        }
        CipherMode::Binary => {
            for &b in ciphertext {
                if !in_alphabet(b) {
                    return Err(CipherError::Codec(CodecError::NotInAlphabet(b)));
                }
            }
            if ciphertext.len() % k != 0 {
                return Err(CipherError::TruncatedBlock { symbols: ciphertext.len(), k });
            }
            let mut digits = Vec::with_capacity(ciphertext.len() / k);
            for (block_ordinal, block) in ciphertext.chunks_exact(k).enumerate() {
                digits.push(resolve_block(&rows, block, block_ordinal)?);
            }
            Ok(decode_binary(&digits)?)
        }
    }
}

/// Convenience wrapper for the common whole-message calls.
pub fn roundtrip_check(
    matrix: &KeyMatrix,
    key: &SubstitutionKey,
    plaintext: &[u8],
    mode: CipherMode,
) -> Result<bool, CipherError> {
    let ciphertext = encrypt(matrix, key, plaintext, mode)?;
    Ok(decrypt(matrix, key, &ciphertext, mode)? == plaintext)
}
