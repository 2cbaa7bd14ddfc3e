//! The 94-symbol working alphabet and the codecs that bridge arbitrary
//! bytes to symbol streams.
//!
//! The alphabet is the printable ASCII range `!` (0x21) through `~` (0x7E)
//! in ascending order: 94 symbols, space excluded. Text mode maps alphabet
//! bytes to symbols and passes everything else through untouched; binary
//! mode expands each byte into a base-94 digit pair so any input survives
//! the cipher losslessly.

use thiserror::Error;

/// Number of symbols in the working alphabet.
pub const ALPHABET_LEN: usize = 94;

const FIRST_CODE: u8 = b'!';
const LAST_CODE: u8 = b'~';

/// The alphabet itself: byte `FIRST_CODE + j` at index `j`.
pub const ALPHABET: [u8; ALPHABET_LEN] = {
    let mut table = [0u8; ALPHABET_LEN];
    let mut j = 0;
    while j < ALPHABET_LEN {
        table[j] = FIRST_CODE + j as u8;
        j += 1;
    }
    table
};

/// True if `byte` is one of the 94 alphabet symbols.
#[inline]
pub fn in_alphabet(byte: u8) -> bool {
    (FIRST_CODE..=LAST_CODE).contains(&byte)
}

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum CodecError {
    #[error("byte 0x{0:02x} is not one of the 94 alphabet symbols")]
    NotInAlphabet(u8),
    #[error("binary symbol stream has odd length {0}")]
    OddSymbolCount(usize),
    #[error("symbol pair ({hi}, {lo}) at pair index {index} decodes to a value above 255")]
    ByteOutOfRange { index: usize, hi: u8, lo: u8 },
}

/// A position in the alphabet, guaranteed to be in `0..94`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct SymbolIndex(u8);

impl SymbolIndex {
    pub fn new(value: u8) -> Option<Self> {
        ((value as usize) < ALPHABET_LEN).then_some(Self(value))
    }

    #[inline]
    pub const fn value(self) -> u8 {
        self.0
    }

    #[inline]
    pub const fn as_usize(self) -> usize {
        self.0 as usize
    }
}

/// Index of `byte` within the alphabet.
#[inline]
pub fn symbol_index(byte: u8) -> Result<SymbolIndex, CodecError> {
    if in_alphabet(byte) {
        Ok(SymbolIndex(byte - FIRST_CODE))
    } else {
        Err(CodecError::NotInAlphabet(byte))
    }
}

/// The alphabet byte at `index`. Inverse of [`symbol_index`].
#[inline]
pub fn symbol_at(index: SymbolIndex) -> u8 {
    FIRST_CODE + index.0
}

/// One unit of a text-mode stream: either an alphabet symbol or a byte
/// that is copied through the cipher verbatim.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Token {
    Symbol(SymbolIndex),
    PassThrough(u8),
}

/// Splits raw bytes into alphabet symbols and pass-through bytes.
pub fn tokenize_text(input: &[u8]) -> Vec<Token> {
    input
        .iter()
        .map(|&b| match symbol_index(b) {
            Ok(j) => Token::Symbol(j),
            Err(_) => Token::PassThrough(b),
        })
        .collect()
}

/// Exact inverse of [`tokenize_text`].
pub fn detokenize_text(tokens: &[Token]) -> Vec<u8> {
    tokens
        .iter()
        .map(|t| match *t {
            Token::Symbol(j) => symbol_at(j),
            Token::PassThrough(b) => b,
        })
        .collect()
}

/// Expands each input byte into a base-94 digit pair `[b / 94, b % 94]`.
/// The leading digit is always 0, 1, or 2.
pub fn encode_binary(input: &[u8]) -> Vec<SymbolIndex> {
    let mut out = Vec::with_capacity(input.len() * 2);
    for &b in input {
        out.push(SymbolIndex(b / ALPHABET_LEN as u8));
        out.push(SymbolIndex(b % ALPHABET_LEN as u8));
    }
    out
}

/// Exact inverse of [`encode_binary`].
pub fn decode_binary(symbols: &[SymbolIndex]) -> Result<Vec<u8>, CodecError> {
    if symbols.len() % 2 != 0 {
        return Err(CodecError::OddSymbolCount(symbols.len()));
    }
    let mut out = Vec::with_capacity(symbols.len() / 2);
    for (index, pair) in symbols.chunks_exact(2).enumerate() {
        let (hi, lo) = (pair[0].0, pair[1].0);
        let value = hi as u16 * ALPHABET_LEN as u16 + lo as u16;
        if value > u8::MAX as u16 {
            return Err(CodecError::ByteOutOfRange { index, hi, lo });
        }
        out.push(value as u8);
    }
    Ok(out)
}
