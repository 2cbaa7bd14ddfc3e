//! Reference implementations of Caesar, Vigenère, and Playfair, used for
//! speed comparison, keyspace comparison, and Kasiski ground truth.
//!
//! Conventions: Caesar preserves case and leaves non-letters unchanged;
//! Vigenère and Playfair uppercase their input and strip non-letters
//! (the textbook normalization). Playfair merges J into I, splits the
//! text into digrams with 'X' fillers, and falls back to 'Q' when the
//! letter being padded is itself 'X'.

use crate::alphabet::{in_alphabet, ALPHABET, ALPHABET_LEN};
use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum BaselineError {
    #[error("shift {0} is outside 1..=25")]
    ShiftOutOfRange(u8),
    #[error("keyword must not be empty")]
    EmptyKeyword,
    #[error("keyword contains the non-letter {:?}", *.0 as char)]
    NonLetterInKeyword(u8),
}

/// Caesar shift amount, restricted to the 25 non-identity shifts.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct CaesarKey {
    shift: u8,
}

impl CaesarKey {
    pub fn new(shift: u8) -> Result<Self, BaselineError> {
        if (1..=25).contains(&shift) {
            Ok(Self { shift })
        } else {
            Err(BaselineError::ShiftOutOfRange(shift))
        }
    }

    pub fn shift(self) -> u8 {
        self.shift
    }
}

fn shift_letter(b: u8, shift: u8) -> u8 {
    match b {
        b'A'..=b'Z' => (b - b'A' + shift) % 26 + b'A',
        b'a'..=b'z' => (b - b'a' + shift) % 26 + b'a',
        _ => b,
    }
}

/// Shifts letters forward with case preserved; non-letters unchanged.
pub fn caesar_encrypt(key: CaesarKey, text: &[u8]) -> Vec<u8> {
    text.iter().map(|&b| shift_letter(b, key.shift)).collect()
}

/// Exact inverse of [`caesar_encrypt`] under the same key.
pub fn caesar_decrypt(key: CaesarKey, text: &[u8]) -> Vec<u8> {
    text.iter().map(|&b| shift_letter(b, 26 - key.shift)).collect()
}

/// A nonempty keyword of uppercase letters. Lowercase input is accepted
/// and uppercased.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct VigenereKey {
    keyword: Vec<u8>,
}

impl VigenereKey {
    pub fn new(keyword: impl AsRef<[u8]>) -> Result<Self, BaselineError> {
        let keyword = keyword.as_ref();
        if keyword.is_empty() {
            return Err(BaselineError::EmptyKeyword);
        }
        let mut upper = Vec::with_capacity(keyword.len());
        for &b in keyword {
            if b.is_ascii_alphabetic() {
                upper.push(b.to_ascii_uppercase());
            } else {
                return Err(BaselineError::NonLetterInKeyword(b));
            }
        }
        Ok(Self { keyword: upper })
    }

    pub fn keyword(&self) -> &[u8] {
        &self.keyword
    }

    pub fn len(&self) -> usize {
        self.keyword.len()
    }

    pub fn is_empty(&self) -> bool {
        false
    }
}

/// Uppercases and strips non-letters: the normalization both Vigenère
/// and Playfair apply before operating.
pub fn normalize_letters(text: &[u8]) -> Vec<u8> {
    text.iter()
        .filter(|b| b.is_ascii_alphabetic())
        .map(|b| b.to_ascii_uppercase())
        .collect()
}

fn vigenere_apply(key: &VigenereKey, text: &[u8], decrypt: bool) -> Vec<u8> {
    normalize_letters(text)
        .iter()
        .enumerate()
        .map(|(i, &b)| {
            let shift = key.keyword[i % key.keyword.len()] - b'A';
            let shift = if decrypt { 26 - shift } else { shift } % 26;
            shift_letter(b, shift)
        })
        .collect()
}

/// Normalizes the input, then shifts letter i by keyword letter
/// `i mod L`.
pub fn vigenere_encrypt(key: &VigenereKey, text: &[u8]) -> Vec<u8> {
    vigenere_apply(key, text, false)
}

/// Inverse of [`vigenere_encrypt`] on normalized input.
pub fn vigenere_decrypt(key: &VigenereKey, text: &[u8]) -> Vec<u8> {
    vigenere_apply(key, text, true)
}

/// The 5x5 Playfair grid (J merged into I) derived from a keyword.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PlayfairKey {
    grid: [u8; 25],
    // letter -> (row, col); J shares I's slot
    positions: [(u8, u8); 26],
}

impl PlayfairKey {
    pub fn new(keyword: impl AsRef<[u8]>) -> Result<Self, BaselineError> {
        let keyword = keyword.as_ref();
        if keyword.is_empty() {
            return Err(BaselineError::EmptyKeyword);
        }
        let mut grid = [0u8; 25];
        let mut used = [false; 26];
        let mut n = 0;
        let mut push = |letter: u8, grid: &mut [u8; 25], n: &mut usize| {
            let slot = if letter == b'J' { b'I' } else { letter };
            if !used[(slot - b'A') as usize] {
                used[(slot - b'A') as usize] = true;
                grid[*n] = slot;
                *n += 1;
            }
        };
        for &b in keyword {
            if !b.is_ascii_alphabetic() {
                return Err(BaselineError::NonLetterInKeyword(b));
            }
            push(b.to_ascii_uppercase(), &mut grid, &mut n);
        }
        for letter in b'A'..=b'Z' {
            push(letter, &mut grid, &mut n);
        }
        debug_assert_eq!(n, 25);

        let mut positions = [(0u8, 0u8); 26];
        for (i, &letter) in grid.iter().enumerate() {
            positions[(letter - b'A') as usize] = ((i / 5) as u8, (i % 5) as u8);
        }
        positions[(b'J' - b'A') as usize] = positions[(b'I' - b'A') as usize];
        Ok(Self { grid, positions })
    }

    pub fn grid(&self) -> &[u8; 25] {
        &self.grid
    }

    fn at(&self, row: u8, col: u8) -> u8 {
        self.grid[(row * 5 + col) as usize]
    }

    fn position(&self, letter: u8) -> (u8, u8) {
        self.positions[(letter - b'A') as usize]
    }
}

/// Normalizes text the way Playfair consumes it: uppercase letters only,
/// J replaced by I, 'X' inserted between equal digram letters, and a
/// trailing odd letter padded with 'X'. The filler falls back to 'Q'
/// when the letter being padded is 'X' itself. The output is what
/// `playfair_decrypt(playfair_encrypt(text))` returns: fillers are not
/// removed.
pub fn playfair_prepare(text: &[u8]) -> Vec<u8> {
    let letters: Vec<u8> = normalize_letters(text)
        .iter()
        .map(|&b| if b == b'J' { b'I' } else { b })
        .collect();
    let filler = |letter: u8| if letter == b'X' { b'Q' } else { b'X' };
    let mut out = Vec::with_capacity(letters.len() + letters.len() / 2);
    let mut i = 0;
    while i < letters.len() {
        let a = letters[i];
        match letters.get(i + 1) {
            Some(&b) if b != a => {
                out.push(a);
                out.push(b);
                i += 2;
            }
            _ => {
                out.push(a);
                out.push(filler(a));
                i += 1;
            }
        }
    }
    out
}

fn playfair_apply(key: &PlayfairKey, digrams: &[u8], decrypt: bool) -> Vec<u8> {
    // +1 shifts right/down for encryption, +4 is -1 mod 5 for decryption
    let step = if decrypt { 4 } else { 1 };
    let mut out = Vec::with_capacity(digrams.len());
    for pair in digrams.chunks_exact(2) {
        let (ra, ca) = key.position(pair[0]);
        let (rb, cb) = key.position(pair[1]);
        let (ea, eb) = if ra == rb {
            (key.at(ra, (ca + step) % 5), key.at(rb, (cb + step) % 5))
        } else if ca == cb {
            (key.at((ra + step) % 5, ca), key.at((rb + step) % 5, cb))
        } else {
            (key.at(ra, cb), key.at(rb, ca))
        };
        out.push(ea);
        out.push(eb);
    }
    out
}

/// Prepares the text into digrams, then applies the classic rules:
/// same row shifts right, same column shifts down, otherwise the
/// rectangle corners swap columns.
pub fn playfair_encrypt(key: &PlayfairKey, text: &[u8]) -> Vec<u8> {
    playfair_apply(key, &playfair_prepare(text), false)
}

/// Inverts [`playfair_encrypt`]: returns the prepared digram text,
/// fillers included.
pub fn playfair_decrypt(key: &PlayfairKey, ciphertext: &[u8]) -> Vec<u8> {
    playfair_apply(key, &playfair_prepare(ciphertext), true)
}

/// Caesar-style shift over the 94-symbol working alphabet: alphabet
/// symbols rotate forward by `shift` positions, everything else passes
/// through. Serves as the independent oracle for single-row rotation
/// fixture encryption.
pub fn shift_alphabet(text: &[u8], shift: usize) -> Vec<u8> {
    text.iter()
        .map(|&b| {
            if in_alphabet(b) {
                ALPHABET[((b - ALPHABET[0]) as usize + shift) % ALPHABET_LEN]
            } else {
                b
            }
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn caesar_canonical_shift() {
        let key = CaesarKey::new(3).unwrap();
        assert_eq!(caesar_encrypt(key, b"ABC"), b"DEF");
        assert_eq!(caesar_encrypt(key, b"xyz"), b"abc");
        assert_eq!(caesar_encrypt(key, b"a-b c!"), b"d-e f!");
    }

    #[test]
    fn caesar_inverse_and_bounds() {
        let key = CaesarKey::new(25).unwrap();
        let text = b"The quick brown fox; 123!";
        assert_eq!(caesar_decrypt(key, &caesar_encrypt(key, text)), text);
        assert_eq!(CaesarKey::new(0), Err(BaselineError::ShiftOutOfRange(0)));
        assert_eq!(CaesarKey::new(26), Err(BaselineError::ShiftOutOfRange(26)));
    }

    #[test]
    fn caesar_complementary_shift_decrypts() {
        let enc = CaesarKey::new(7).unwrap();
        let complement = CaesarKey::new(26 - 7).unwrap();
        let text = b"GROUP STRUCTURE";
        assert_eq!(caesar_encrypt(complement, &caesar_encrypt(enc, text)), text);
    }

    #[test]
    fn vigenere_known_answer() {
        let key = VigenereKey::new("LEMON").unwrap();
        assert_eq!(vigenere_encrypt(&key, b"ATTACKATDAWN"), b"LXFOPVEFRNHR");
        assert_eq!(vigenere_decrypt(&key, b"LXFOPVEFRNHR"), b"ATTACKATDAWN");
    }

    #[test]
    fn vigenere_degenerate_keys() {
        let a = VigenereKey::new("A").unwrap();
        assert_eq!(vigenere_encrypt(&a, b"HELLO"), b"HELLO");
        let b = VigenereKey::new("B").unwrap();
        assert_eq!(vigenere_encrypt(&b, b"AAAA"), b"BBBB");
        assert_eq!(VigenereKey::new(""), Err(BaselineError::EmptyKeyword));
        assert_eq!(VigenereKey::new("A B"), Err(BaselineError::NonLetterInKeyword(b' ')));
    }

    #[test]
    fn vigenere_normalizes_input() {
        let key = VigenereKey::new("LEMON").unwrap();
        assert_eq!(
            vigenere_encrypt(&key, b"Attack at dawn!"),
            vigenere_encrypt(&key, b"ATTACKATDAWN")
        );
    }

    #[test]
    fn vigenere_length_one_is_caesar() {
        let v = VigenereKey::new("D").unwrap();
        let c = CaesarKey::new(3).unwrap();
        let text = b"MATCHING SHIFTS";
        assert_eq!(vigenere_encrypt(&v, text), caesar_encrypt(c, &normalize_letters(text)));
    }

    #[test]
    fn playfair_monarchy_grid() {
        let key = PlayfairKey::new("MONARCHY").unwrap();
        assert_eq!(key.grid(), b"MONARCHYBDEFGIKLPQSTUVWXZ");
    }

    #[test]
    fn playfair_known_digrams() {
        let key = PlayfairKey::new("MONARCHY").unwrap();
        // rectangle rule
        assert_eq!(playfair_encrypt(&key, b"IN"), b"GA");
        // same-row right shift in row M O N A R
        assert_eq!(playfair_encrypt(&key, b"MO"), b"ON");
        assert_eq!(playfair_decrypt(&key, b"GA"), b"IN");
        assert_eq!(playfair_decrypt(&key, b"ON"), b"MO");
    }

    #[test]
    fn playfair_prepare_rules() {
        assert_eq!(playfair_prepare(b"BALLOON"), b"BALXLOON");
        assert_eq!(playfair_prepare(b"XX"), b"XQXQ");
        assert_eq!(playfair_prepare(b"ODD"), b"ODDX");
        assert_eq!(playfair_prepare(b"Jazz band"), b"IAZXZBANDX");
        // prepared text survives another pass unchanged
        let prepared = playfair_prepare(b"BALLOON");
        assert_eq!(playfair_prepare(&prepared), prepared);
    }

    #[test]
    fn playfair_roundtrip_returns_prepared_text() {
        let key = PlayfairKey::new("MONARCHY").unwrap();
        let text = b"Hide the gold in the tree stump";
        let ct = playfair_encrypt(&key, text);
        assert_eq!(playfair_decrypt(&key, &ct), playfair_prepare(text));
        assert_eq!(PlayfairKey::new(""), Err(BaselineError::EmptyKeyword));
    }

    #[test]
    fn alphabet_shift_wraps_and_passes_through() {
        assert_eq!(shift_alphabet(b"!", 1), b"\"");
        assert_eq!(shift_alphabet(b"~", 1), b"!");
        assert_eq!(shift_alphabet(b"A B", 2), b"C D");
        assert_eq!(shift_alphabet(b"abc", 0), b"abc");
        assert_eq!(shift_alphabet(b"abc", 94), b"abc");
    }
}
