//! A polyalphabetic substitution cipher built on a randomized key
//! matrix, with classical baselines and the measurement tooling to
//! compare them.
//!
//! The pre-shared secret is a 95-row table: a constant header row
//! holding the 94 printable non-space ASCII characters, plus 94 key
//! rows, each a random permutation of that alphabet identified by its
//! first character. A per-message key names 1 to 16 rows; every
//! plaintext symbol becomes one character from each named row, read at
//! the symbol's header column. Decryption inverts each character
//! through its row and insists that all of them point at the same
//! column, so corruption and wrong keys surface as hard errors.
//!
//! The crates in this workspace are a study instrument, not a secure
//! channel: the cipher is a classical design and must not protect real
//! secrets. The [`analysis`] module carries the tools that show why,
//! and [`bench`] measures what the construction costs.

pub mod alphabet;
pub mod analysis;
pub mod baselines;
pub mod bench;
pub mod cipher;
pub mod matrix;

pub use alphabet::{CodecError, SymbolIndex, ALPHABET, ALPHABET_LEN};
pub use cipher::{
    decrypt, encrypt, generate_key, CipherError, CipherMode, SubstitutionKey, MAX_KEY_LEN,
    MIN_KEY_LEN,
};
pub use matrix::{
    generate_matrix, parse_matrix, rotation_fixture_matrix, serialize_matrix, KeyMatrix,
    MatrixError,
};
