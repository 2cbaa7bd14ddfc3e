//! The pre-shared key matrix: one constant header row (the alphabet)
//! plus 94 key rows, each a permutation of the alphabet identified by
//! its first character.
//!
//! Matrices are exchanged in the RKMX1 text format: the line `RKMX 1`,
//! then the 94-character header row, then the 94 key rows, one per line,
//! every line LF-terminated. 96 lines total; any deviation is a parse
//! error.

use crate::alphabet::{symbol_index, SymbolIndex, ALPHABET, ALPHABET_LEN};
use rand::seq::SliceRandom;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use thiserror::Error;

const MAGIC: &str = "RKMX 1";
const TOTAL_LINES: usize = 2 + ALPHABET_LEN;

/// A single structural defect found in candidate matrix data.
#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Violation {
    #[error("header column {column}: found {:?}, expected {:?}", *found as char, *expected as char)]
    HeaderMismatch { column: usize, found: u8, expected: u8 },
    #[error("header has {found} cells, expected {ALPHABET_LEN}")]
    HeaderLength { found: usize },
    #[error("expected {expected} key rows, found {found}")]
    RowCount { expected: usize, found: usize },
    #[error("key row {row} has {found} cells, expected {expected}")]
    RowLength { row: usize, found: usize, expected: usize },
    #[error("key row {row} column {column}: byte 0x{found:02x} is not an alphabet symbol")]
    ForeignByte { row: usize, column: usize, found: u8 },
    #[error("key row {row} is not a permutation: {:?} appears more than once", *symbol as char)]
    NotAPermutation { row: usize, symbol: u8 },
    #[error("key rows {row_a} and {row_b} share the leading identifier {:?}", *identifier as char)]
    DuplicateIdentifier { row_a: usize, row_b: usize, identifier: u8 },
}

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum MatrixError {
    #[error("not a matrix file: first line is {found:?}, expected {MAGIC:?}")]
    BadMagic { found: String },
    #[error("bad dimensions: {0}")]
    BadDimensions(DimensionIssue),
    #[error("invalid matrix ({} violations)", .0.len())]
    InvalidMatrix(Vec<Violation>),
}

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum DimensionIssue {
    #[error("expected {TOTAL_LINES} LF-terminated lines, found {found}")]
    LineCount { found: usize },
    #[error("line {line} is {found} characters long, expected {ALPHABET_LEN}")]
    LineLength { line: usize, found: usize },
    #[error("missing final newline")]
    MissingFinalNewline,
}

/// One key row: a permutation of the alphabet plus its precomputed
/// inverse (symbol index of a cell character to its column).
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct KeyRow {
    cells: [u8; ALPHABET_LEN],
    inverse: [u8; ALPHABET_LEN],
}

impl KeyRow {
    /// Builds a row from validated cells. Caller guarantees `cells` is a
    /// permutation of the alphabet.
    fn from_validated(cells: [u8; ALPHABET_LEN]) -> Self {
        let mut inverse = [0u8; ALPHABET_LEN];
        for (j, &c) in cells.iter().enumerate() {
            inverse[(c - ALPHABET[0]) as usize] = j as u8;
        }
        Self { cells, inverse }
    }

    /// The row's identifier, its first character.
    #[inline]
    pub fn identifier(&self) -> u8 {
        self.cells[0]
    }

    #[inline]
    pub fn cells(&self) -> &[u8; ALPHABET_LEN] {
        &self.cells
    }

    /// Ciphertext character for a plaintext symbol at header index `j`.
    #[inline]
    pub fn cell(&self, j: SymbolIndex) -> u8 {
        self.cells[j.as_usize()]
    }

    /// Column where character `ch` sits in this row; `None` if `ch` is
    /// outside the alphabet. Validated rows contain every alphabet
    /// symbol, so alphabet characters always resolve.
    #[inline]
    pub fn position_of(&self, ch: u8) -> Option<SymbolIndex> {
        let idx = symbol_index(ch).ok()?;
        SymbolIndex::new(self.inverse[idx.as_usize()])
    }
}

/// The full key matrix. Immutable after construction; every constructor
/// validates, so all invariants hold on every reachable value.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct KeyMatrix {
    rows: Vec<KeyRow>,
    row_of_identifier: [u8; ALPHABET_LEN],
}

impl KeyMatrix {
    /// The constant header row: the canonical alphabet.
    pub fn header(&self) -> &[u8; ALPHABET_LEN] {
        &ALPHABET
    }

    pub fn rows(&self) -> &[KeyRow] {
        &self.rows
    }

    /// Key row whose first character is `identifier`.
    pub fn row_by_identifier(&self, identifier: u8) -> Option<&KeyRow> {
        let idx = symbol_index(identifier).ok()?;
        Some(&self.rows[self.row_of_identifier[idx.as_usize()] as usize])
    }

    /// Re-checks the invariants. Empty iff the matrix is valid, which
    /// every constructor already guarantees.
    pub fn validate(&self) -> Vec<Violation> {
        let rows: Vec<&[u8]> = self.rows.iter().map(|r| r.cells.as_slice()).collect();
        validate_matrix(&ALPHABET, &rows)
    }

    fn from_parts(header: &[u8], rows: &[impl AsRef<[u8]>]) -> Result<Self, MatrixError> {
        let violations = validate_matrix(header, rows);
        if !violations.is_empty() {
            return Err(MatrixError::InvalidMatrix(violations));
        }
        let mut built = Vec::with_capacity(ALPHABET_LEN);
        let mut row_of_identifier = [0u8; ALPHABET_LEN];
        for (r, row) in rows.iter().enumerate() {
            let mut cells = [0u8; ALPHABET_LEN];
            cells.copy_from_slice(row.as_ref());
            row_of_identifier[(cells[0] - ALPHABET[0]) as usize] = r as u8;
            built.push(KeyRow::from_validated(cells));
        }
        Ok(Self { rows: built, row_of_identifier })
    }
}

/// Checks candidate matrix data against every structural invariant and
/// reports each defect with its coordinates. Row and column numbers are
/// zero-based; rows count key rows only, the header is separate.
pub fn validate_matrix(header: &[u8], rows: &[impl AsRef<[u8]>]) -> Vec<Violation> {
    let mut violations = Vec::new();

    for (column, (&found, &expected)) in header.iter().zip(ALPHABET.iter()).enumerate() {
        if found != expected {
            violations.push(Violation::HeaderMismatch { column, found, expected });
        }
    }
    if header.len() != ALPHABET_LEN {
        violations.push(Violation::HeaderLength { found: header.len() });
    }
    if rows.len() != ALPHABET_LEN {
        violations.push(Violation::RowCount { expected: ALPHABET_LEN, found: rows.len() });
    }

    let mut first_row_with_identifier = [usize::MAX; ALPHABET_LEN];
    for (r, row) in rows.iter().enumerate() {
        let row = row.as_ref();
        if row.len() != ALPHABET_LEN {
            violations.push(Violation::RowLength { row: r, found: row.len(), expected: ALPHABET_LEN });
            continue;
        }
        let mut seen = [false; ALPHABET_LEN];
        let mut well_formed = true;
        for (column, &found) in row.iter().enumerate() {
            match symbol_index(found) {
                Ok(idx) => {
                    if seen[idx.as_usize()] {
                        violations.push(Violation::NotAPermutation { row: r, symbol: found });
                        well_formed = false;
                        break;
                    }
                    seen[idx.as_usize()] = true;
                }
                Err(_) => {
                    violations.push(Violation::ForeignByte { row: r, column, found });
                    well_formed = false;
                    break;
                }
            }
        }
        if !well_formed {
            continue;
        }
        let id_idx = (row[0] - ALPHABET[0]) as usize;
        match first_row_with_identifier[id_idx] {
            usize::MAX => first_row_with_identifier[id_idx] = r,
            row_a => violations.push(Violation::DuplicateIdentifier {
                row_a,
                row_b: r,
                identifier: row[0],
            }),
        }
    }

    violations
}

/// Generates a matrix from a seed: the row with ordinal `r` is the
/// identifier `alphabet[r]` followed by a seeded pseudo-random
/// permutation of the remaining 93 characters. Same seed, same matrix.
pub fn generate_matrix(seed: u64) -> KeyMatrix {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut rows: Vec<[u8; ALPHABET_LEN]> = Vec::with_capacity(ALPHABET_LEN);
    for &identifier in ALPHABET.iter() {
        let mut rest: Vec<u8> = ALPHABET.iter().copied().filter(|&c| c != identifier).collect();
        rest.shuffle(&mut rng);
        let mut cells = [0u8; ALPHABET_LEN];
        cells[0] = identifier;
        cells[1..].copy_from_slice(&rest);
        rows.push(cells);
    }
    KeyMatrix::from_parts(&ALPHABET, &rows).expect("generated rows satisfy the invariants")
}

/// Deterministic fixture: the row with ordinal `r` has
/// `cells[j] = alphabet[(r + j) mod 94]`, a tabula-recta analogue whose
/// closed form makes encryption examples checkable by hand.
pub fn rotation_fixture_matrix() -> KeyMatrix {
    let mut rows: Vec<[u8; ALPHABET_LEN]> = Vec::with_capacity(ALPHABET_LEN);
    for r in 0..ALPHABET_LEN {
        let mut cells = [0u8; ALPHABET_LEN];
        for (j, cell) in cells.iter_mut().enumerate() {
            *cell = ALPHABET[(r + j) % ALPHABET_LEN];
        }
        rows.push(cells);
    }
    KeyMatrix::from_parts(&ALPHABET, &rows).expect("rotation rows satisfy the invariants")
}

/// Emits the RKMX1 byte form. Bit-exact: `parse_matrix` returns an equal
/// matrix.
pub fn serialize_matrix(matrix: &KeyMatrix) -> Vec<u8> {
    let mut out = Vec::with_capacity(TOTAL_LINES * (ALPHABET_LEN + 1));
    out.extend_from_slice(MAGIC.as_bytes());
    out.push(b'\n');
    out.extend_from_slice(&ALPHABET);
    out.push(b'\n');
    for row in &matrix.rows {
        out.extend_from_slice(&row.cells);
        out.push(b'\n');
    }
    out
}

/// Parses the RKMX1 byte form, rejecting any structural deviation.
pub fn parse_matrix(data: &[u8]) -> Result<KeyMatrix, MatrixError> {
    let first_line = data.split(|&b| b == b'\n').next().unwrap_or(&[]);
    if first_line != MAGIC.as_bytes() {
        return Err(MatrixError::BadMagic {
            found: String::from_utf8_lossy(first_line).into_owned(),
        });
    }
    if data.last() != Some(&b'\n') {
        return Err(MatrixError::BadDimensions(DimensionIssue::MissingFinalNewline));
    }
    // every line is LF-terminated, so splitting drops one trailing empty
    let lines: Vec<&[u8]> = data[..data.len() - 1].split(|&b| b == b'\n').collect();
    if lines.len() != TOTAL_LINES {
        return Err(MatrixError::BadDimensions(DimensionIssue::LineCount { found: lines.len() }));
    }
    for (i, line) in lines.iter().enumerate().skip(1) {
        if line.len() != ALPHABET_LEN {
            return Err(MatrixError::BadDimensions(DimensionIssue::LineLength {
                line: i + 1,
                found: line.len(),
            }));
        }
    }
    KeyMatrix::from_parts(lines[1], &lines[2..])
}
