//! Browser bindings for the randomized key matrix cipher.
//!
//! Compiled to WebAssembly with `wasm-pack build --target web`; the page
//! in `www/` calls these exports directly. Matrices and keys travel as
//! strings in the same formats the `rkmx` binary reads and writes, so
//! material generated in the browser works on the command line and vice
//! versa. Only text mode is exposed here, because binary-mode ciphertext
//! is raw bytes and does not survive a JavaScript string.

use rkmx_core::analysis::{frequency_histogram, shannon_entropy};
use rkmx_core::{
    decrypt, encrypt, generate_key, generate_matrix, parse_matrix, serialize_matrix, CipherMode,
    KeyMatrix, SubstitutionKey,
};
use wasm_bindgen::prelude::*;

fn load_matrix(text: &str) -> Result<KeyMatrix, String> {
    parse_matrix(text.as_bytes()).map_err(|e| e.to_string())
}

fn load_key(text: &str) -> Result<SubstitutionKey, String> {
    // key identifiers are printable ASCII, so trimming cannot eat one
    SubstitutionKey::new(text.trim().as_bytes()).map_err(|e| e.to_string())
}

fn encrypt_str(matrix: &str, key: &str, plaintext: &str) -> Result<String, String> {
    let matrix = load_matrix(matrix)?;
    let key = load_key(key)?;
    let ct = encrypt(&matrix, &key, plaintext.as_bytes(), CipherMode::Text)
        .map_err(|e| e.to_string())?;
    // substituted symbols are ASCII and multibyte sequences pass through
    // intact, so UTF-8 input always yields UTF-8 output
    String::from_utf8(ct).map_err(|_| "ciphertext is not valid UTF-8".to_string())
}

fn decrypt_str(matrix: &str, key: &str, ciphertext: &str) -> Result<String, String> {
    let matrix = load_matrix(matrix)?;
    let key = load_key(key)?;
    let pt = decrypt(&matrix, &key, ciphertext.as_bytes(), CipherMode::Text)
        .map_err(|e| e.to_string())?;
    String::from_utf8(pt).map_err(|_| "plaintext is not valid UTF-8".to_string())
}

fn analyze_str(text: &str) -> String {
    let report = frequency_histogram(text.as_bytes());
    let entropy = shannon_entropy(&report);
    serde_json::json!({
        "bits_per_symbol": entropy.bits_per_symbol,
        "total": report.total,
        "counts": report.counts,
    })
    .to_string()
}

/// Serialized key matrix for the given seed, in the `RKMX 1` format.
#[wasm_bindgen]
pub fn matrix_text(seed: u32) -> String {
    String::from_utf8(serialize_matrix(&generate_matrix(u64::from(seed))))
        .expect("matrix is ASCII")
}

/// Key of `length` distinct row identifiers drawn from the matrix.
#[wasm_bindgen]
pub fn key_text(matrix: &str, length: usize, seed: u32) -> Result<String, JsError> {
    let matrix = load_matrix(matrix).map_err(|msg| JsError::new(&msg))?;
    let key = generate_key(&matrix, length, u64::from(seed))
        .map_err(|e| JsError::new(&e.to_string()))?;
    Ok(key.as_str().to_string())
}

/// Encrypts text mode: each alphabet character becomes one character per
/// key row, everything else passes through unchanged.
#[wasm_bindgen]
pub fn encrypt_text(matrix: &str, key: &str, plaintext: &str) -> Result<String, JsError> {
    encrypt_str(matrix, key, plaintext).map_err(|msg| JsError::new(&msg))
}

/// Inverts `encrypt_text`. Fails if the ciphertext was truncated or if
/// the key rows disagree about any block, which signals tampering.
#[wasm_bindgen]
pub fn decrypt_text(matrix: &str, key: &str, ciphertext: &str) -> Result<String, JsError> {
    decrypt_str(matrix, key, ciphertext).map_err(|msg| JsError::new(&msg))
}

/// Byte frequency counts and Shannon entropy as a JSON object with
/// fields `bits_per_symbol`, `total`, and `counts` keyed by byte value.
#[wasm_bindgen]
pub fn analyze_text(text: &str) -> String {
    analyze_str(text)
}
