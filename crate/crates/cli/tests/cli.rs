//! End-to-end tests of the `rkmx` binary: the full workflow, every
//! documented exit code, and the machine-readable output formats.

use std::path::PathBuf;
use std::process::{Command, Output};

fn rkmx() -> Command {
    Command::new(env!("CARGO_BIN_EXE_rkmx"))
}

/// Scratch directory, removed on drop.
struct TempDir(PathBuf);

impl TempDir {
    fn new(tag: &str) -> Self {
        let dir = std::env::temp_dir().join(format!("rkmx-cli-{tag}-{}", std::process::id()));
        let _ = std::fs::remove_dir_all(&dir);
        std::fs::create_dir_all(&dir).expect("create temp dir");
        Self(dir)
    }

    fn path(&self, name: &str) -> PathBuf {
        self.0.join(name)
    }
}

impl Drop for TempDir {
    fn drop(&mut self) {
        let _ = std::fs::remove_dir_all(&self.0);
    }
}

fn stdout_of(output: &Output) -> String {
    String::from_utf8_lossy(&output.stdout).into_owned()
}

fn stderr_of(output: &Output) -> String {
    String::from_utf8_lossy(&output.stderr).into_owned()
}

fn assert_exit(output: &Output, code: i32) {
    assert_eq!(
        output.status.code(),
        Some(code),
        "stdout: {}\nstderr: {}",
        stdout_of(output),
        stderr_of(output)
    );
}

/// Generates a matrix and a key into the directory, returning their
/// paths.
fn setup_matrix_and_key(dir: &TempDir, key_length: usize) -> (PathBuf, PathBuf) {
    let matrix = dir.path("m.rkm");
    let key = dir.path("k.txt");
    let out = rkmx()
        .args(["genmatrix", "--seed", "42", "--out"])
        .arg(&matrix)
        .output()
        .unwrap();
    assert_exit(&out, 0);
    let out = rkmx()
        .args(["keygen", "--length", &key_length.to_string(), "--seed", "1", "--matrix"])
        .arg(&matrix)
        .arg("--out")
        .arg(&key)
        .output()
        .unwrap();
    assert_exit(&out, 0);
    (matrix, key)
}

#[test]
fn full_roundtrip_text_and_binary() {
    let dir = TempDir::new("roundtrip");
    let (matrix, key) = setup_matrix_and_key(&dir, 8);

    let matrix_bytes = std::fs::read(&matrix).unwrap();
    assert!(matrix_bytes.starts_with(b"RKMX 1\n"));
    assert_eq!(matrix_bytes.iter().filter(|&&b| b == b'\n').count(), 96);
    let key_line = std::fs::read(&key).unwrap();
    assert_eq!(key_line.len(), 9, "8 identifiers plus newline");

    let plaintext = dir.path("pt.txt");
    std::fs::write(&plaintext, b"Attack at dawn! Bring 12 lanterns.\n").unwrap();
    for mode in ["text", "binary"] {
        let ciphertext = dir.path(&format!("ct-{mode}.bin"));
        let restored = dir.path(&format!("rt-{mode}.txt"));
        let out = rkmx()
            .args(["encrypt", "--mode", mode, "--matrix"])
            .arg(&matrix)
            .arg("--key")
            .arg(&key)
            .arg("--in")
            .arg(&plaintext)
            .arg("--out")
            .arg(&ciphertext)
            .output()
            .unwrap();
        assert_exit(&out, 0);
        let out = rkmx()
            .args(["decrypt", "--mode", mode, "--matrix"])
            .arg(&matrix)
            .arg("--key")
            .arg(&key)
            .arg("--in")
            .arg(&ciphertext)
            .arg("--out")
            .arg(&restored)
            .output()
            .unwrap();
        assert_exit(&out, 0);
        assert_eq!(
            std::fs::read(&restored).unwrap(),
            std::fs::read(&plaintext).unwrap(),
            "{mode} mode roundtrip"
        );
    }
}

#[test]
fn inline_key_matches_key_file() {
    let dir = TempDir::new("inline-key");
    let (matrix, key) = setup_matrix_and_key(&dir, 4);
    let key_string = String::from_utf8(std::fs::read(&key).unwrap())
        .unwrap()
        .trim_end()
        .to_string();

    let plaintext = dir.path("pt.txt");
    std::fs::write(&plaintext, b"same bytes either way").unwrap();
    let by_file = dir.path("by-file.bin");
    let by_string = dir.path("by-string.bin");
    let out = rkmx()
        .args(["encrypt", "--mode", "text", "--matrix"])
        .arg(&matrix)
        .arg("--key")
        .arg(&key)
        .arg("--in")
        .arg(&plaintext)
        .arg("--out")
        .arg(&by_file)
        .output()
        .unwrap();
    assert_exit(&out, 0);
    let out = rkmx()
        .args(["encrypt", "--mode", "text", "--key-string", &key_string, "--matrix"])
        .arg(&matrix)
        .arg("--in")
        .arg(&plaintext)
        .arg("--out")
        .arg(&by_string)
        .output()
        .unwrap();
    assert_exit(&out, 0);
    assert_eq!(std::fs::read(&by_file).unwrap(), std::fs::read(&by_string).unwrap());

    // both key sources at once is a usage error
    let out = rkmx()
        .args(["encrypt", "--mode", "text", "--key-string", &key_string, "--matrix"])
        .arg(&matrix)
        .arg("--key")
        .arg(&key)
        .arg("--in")
        .arg(&plaintext)
        .arg("--out")
        .arg(dir.path("never.bin"))
        .output()
        .unwrap();
    assert_exit(&out, 2);
}

#[test]
fn keygen_rejects_out_of_range_length() {
    let dir = TempDir::new("keygen-range");
    let (matrix, _) = setup_matrix_and_key(&dir, 1);
    let out = rkmx()
        .args(["keygen", "--length", "17", "--matrix"])
        .arg(&matrix)
        .arg("--out")
        .arg(dir.path("k17.txt"))
        .output()
        .unwrap();
    assert_exit(&out, 2);
    assert!(
        stderr_of(&out).contains("1..=16"),
        "stderr should name the bound: {}",
        stderr_of(&out)
    );
}

#[test]
fn unseeded_keygen_produces_valid_keys() {
    let dir = TempDir::new("keygen-unseeded");
    let (matrix, _) = setup_matrix_and_key(&dir, 1);
    let key = dir.path("k.txt");
    let out = rkmx()
        .args(["keygen", "--length", "16", "--matrix"])
        .arg(&matrix)
        .arg("--out")
        .arg(&key)
        .output()
        .unwrap();
    assert_exit(&out, 0);
    let line = std::fs::read(&key).unwrap();
    assert_eq!(line.len(), 17);
    assert_eq!(line[16], b'\n');
    let mut identifiers: Vec<u8> = line[..16].to_vec();
    assert!(identifiers.iter().all(|&b| (0x21..=0x7e).contains(&b)));
    identifiers.sort_unstable();
    identifiers.dedup();
    assert_eq!(identifiers.len(), 16, "identifiers must be distinct");
}

#[test]
fn corrupted_ciphertext_exits_3() {
    let dir = TempDir::new("integrity");
    let (matrix, key) = setup_matrix_and_key(&dir, 8);
    let plaintext = dir.path("pt.txt");
    std::fs::write(&plaintext, b"integrity matters").unwrap();
    let ciphertext = dir.path("ct.bin");
    let out = rkmx()
        .args(["encrypt", "--mode", "text", "--matrix"])
        .arg(&matrix)
        .arg("--key")
        .arg(&key)
        .arg("--in")
        .arg(&plaintext)
        .arg("--out")
        .arg(&ciphertext)
        .output()
        .unwrap();
    assert_exit(&out, 0);

    // flip one ciphertext character to a different alphabet character
    let mut ct = std::fs::read(&ciphertext).unwrap();
    ct[0] = if ct[0] == b'A' { b'B' } else { b'A' };
    std::fs::write(&ciphertext, &ct).unwrap();
    let out = rkmx()
        .args(["decrypt", "--mode", "text", "--matrix"])
        .arg(&matrix)
        .arg("--key")
        .arg(&key)
        .arg("--in")
        .arg(&ciphertext)
        .arg("--out")
        .arg(dir.path("rt.txt"))
        .output()
        .unwrap();
    assert_exit(&out, 3);
}

#[test]
fn missing_input_exits_4() {
    let dir = TempDir::new("io");
    let (matrix, key) = setup_matrix_and_key(&dir, 2);
    let out = rkmx()
        .args(["encrypt", "--mode", "text", "--matrix"])
        .arg(&matrix)
        .arg("--key")
        .arg(&key)
        .arg("--in")
        .arg(dir.path("does-not-exist.txt"))
        .arg("--out")
        .arg(dir.path("never.bin"))
        .output()
        .unwrap();
    assert_exit(&out, 4);
}

#[test]
fn damaged_matrix_exits_2() {
    let dir = TempDir::new("bad-matrix");
    let matrix = dir.path("bad.rkm");
    std::fs::write(&matrix, b"XXXX 1\nnot a matrix\n").unwrap();
    let out = rkmx()
        .args(["keygen", "--length", "4", "--matrix"])
        .arg(&matrix)
        .arg("--out")
        .arg(dir.path("k.txt"))
        .output()
        .unwrap();
    assert_exit(&out, 2);
}

#[test]
fn kasiski_paper_report() {
    let dir = TempDir::new("kasiski");
    let positions = [2, 27, 45, 52, 57, 67, 85, 99, 109, 130, 139, 147, 165, 181, 189, 231];
    let mut text = vec![b'.'; 240];
    for &p in &positions {
        text[p - 1] = b'4';
    }
    let input = dir.path("fig.txt");
    std::fs::write(&input, &text).unwrap();

    let out = rkmx()
        .args(["analyze", "kasiski", "--variant", "paper", "--pattern", "4", "--in"])
        .arg(&input)
        .output()
        .unwrap();
    assert_exit(&out, 0);
    let stdout = stdout_of(&out);
    assert!(stdout.contains("gcd: 1"), "report was: {stdout}");
    assert!(stdout.contains("distances: 25 43 50 55 65 83 97 107 128 137 145 163 179 187 229"));

    let out = rkmx()
        .args(["analyze", "kasiski", "--variant", "paper", "--pattern", "4", "--format", "json", "--in"])
        .arg(&input)
        .output()
        .unwrap();
    assert_exit(&out, 0);
    let value: serde_json::Value = serde_json::from_str(&stdout_of(&out)).unwrap();
    assert_eq!(value["variant"], "paper");
    assert_eq!(value["gcd"], 1);
    assert_eq!(value["distances"][0], 25);
    assert_eq!(value["estimated_key_length"], 1);

    // paper variant without a pattern is a usage error
    let out = rkmx()
        .args(["analyze", "kasiski", "--variant", "paper", "--in"])
        .arg(&input)
        .output()
        .unwrap();
    assert_exit(&out, 2);
}

#[test]
fn analyze_freq_and_entropy() {
    let dir = TempDir::new("analyze");
    let input = dir.path("sample.txt");
    std::fs::write(&input, b"aabb").unwrap();

    let out = rkmx().args(["analyze", "entropy", "--in"]).arg(&input).output().unwrap();
    assert_exit(&out, 0);
    assert_eq!(stdout_of(&out), "bits_per_symbol: 1.000000\n");

    let out = rkmx()
        .args(["analyze", "freq", "--format", "json", "--in"])
        .arg(&input)
        .output()
        .unwrap();
    assert_exit(&out, 0);
    let value: serde_json::Value = serde_json::from_str(&stdout_of(&out)).unwrap();
    assert_eq!(value["total"], 4);
    assert_eq!(value["counts"]["97"], 2);
    assert_eq!(value["probabilities"]["98"], 0.5);

    let out = rkmx().args(["analyze", "freq", "--in"]).arg(&input).output().unwrap();
    assert_exit(&out, 0);
    assert!(stdout_of(&out).contains("total: 4"));
}

#[test]
fn keyspace_reports() {
    let out = rkmx().args(["keyspace", "--cipher", "caesar"]).output().unwrap();
    assert_exit(&out, 0);
    assert!(stdout_of(&out).contains("value: 25"));

    let out = rkmx()
        .args(["keyspace", "--cipher", "playfair", "--format", "json"])
        .output()
        .unwrap();
    assert_exit(&out, 0);
    let value: serde_json::Value = serde_json::from_str(&stdout_of(&out)).unwrap();
    assert_eq!(value["value"], "15511210043330985984000000");
    assert_eq!(value["scientific"], "1.55 × 10^25");

    let out = rkmx()
        .args(["keyspace", "--cipher", "rkm", "--key-length", "2", "--cumulative"])
        .output()
        .unwrap();
    assert_exit(&out, 0);
    assert!(stdout_of(&out).contains("value: 8836"));

    // vigenere without a length, and an unknown cipher, are usage errors
    let out = rkmx().args(["keyspace", "--cipher", "vigenere"]).output().unwrap();
    assert_exit(&out, 2);
    let out = rkmx().args(["keyspace", "--cipher", "rot13"]).output().unwrap();
    assert_exit(&out, 2);
}

#[test]
fn bench_csv_output() {
    let out = rkmx()
        .args(["bench", "--sizes", "512,1024", "--ciphers", "caesar,rkm", "--key-length", "4", "--format", "csv"])
        .output()
        .unwrap();
    assert_exit(&out, 0);
    let stdout = stdout_of(&out);
    let lines: Vec<&str> = stdout.lines().collect();
    assert_eq!(lines[0], "cipher,operation,size_bytes,duration_s,throughput_bps");
    assert_eq!(lines.len(), 1 + 2 * 2 * 2, "header plus one row per cell");
    assert!(lines[1].starts_with("caesar,encrypt,512,"));
    assert!(lines[8].starts_with("rkm,decrypt,1024,"));
    for line in &lines[1..] {
        let duration: f64 = line.split(',').nth(3).unwrap().parse().unwrap();
        assert!(duration > 0.0);
    }
}
