//! Tokenize a Java file and print every non-trivia token with its line.
//!
//! `cargo run --example tokenize_source [file.java]`

use std::path::PathBuf;

use codeforest::lexer::tokenize;

fn main() {
    let path = std::env::args_os()
        .nth(1)
        .map(PathBuf::from)
        .unwrap_or_else(|| PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("tests/fixtures/owner_user/Useraaa.java"));
    let bytes = std::fs::read(&path).expect("readable source file");
    let tokens = tokenize(&bytes, 0).expect("lexable source");
    let trivia = tokens.iter().filter(|t| t.kind.is_trivia()).count();
    for t in tokens.iter().filter(|t| !t.kind.is_trivia()) {
        println!("{:>4}  {:<14} {}", t.span.line_start, format!("{:?}", t.kind), t.text);
    }
    println!("{} tokens ({} trivia)", tokens.len(), trivia);
}
