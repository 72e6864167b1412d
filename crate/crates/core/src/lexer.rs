//! Lossless tokenizer for the Java subset.
//!
//! Every byte of the input ends up in exactly one token, so concatenating the
//! token texts reproduces the source. Comments and whitespace are kept as
//! tokens; the parser filters them out when it needs structure.

use thiserror::Error;

/// Location of a token or declaration inside one corpus file.
///
/// Lines are 1-based, bytes are 0-based and `byte_end` is exclusive.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Default)]
pub struct Span {
    pub file_id: usize,
    pub line_start: u32,
    pub line_end: u32,
    pub byte_start: usize,
    pub byte_end: usize,
}

impl Span {
    /// Smallest span covering both `self` and `other`.
    pub fn cover(self, other: Span) -> Span {
        Span {
            file_id: self.file_id,
            line_start: self.line_start.min(other.line_start),
            line_end: self.line_end.max(other.line_end),
            byte_start: self.byte_start.min(other.byte_start),
            byte_end: self.byte_end.max(other.byte_end),
        }
    }

    /// Physical lines covered, inclusive on both ends.
    pub fn line_count(&self) -> u32 {
        self.line_end - self.line_start + 1
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum TokenKind {
    Keyword,
    Identifier,
    Punctuation,
    StringLiteral,
    CharLiteral,
    NumberLiteral,
    Comment,
    Whitespace,
}

impl TokenKind {
    pub fn is_trivia(self) -> bool {
        matches!(self, TokenKind::Comment | TokenKind::Whitespace)
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Token {
    pub kind: TokenKind,
    pub text: String,
    pub span: Span,
}

impl Token {
    pub fn is(&self, kind: TokenKind, text: &str) -> bool {
        self.kind == kind && self.text == text
    }

    pub fn is_punct(&self, text: &str) -> bool {
        self.is(TokenKind::Punctuation, text)
    }

    pub fn is_keyword(&self, text: &str) -> bool {
        self.is(TokenKind::Keyword, text)
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum LexError {
    #[error("input is not valid UTF-8 (first bad byte at offset {0})")]
    NonUtf8Input(usize),
    #[error("unterminated literal starting at line {}", .0.line_start)]
    UnterminatedLiteral(Span),
    #[error("unterminated block comment starting at line {}", .0.line_start)]
    UnterminatedComment(Span),
}

/// Reserved words plus the literal keywords `true`, `false` and `null`.
pub const KEYWORDS: &[&str] = &[
    "abstract",
    "assert",
    "boolean",
    "break",
    "byte",
    "case",
    "catch",
    "char",
    "class",
    "const",
    "continue",
    "default",
    "do",
    "double",
    "else",
    "enum",
    "extends",
    "false",
    "final",
    "finally",
    "float",
    "for",
    "goto",
    "if",
    "implements",
    "import",
    "instanceof",
    "int",
    "interface",
    "long",
    "native",
    "new",
    "null",
    "package",
    "private",
    "protected",
    "public",
    "return",
    "short",
    "static",
    "strictfp",
    "super",
    "switch",
    "synchronized",
    "this",
    "throw",
    "throws",
    "transient",
    "true",
    "try",
    "void",
    "volatile",
    "while",
];

pub fn is_keyword(word: &str) -> bool {
    KEYWORDS.binary_search(&word).is_ok()
}

// Longest first. `>>` and `>>>` are deliberately absent so that closing
// generic brackets always arrive one `>` at a time.
const OPERATORS: &[&str] = &[
    ">>>=", "<<=", ">>=", "...", "->", "::", "++", "--", "&&", "||", "==", "!=", "<=", ">=", "+=", "-=", "*=", "/=", "&=", "|=", "^=",
    "%=", "<<",
];

struct Lexer<'a> {
    src: &'a str,
    bytes: &'a [u8],
    pos: usize,
    line: u32,
    file_id: usize,
    tokens: Vec<Token>,
}

/// Splits `source` into a lossless token stream.
pub fn tokenize(source: &[u8], file_id: usize) -> Result<Vec<Token>, LexError> {
    let src = std::str::from_utf8(source).map_err(|e| LexError::NonUtf8Input(e.valid_up_to()))?;
    let mut lexer = Lexer {
        src,
        bytes: source,
        pos: 0,
        line: 1,
        file_id,
        tokens: Vec::new(),
    };
    lexer.run()?;
    Ok(lexer.tokens)
}

impl<'a> Lexer<'a> {
    fn peek(&self, ahead: usize) -> Option<u8> {
        self.bytes.get(self.pos + ahead).copied()
    }

    fn run(&mut self) -> Result<(), LexError> {
        while self.pos < self.bytes.len() {
            let start = self.pos;
            let b = self.bytes[start];
            let kind = match b {
                b' ' | b'\t' | b'\n' | b'\r' | 0x0c => {
                    while matches!(self.peek(0), Some(b' ' | b'\t' | b'\n' | b'\r' | 0x0c)) {
                        self.pos += 1;
                    }
                    TokenKind::Whitespace
                }
                b'/' if self.peek(1) == Some(b'/') => {
                    while !matches!(self.peek(0), None | Some(b'\n' | b'\r')) {
                        self.pos += 1;
                    }
                    TokenKind::Comment
                }
                b'/' if self.peek(1) == Some(b'*') => {
                    self.pos += 2;
                    loop {
                        match self.peek(0) {
                            None => return Err(LexError::UnterminatedComment(self.span_to(start, self.pos))),
                            Some(b'*') if self.peek(1) == Some(b'/') => {
                                self.pos += 2;
                                break;
                            }
                            Some(_) => self.pos += 1,
                        }
                    }
                    TokenKind::Comment
                }
                b'"' if self.peek(1) == Some(b'"') && self.peek(2) == Some(b'"') => {
                    self.text_block(start)?;
                    TokenKind::StringLiteral
                }
                b'"' => {
                    self.quoted(start, b'"')?;
                    TokenKind::StringLiteral
                }
                b'\'' => {
                    self.quoted(start, b'\'')?;
                    TokenKind::CharLiteral
                }
                b'0'..=b'9' => {
                    self.number();
                    TokenKind::NumberLiteral
                }
                b'.' if matches!(self.peek(1), Some(b'0'..=b'9')) => {
                    self.number();
                    TokenKind::NumberLiteral
                }
                _ => {
                    let ch = self.src[start..].chars().next().expect("in bounds");
                    if ch.is_alphabetic() || ch == '_' || ch == '$' {
                        self.identifier();
                        if is_keyword(&self.src[start..self.pos]) {
                            TokenKind::Keyword
                        } else {
                            TokenKind::Identifier
                        }
                    } else {
                        self.pos += OPERATORS
                            .iter()
                            .find(|op| self.src[start..].starts_with(**op))
                            .map_or(ch.len_utf8(), |op| op.len());
                        TokenKind::Punctuation
                    }
                }
            };
            self.push(kind, start);
        }
        Ok(())
    }

    fn push(&mut self, kind: TokenKind, start: usize) {
        let text = &self.src[start..self.pos];
        let newlines = count_line_breaks(text);
        // A token ending in a line break still ends on the line it started the break on.
        let trailing = text.ends_with('\n') || text.ends_with('\r');
        let line_end = self.line + newlines - u32::from(trailing && newlines > 0);
        self.tokens.push(Token {
            kind,
            text: text.to_owned(),
            span: Span {
                file_id: self.file_id,
                line_start: self.line,
                line_end,
                byte_start: start,
                byte_end: self.pos,
            },
        });
        self.line += newlines;
    }

    fn span_to(&self, start: usize, end: usize) -> Span {
        let line_end = self.line + count_line_breaks(&self.src[start..end]);
        Span {
            file_id: self.file_id,
            line_start: self.line,
            line_end,
            byte_start: start,
            byte_end: end,
        }
    }

    fn quoted(&mut self, start: usize, close: u8) -> Result<(), LexError> {
        self.pos += 1;
        loop {
            match self.peek(0) {
                None | Some(b'\n' | b'\r') => return Err(LexError::UnterminatedLiteral(self.span_to(start, self.pos))),
                Some(b'\\') => self.pos += if self.peek(1).is_some() { 2 } else { 1 },
                Some(c) if c == close => {
                    self.pos += 1;
                    return Ok(());
                }
                Some(_) => self.pos += 1,
            }
        }
    }

    fn text_block(&mut self, start: usize) -> Result<(), LexError> {
        self.pos += 3;
        loop {
            match self.peek(0) {
                None => return Err(LexError::UnterminatedLiteral(self.span_to(start, self.pos))),
                Some(b'\\') => self.pos += if self.peek(1).is_some() { 2 } else { 1 },
                Some(b'"') if self.peek(1) == Some(b'"') && self.peek(2) == Some(b'"') => {
                    self.pos += 3;
                    return Ok(());
                }
                Some(_) => self.pos += 1,
            }
        }
    }

    fn number(&mut self) {
        let hex = self.peek(0) == Some(b'0') && matches!(self.peek(1), Some(b'x' | b'X'));
        while let Some(c) = self.peek(0) {
            let exponent = if hex { matches!(c, b'p' | b'P') } else { matches!(c, b'e' | b'E') };
            if exponent && matches!(self.peek(1), Some(b'+' | b'-')) {
                self.pos += 2;
            } else if c.is_ascii_alphanumeric() || c == b'_' || c == b'.' {
                self.pos += 1;
            } else {
                break;
            }
        }
    }

    fn identifier(&mut self) {
        for ch in self.src[self.pos..].chars() {
            if ch.is_alphanumeric() || ch == '_' || ch == '$' {
                self.pos += ch.len_utf8();
            } else {
                break;
            }
        }
    }
}

/// Counts line terminators, treating `\r\n` as one.
pub fn count_line_breaks(text: &str) -> u32 {
    let bytes = text.as_bytes();
    let mut n = 0;
    for (i, &b) in bytes.iter().enumerate() {
        if b == b'\n' || (b == b'\r' && bytes.get(i + 1) != Some(&b'\n')) {
            n += 1;
        }
    }
    n
}
