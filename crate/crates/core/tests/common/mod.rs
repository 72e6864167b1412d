//! Test support: fixture access, a synthetic corpus generator, and oracles
//! that re-derive expected values without going through the crate's lexer,
//! parser or model.

#![allow(dead_code)]

use std::collections::{BTreeMap, BTreeSet};
use std::path::{Path, PathBuf};

use base64::Engine;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

pub fn fixtures_dir() -> PathBuf {
    Path::new(env!("CARGO_MANIFEST_DIR")).join("tests/fixtures")
}

pub fn fixture(name: &str) -> PathBuf {
    fixtures_dir().join(name)
}

/// Fixture directories that form a valid (acyclic) corpus.
pub const VALID_FIXTURES: &[&str] = &["calls", "chain", "diamond", "external", "inventory", "nested", "owner_user"];

/// `(relative path, bytes)` for every `.java` file under `root`, sorted.
pub fn read_sources(root: &Path) -> Vec<(String, Vec<u8>)> {
    fn walk(dir: &Path, root: &Path, out: &mut Vec<(String, Vec<u8>)>) {
        for entry in std::fs::read_dir(dir).unwrap() {
            let path = entry.unwrap().path();
            if path.is_dir() {
                walk(&path, root, out);
            } else if path.extension().is_some_and(|e| e == "java") {
                let rel = path.strip_prefix(root).unwrap().to_string_lossy().replace('\\', "/");
                out.push((rel, std::fs::read(&path).unwrap()));
            }
        }
    }
    let mut out = Vec::new();
    walk(root, root, &mut out);
    out.sort();
    out
}

// ---------------------------------------------------------------------------
// Reference token counter

/// Counts tokens with a single pass over character classes: whitespace runs,
/// comments, string/char literals, numbers, words and operators.
pub fn reference_token_count(src: &str) -> usize {
    const OPS: [&str; 23] = [
        ">>>=", "<<=", ">>=", "...", "->", "::", "++", "--", "&&", "||", "==", "!=", "<=", ">=", "+=", "-=", "*=", "/=", "&=", "|=", "^=",
        "%=", "<<",
    ];
    let c: Vec<char> = src.chars().collect();
    let mut i = 0;
    let mut count = 0;
    while i < c.len() {
        count += 1;
        let rest: String = c[i..c.len().min(i + 4)].iter().collect();
        if matches!(c[i], ' ' | '\t' | '\n' | '\r' | '\x0c') {
            while i < c.len() && matches!(c[i], ' ' | '\t' | '\n' | '\r' | '\x0c') {
                i += 1;
            }
        } else if rest.starts_with("//") {
            while i < c.len() && c[i] != '\n' && c[i] != '\r' {
                i += 1;
            }
        } else if rest.starts_with("/*") {
            i += 2;
            while !(c[i] == '*' && c[i + 1] == '/') {
                i += 1;
            }
            i += 2;
        } else if rest.starts_with("\"\"\"") {
            i += 3;
            while !(c[i] == '"' && c[i + 1] == '"' && c[i + 2] == '"') {
                i += if c[i] == '\\' { 2 } else { 1 };
            }
            i += 3;
        } else if c[i] == '"' || c[i] == '\'' {
            let q = c[i];
            i += 1;
            while c[i] != q {
                i += if c[i] == '\\' { 2 } else { 1 };
            }
            i += 1;
        } else if c[i].is_ascii_digit() || (c[i] == '.' && c.get(i + 1).is_some_and(|d| d.is_ascii_digit())) {
            while i < c.len() {
                if matches!(c[i], 'e' | 'E') && matches!(c.get(i + 1), Some('+' | '-')) {
                    i += 2;
                } else if c[i].is_ascii_alphanumeric() || c[i] == '_' || c[i] == '.' {
                    i += 1;
                } else {
                    break;
                }
            }
        } else if c[i].is_alphabetic() || c[i] == '_' || c[i] == '$' {
            while i < c.len() && (c[i].is_alphanumeric() || c[i] == '_' || c[i] == '$') {
                i += 1;
            }
        } else {
            i += OPS.iter().find(|op| rest.starts_with(**op)).map_or(1, |op| op.chars().count());
        }
    }
    count
}

// ---------------------------------------------------------------------------
// Structural oracle

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Tok {
    pub text: String,
    pub line: u32,
}

/// Comments and literal contents blanked out, then split into words and
/// single punctuation characters.
pub fn oracle_tokens(src: &str) -> Vec<Tok> {
    let c: Vec<char> = src.chars().collect();
    let mut out = Vec::new();
    let mut line = 1u32;
    let mut i = 0;
    let newline = |ch: char, line: &mut u32| {
        if ch == '\n' {
            *line += 1;
        }
    };
    while i < c.len() {
        let ch = c[i];
        if ch == '/' && c.get(i + 1) == Some(&'/') {
            while i < c.len() && c[i] != '\n' {
                i += 1;
            }
        } else if ch == '/' && c.get(i + 1) == Some(&'*') {
            i += 2;
            while !(c[i] == '*' && c[i + 1] == '/') {
                newline(c[i], &mut line);
                i += 1;
            }
            i += 2;
        } else if ch == '"' || ch == '\'' {
            let start_line = line;
            let triple = ch == '"' && c.get(i + 1) == Some(&'"') && c.get(i + 2) == Some(&'"');
            i += if triple { 3 } else { 1 };
            loop {
                if c[i] == '\\' {
                    i += 2;
                    continue;
                }
                if triple && c[i] == '"' && c[i + 1] == '"' && c[i + 2] == '"' {
                    i += 3;
                    break;
                }
                if !triple && c[i] == ch {
                    i += 1;
                    break;
                }
                newline(c[i], &mut line);
                i += 1;
            }
            out.push(Tok {
                text: "\"lit\"".into(),
                line: start_line,
            });
        } else if ch.is_whitespace() {
            newline(ch, &mut line);
            i += 1;
        } else if ch.is_alphanumeric() || ch == '_' || ch == '$' {
            let s = i;
            while i < c.len() && (c[i].is_alphanumeric() || c[i] == '_' || c[i] == '$') {
                i += 1;
            }
            out.push(Tok {
                text: c[s..i].iter().collect(),
                line,
            });
        } else {
            out.push(Tok {
                text: ch.to_string(),
                line,
            });
            i += 1;
        }
    }
    out
}

#[derive(Debug, Clone, Default)]
pub struct OracleMethod {
    pub name: String,
    pub params: Vec<String>,
    pub is_constructor: bool,
    /// Tokens strictly inside the braces; `None` for abstract signatures.
    pub body: Option<Vec<Tok>>,
}

#[derive(Debug, Clone, Default)]
pub struct OracleClass {
    pub package: String,
    /// `Outer.Inner` for nested types.
    pub name: String,
    pub supers: Vec<String>,
    /// (name, declared type)
    pub fields: Vec<(String, String)>,
    pub methods: Vec<OracleMethod>,
    pub start_line: u32,
    pub end_line: u32,
    pub nested_lines: u32,
}

impl OracleClass {
    pub fn simple_name(&self) -> &str {
        self.name.rsplit('.').next().unwrap()
    }

    pub fn loc(&self) -> u32 {
        self.end_line - self.start_line + 1 - self.nested_lines
    }
}

const MODIFIERS: &[&str] = &[
    "public",
    "private",
    "protected",
    "static",
    "final",
    "abstract",
    "synchronized",
    "native",
    "strictfp",
    "default",
    "transient",
    "volatile",
    "sealed",
    "non",
    "-",
];
const TYPE_WORDS: &[&str] = &["class", "interface", "enum", "record"];
const JAVA_KEYWORDS: &[&str] = &[
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
    "try",
    "void",
    "volatile",
    "while",
    "true",
    "false",
    "null",
];

fn is_word(t: &str) -> bool {
    t.chars().next().is_some_and(|c| c.is_alphabetic() || c == '_' || c == '$')
}

fn matching(toks: &[Tok], open: usize) -> usize {
    let (o, c) = match toks[open].text.as_str() {
        "{" => ("{", "}"),
        "(" => ("(", ")"),
        _ => unreachable!(),
    };
    let mut depth = 0;
    for (k, t) in toks.iter().enumerate().skip(open) {
        if t.text == o {
            depth += 1;
        } else if t.text == c {
            depth -= 1;
            if depth == 0 {
                return k;
            }
        }
    }
    panic!("unbalanced {o}");
}

/// Top-level comma split that respects `<>`, `()` and `[]` nesting.
fn split_commas(toks: &[Tok]) -> Vec<&[Tok]> {
    let mut out = Vec::new();
    let mut depth = 0i32;
    let mut start = 0;
    for (k, t) in toks.iter().enumerate() {
        match t.text.as_str() {
            "<" | "(" | "[" => depth += 1,
            ">" | ")" | "]" => depth -= 1,
            "," if depth == 0 => {
                out.push(&toks[start..k]);
                start = k + 1;
            }
            _ => {}
        }
    }
    if start < toks.len() {
        out.push(&toks[start..]);
    }
    out
}

/// Dotted type names from a header clause such as `extends A, p.B<X>`.
fn type_list(toks: &[Tok]) -> Vec<String> {
    split_commas(toks)
        .into_iter()
        .filter_map(|seg| {
            let mut name = String::new();
            for t in seg {
                if t.text == "<" {
                    break;
                }
                if t.text == "@" {
                    continue;
                }
                if is_word(&t.text) || t.text == "." {
                    name.push_str(&t.text);
                }
            }
            (!name.is_empty()).then_some(name)
        })
        .collect()
}

/// Parses one file's classes with a brace-matching walk that shares no code
/// with the crate.
pub fn oracle_classes(src: &str) -> Vec<OracleClass> {
    let toks = oracle_tokens(src);
    let mut package = String::new();
    if toks.first().is_some_and(|t| t.text == "package") {
        package = toks[1..].iter().take_while(|t| t.text != ";").map(|t| t.text.as_str()).collect();
    }
    let mut out = Vec::new();
    let mut i = 0;
    let mut stmt_start = 0;
    while i < toks.len() {
        let t = toks[i].text.as_str();
        if t == ";" || t == "}" {
            stmt_start = i + 1;
        } else if TYPE_WORDS.contains(&t) && (i == 0 || toks[i - 1].text != ".") && toks.get(i + 1).is_some_and(|n| is_word(&n.text)) {
            let (end, _) = parse_type(&toks, stmt_start, i, &package, None, &mut out);
            i = end;
            stmt_start = end + 1;
        }
        i += 1;
    }
    out
}

/// Parses the type whose keyword sits at `kw`; returns (index of closing brace, line span).
fn parse_type(toks: &[Tok], start: usize, kw: usize, package: &str, outer: Option<&str>, out: &mut Vec<OracleClass>) -> (usize, u32) {
    let simple = toks[kw + 1].text.clone();
    let name = match outer {
        Some(o) => format!("{o}.{simple}"),
        None => simple.clone(),
    };
    let open = (kw..toks.len()).find(|&k| toks[k].text == "{").unwrap();
    // Header clauses at angle depth 0.
    let mut supers = Vec::new();
    let mut angle = 0;
    let mut clause: Option<usize> = None;
    let mut paren = 0;
    for k in kw + 2..open {
        match toks[k].text.as_str() {
            "<" => angle += 1,
            ">" => angle -= 1,
            "(" => paren += 1,
            ")" => paren -= 1,
            w @ ("extends" | "implements" | "permits") if angle == 0 && paren == 0 => {
                if let Some(s) = clause {
                    supers.extend(type_list(&toks[s..k]));
                }
                clause = (w != "permits").then_some(k + 1);
                if w == "permits" {
                    break;
                }
            }
            _ => {}
        }
        if k + 1 == open {
            if let Some(s) = clause {
                supers.extend(type_list(&toks[s..open]));
            }
        }
    }
    let close = matching(toks, open);
    let index = out.len();
    out.push(OracleClass {
        package: package.to_owned(),
        name: name.clone(),
        supers,
        start_line: toks[start].line,
        end_line: toks[close].line,
        ..OracleClass::default()
    });

    let mut i = open + 1;
    if toks[kw].text == "enum" {
        // Constants up to the first `;` or the closing brace.
        while i < close && toks[i].text != ";" {
            if toks[i].text == "{" || toks[i].text == "(" {
                i = matching(toks, i);
            }
            i += 1;
        }
        i += 1;
    }
    let mut nested_lines = 0;
    let mut s = i;
    while i < close {
        let t = toks[i].text.as_str();
        if t == ";" {
            member_statement(toks, s, i, None, &simple, &mut out[index]);
            i += 1;
            s = i;
        } else if t == "{" {
            let stmt = &toks[s..i];
            let type_kw = (s..i).find(|&k| {
                TYPE_WORDS.contains(&toks[k].text.as_str()) && (k == s || toks[k - 1].text != ".") && is_word(&toks[k + 1].text)
            });
            let has_eq = stmt.iter().any(|t| t.text == "=");
            if let Some(k) = type_kw.filter(|_| !has_eq) {
                let (end, lines) = parse_type(toks, s, k, package, Some(&name), out);
                nested_lines += lines;
                i = end + 1;
                s = i;
            } else if has_eq {
                // Initializer with braces; keep scanning to the `;`.
                i = matching(toks, i) + 1;
            } else {
                let end = matching(toks, i);
                member_statement(toks, s, i, Some(end), &simple, &mut out[index]);
                i = end + 1;
                s = i;
            }
        } else if t == "(" {
            i = matching(toks, i) + 1;
        } else {
            i += 1;
        }
    }
    out[index].nested_lines = nested_lines;
    (close, toks[close].line - toks[start].line + 1)
}

/// A member from `s` to the terminator at `term` (`;` or `{`).
fn member_statement(toks: &[Tok], s: usize, term: usize, body_end: Option<usize>, class_simple: &str, class: &mut OracleClass) {
    let stmt = &toks[s..term];
    if stmt.is_empty() {
        return;
    }
    let first_eq = stmt.iter().position(|t| t.text == "=");
    let sig_paren = (0..stmt.len()).find(|&k| {
        stmt[k].text == "(" && k > 0 && is_word(&stmt[k - 1].text) && (k < 2 || stmt[k - 2].text != "@") && first_eq.is_none_or(|e| k < e)
    });
    match sig_paren {
        Some(p) => {
            let name = stmt[p - 1].text.clone();
            let close = matching(stmt, p);
            let params: Vec<String> = split_commas(&stmt[p + 1..close])
                .into_iter()
                .filter_map(|seg| seg.iter().rev().find(|t| is_word(&t.text)).map(|t| t.text.clone()))
                .collect();
            // Everything before the name other than annotations, modifiers and type parameters.
            let mut k = 0;
            let mut has_type = false;
            while k < p - 1 {
                let t = stmt[k].text.as_str();
                if t == "@" {
                    k += 2;
                    if stmt.get(k).is_some_and(|t| t.text == "(") {
                        k = matching(stmt, k) + 1;
                    }
                    continue;
                }
                if t == "<" {
                    let mut d = 0;
                    while k < p - 1 {
                        match stmt[k].text.as_str() {
                            "<" => d += 1,
                            ">" => d -= 1,
                            _ => {}
                        }
                        k += 1;
                        if d == 0 {
                            break;
                        }
                    }
                    continue;
                }
                if !MODIFIERS.contains(&t) {
                    has_type = true;
                }
                k += 1;
            }
            class.methods.push(OracleMethod {
                is_constructor: name == class_simple && !has_type,
                name,
                params,
                body: body_end.map(|e| toks[term + 1..e].to_vec()),
            });
        }
        None if body_end.is_none() => {
            // Field declaration: strip leading annotations and modifiers.
            let mut k = 0;
            while k < stmt.len() && (MODIFIERS.contains(&stmt[k].text.as_str()) || stmt[k].text == "@") {
                k += if stmt[k].text == "@" { 2 } else { 1 };
            }
            let decl = &stmt[k..];
            let segments = split_commas(decl);
            let mut ty = String::new();
            for (n, seg) in segments.iter().enumerate() {
                let upto = seg.iter().position(|t| t.text == "=").unwrap_or(seg.len());
                let head = &seg[..upto];
                let Some(name_at) = head.iter().rposition(|t| is_word(&t.text)) else {
                    continue;
                };
                if n == 0 {
                    ty = head[..name_at].iter().map(|t| t.text.as_str()).collect();
                }
                class.fields.push((head[name_at].text.clone(), ty.clone()));
            }
        }
        None => {}
    }
}

/// All classes of a corpus, in the model's order: by (package, name).
pub fn oracle_corpus(sources: &[(String, Vec<u8>)]) -> Vec<OracleClass> {
    let mut all: Vec<OracleClass> = sources
        .iter()
        .flat_map(|(_, b)| oracle_classes(std::str::from_utf8(b).unwrap()))
        .collect();
    all.sort_by(|a, b| (&a.package, &a.name).cmp(&(&b.package, &b.name)));
    all
}

pub fn oracle_resolve(classes: &[OracleClass], written: &str, from_package: &str) -> Option<usize> {
    let find = |pkg: &str, name: &str| classes.iter().position(|c| c.package == pkg && c.name == name);
    if let Some(i) = find(from_package, written) {
        return Some(i);
    }
    if let Some((prefix, simple)) = written.rsplit_once('.') {
        return find(prefix, simple);
    }
    let local: Vec<usize> = (0..classes.len())
        .filter(|&i| classes[i].package == from_package && classes[i].simple_name() == written)
        .collect();
    if !local.is_empty() {
        return (local.len() == 1).then(|| local[0]);
    }
    let global: Vec<usize> = (0..classes.len()).filter(|&i| classes[i].simple_name() == written).collect();
    (global.len() == 1).then(|| global[0])
}

/// Distinct (child, parent) pairs.
pub fn oracle_edges(classes: &[OracleClass]) -> BTreeSet<(usize, usize)> {
    let mut edges = BTreeSet::new();
    for (i, c) in classes.iter().enumerate() {
        for s in &c.supers {
            if let Some(p) = oracle_resolve(classes, s, &c.package) {
                edges.insert((i, p));
            }
        }
    }
    edges
}

/// Longest path to a root by enumerating every upward path.
pub fn oracle_layers(n: usize, edges: &BTreeSet<(usize, usize)>) -> Vec<usize> {
    fn longest(c: usize, edges: &BTreeSet<(usize, usize)>) -> usize {
        edges
            .iter()
            .filter(|e| e.0 == c)
            .map(|e| 1 + longest(e.1, edges))
            .max()
            .unwrap_or(0)
    }
    (0..n).map(|c| longest(c, edges)).collect()
}

/// Upward distances from `c` to every ancestor, by exhaustive path search.
fn ancestor_distances(c: usize, edges: &BTreeSet<(usize, usize)>) -> BTreeMap<usize, usize> {
    let mut best: BTreeMap<usize, usize> = BTreeMap::new();
    let mut stack = vec![(c, 0usize)];
    while let Some((x, d)) = stack.pop() {
        for e in edges.iter().filter(|e| e.0 == x) {
            let slot = best.entry(e.1).or_insert(usize::MAX);
            if d + 1 < *slot {
                *slot = d + 1;
                stack.push((e.1, d + 1));
            }
        }
    }
    best
}

/// Nearest class (itself first unless `skip_self`) declaring a method `name`.
fn oracle_lookup(
    classes: &[OracleClass],
    edges: &BTreeSet<(usize, usize)>,
    c: usize,
    name: &str,
    skip_self: bool,
) -> Option<(usize, usize)> {
    let mut candidates: Vec<(usize, usize)> = ancestor_distances(c, edges).into_iter().map(|(a, d)| (d, a)).collect();
    if !skip_self {
        candidates.push((0, c));
    }
    candidates.sort();
    candidates
        .into_iter()
        .find_map(|(_, a)| classes[a].methods.iter().position(|m| m.name == name).map(|m| (a, m)))
}

/// Call-site names in a body, with their receiver: `""` implicit, `"super"`, a
/// variable name, or `"?"` for anything else.
pub fn oracle_call_sites(body: &[Tok]) -> Vec<(String, String)> {
    let mut out = Vec::new();
    for k in 0..body.len() {
        let t = body[k].text.as_str();
        if !is_word(t) || JAVA_KEYWORDS.contains(&t) || body.get(k + 1).is_none_or(|n| n.text != "(") {
            continue;
        }
        // Skip `new a.b.C(`.
        let mut b = k;
        while b >= 2 && body[b - 1].text == "." && is_word(&body[b - 2].text) {
            b -= 2;
        }
        if b >= 1 && body[b - 1].text == "new" {
            continue;
        }
        let close = k + 1 + matching(&body[k + 1..], 0);
        if body.get(close + 1).is_some_and(|n| n.text == "{" || n.text == "throws") {
            continue;
        }
        let receiver = if k >= 1 && body[k - 1].text == "." {
            match body.get(k.wrapping_sub(2)).map(|t| t.text.as_str()) {
                Some("this") => String::new(),
                Some("super") => "super".into(),
                Some(w) if is_word(w) && !JAVA_KEYWORDS.contains(&w) => w.to_owned(),
                _ => "?".into(),
            }
        } else {
            String::new()
        };
        out.push((t.to_owned(), receiver));
    }
    out
}

/// ((caller class, caller method), (callee class, callee method)) → count.
/// `((caller class, method), (callee class, method)) -> call count`.
pub type CallCounts = BTreeMap<((usize, usize), (usize, usize)), usize>;

pub fn model_call_counts(model: &codeforest::model::CodeModel) -> CallCounts {
    model
        .call_edges
        .iter()
        .map(|e| (((e.caller.class, e.caller.method), (e.callee.class, e.callee.method)), e.count))
        .collect()
}

pub fn oracle_call_edges(classes: &[OracleClass]) -> CallCounts {
    let edges = oracle_edges(classes);
    let mut counts = BTreeMap::new();
    for (ci, class) in classes.iter().enumerate() {
        for (mi, method) in class.methods.iter().enumerate() {
            let Some(body) = &method.body else { continue };
            for (callee, receiver) in oracle_call_sites(body) {
                let target = match receiver.as_str() {
                    "" => oracle_lookup(classes, &edges, ci, &callee, false),
                    "super" => oracle_lookup(classes, &edges, ci, &callee, true),
                    "?" => None,
                    var => {
                        let mut owners: Vec<(usize, usize)> = ancestor_distances(ci, &edges).into_iter().map(|(a, d)| (d, a)).collect();
                        owners.push((0, ci));
                        owners.sort();
                        owners
                            .into_iter()
                            .find_map(|(_, o)| classes[o].fields.iter().find(|f| f.0 == var).map(|f| (o, f.1.clone())))
                            .filter(|(_, ty)| !ty.ends_with(']'))
                            .and_then(|(o, ty)| oracle_resolve(classes, ty.split('<').next().unwrap(), &classes[o].package))
                            .and_then(|t| oracle_lookup(classes, &edges, t, &callee, false))
                    }
                };
                if let Some(t) = target {
                    *counts.entry(((ci, mi), t)).or_insert(0) += 1;
                }
            }
        }
    }
    counts
}

/// Fields of `class` mentioned in `body`, excluding parameter and local shadows.
pub fn oracle_touched_fields(class: &OracleClass, method: &OracleMethod) -> BTreeSet<String> {
    let fields: BTreeSet<&str> = class.fields.iter().map(|f| f.0.as_str()).collect();
    let mut shadowed: BTreeSet<String> = method.params.iter().cloned().collect();
    let mut touched = BTreeSet::new();
    let Some(body) = &method.body else { return touched };
    for k in 0..body.len() {
        let t = body[k].text.as_str();
        if !fields.contains(t) {
            continue;
        }
        let prev = k.checked_sub(1).map(|p| body[p].text.as_str());
        let next = body.get(k + 1).map(|n| n.text.as_str());
        let is_decl = prev.is_some_and(|p| {
            is_word(p) && !JAVA_KEYWORDS.contains(&p)
                || p == ">"
                || p == "]"
                || ["int", "long", "double", "boolean", "char", "float", "short", "byte"].contains(&p)
        }) && matches!(next, Some("=" | ";" | ":" | ","));
        if is_decl {
            shadowed.insert(t.to_owned());
            continue;
        }
        let via_this = prev == Some(".") && k >= 2 && body[k - 2].text == "this";
        if prev == Some(".") && !via_this {
            continue;
        }
        if via_this || !shadowed.contains(t) {
            touched.insert(t.to_owned());
        }
    }
    touched
}

/// Shared-field pair ratio over non-constructor methods, by explicit pair enumeration.
pub fn oracle_cohesion(class: &OracleClass) -> f64 {
    let methods: Vec<&OracleMethod> = class.methods.iter().filter(|m| !m.is_constructor).collect();
    if methods.len() < 2 || class.fields.is_empty() {
        return 1.0;
    }
    let touched: Vec<BTreeSet<String>> = methods.iter().map(|m| oracle_touched_fields(class, m)).collect();
    let mut pairs = 0;
    let mut sharing = 0;
    for a in 0..methods.len() {
        for b in a + 1..methods.len() {
            pairs += 1;
            if !touched[a].is_disjoint(&touched[b]) {
                sharing += 1;
            }
        }
    }
    sharing as f64 / pairs as f64
}

// ---------------------------------------------------------------------------
// Synthetic corpora

#[derive(Debug, Clone)]
pub struct Synthetic {
    pub sources: Vec<(String, Vec<u8>)>,
    pub classes: usize,
    pub methods: usize,
    pub inheritance_edges: usize,
}

/// A random corpus of at most `max_classes` classes and interfaces with
/// acyclic inheritance (parents always come earlier), typed fields, overloads,
/// and bodies mixing calls, assignments, literals and comments with braces.
pub fn synthetic_corpus(seed: u64, max_classes: usize) -> Synthetic {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let n = rng.gen_range(0..=max_classes);
    let packages = rng.gen_range(1..=3);
    let mut is_interface = Vec::new();
    let mut package_of = Vec::new();
    let mut files: BTreeMap<String, String> = BTreeMap::new();
    let mut methods = 0;
    let mut edges = BTreeSet::new();
    let method_pool = ["run", "step", "getValue", "setValue", "reset", "apply", "size"];

    for i in 0..n {
        let pkg = rng.gen_range(0..packages);
        package_of.push(pkg);
        let iface = i > 0 && rng.gen_bool(0.2);
        is_interface.push(iface);
        let name = format!("K{i}");
        let refer = |j: usize, rng: &mut ChaCha8Rng| {
            if rng.gen_bool(0.3) {
                format!("p{}.K{j}", package_of[j])
            } else {
                format!("K{j}")
            }
        };

        let classes_before: Vec<usize> = (0..i).filter(|&j| !is_interface[j]).collect();
        let ifaces_before: Vec<usize> = (0..i).filter(|&j| is_interface[j]).collect();
        let mut header = String::new();
        if iface {
            let mut ext = Vec::new();
            for _ in 0..rng.gen_range(0..=2) {
                if let Some(&j) = ifaces_before.get(rng.gen_range(0..ifaces_before.len().max(1))) {
                    ext.push(refer(j, &mut rng));
                    edges.insert((i, j));
                }
            }
            header.push_str(&format!("public interface {name}"));
            if !ext.is_empty() {
                header.push_str(&format!(" extends {}", ext.join(", ")));
            }
        } else {
            header.push_str(&format!("public {}class {name}", if rng.gen_bool(0.1) { "abstract " } else { "" }));
            if !classes_before.is_empty() && rng.gen_bool(0.6) {
                let j = classes_before[rng.gen_range(0..classes_before.len())];
                header.push_str(&format!(" extends {}", refer(j, &mut rng)));
                edges.insert((i, j));
            } else if rng.gen_bool(0.1) {
                header.push_str(" extends javax.swing.JPanel");
            }
            let mut imp = Vec::new();
            for _ in 0..rng.gen_range(0..=2) {
                if let Some(&j) = ifaces_before.get(rng.gen_range(0..ifaces_before.len().max(1))) {
                    imp.push(refer(j, &mut rng));
                    edges.insert((i, j));
                }
            }
            if rng.gen_bool(0.15) {
                imp.push("java.io.Serializable".into());
            }
            if !imp.is_empty() {
                header.push_str(&format!(" implements {}", imp.join(", ")));
            }
        }

        let mut body = String::new();
        let field_count = if iface { 0 } else { rng.gen_range(0..=3) };
        let mut fields = Vec::new();
        for f in 0..field_count {
            let ty = match rng.gen_range(0..4) {
                0 => "int".to_owned(),
                1 => "String".to_owned(),
                2 => "java.util.List<String>".to_owned(),
                _ => format!("K{}", rng.gen_range(0..n)),
            };
            body.push_str(&format!("    private {ty} f{f};\n"));
            fields.push(format!("f{f}"));
        }
        if !iface && rng.gen_bool(0.3) {
            body.push_str(&format!("\n    public {name}() {{\n        super();\n    }}\n"));
            methods += 1;
        }
        for _ in 0..rng.gen_range(0..=6) {
            let m = method_pool[rng.gen_range(0..method_pool.len())];
            let params = if rng.gen_bool(0.5) { "" } else { "int a, String b" };
            methods += 1;
            if iface && rng.gen_bool(0.7) {
                body.push_str(&format!("    void {m}({params});\n"));
                continue;
            }
            let prefix = if iface { "default " } else { "" };
            body.push_str(&format!("\n    {prefix}public void {m}({params}) {{\n"));
            for _ in 0..rng.gen_range(0..=5) {
                let stmt = match rng.gen_range(0..9) {
                    0 if !fields.is_empty() => format!("{} = null;", fields[rng.gen_range(0..fields.len())]),
                    1 => format!("{}();", method_pool[rng.gen_range(0..method_pool.len())]),
                    2 if !fields.is_empty() => format!(
                        "{}.{}(1, 2);",
                        fields[rng.gen_range(0..fields.len())],
                        method_pool[rng.gen_range(0..method_pool.len())]
                    ),
                    3 => "System.out.println(\"} { \\\" }\");".to_owned(),
                    4 => "// stray { brace".to_owned(),
                    5 => format!(
                        "if (x > 0) {{ {}(); }} else {{ y = '}}'; }}",
                        method_pool[rng.gen_range(0..method_pool.len())]
                    ),
                    6 => "for (int q = 0; q < 3; q++) { /* } */ }".to_owned(),
                    7 => format!("new K{}();", rng.gen_range(0..n)),
                    _ => "int t = 0;\n\n".to_owned(),
                };
                body.push_str(&format!("        {stmt}\n"));
            }
            body.push_str("    }\n");
        }
        let text = format!("{header} {{\n{body}}}\n");
        let file = if rng.gen_bool(0.25) && i > 0 {
            format!("p{pkg}/Shared.java")
        } else {
            format!("p{pkg}/{name}.java")
        };
        let entry = files
            .entry(file)
            .or_insert_with(|| format!("package p{pkg};\n\nimport java.util.List;\n\n"));
        // Only the first top-level type in a shared file is public.
        if entry.contains("public interface") || entry.contains("public class") || entry.contains("public abstract class") {
            entry.push_str(&text.replacen("public ", "", 1));
        } else {
            entry.push_str(&text);
        }
        entry.push('\n');
    }
    Synthetic {
        sources: files.into_iter().map(|(p, s)| (p, s.into_bytes())).collect(),
        classes: n,
        methods,
        inheritance_edges: edges.len(),
    }
}

// ---------------------------------------------------------------------------
// glTF structural checker

fn json_index(v: &serde_json::Value, key: &str) -> Option<usize> {
    v.get(key).and_then(|x| x.as_u64()).map(|x| x as usize)
}

/// Every violation found in a glTF document; empty means valid.
pub fn check_gltf(bytes: &[u8]) -> Vec<String> {
    let mut errors = Vec::new();
    let doc: serde_json::Value = match serde_json::from_slice(bytes) {
        Ok(d) => d,
        Err(e) => return vec![format!("not JSON: {e}")],
    };
    if doc["asset"]["version"] != "2.0" {
        errors.push("asset.version is not \"2.0\"".into());
    }
    let empty = Vec::new();
    let arr = |k: &str| doc.get(k).and_then(|v| v.as_array()).unwrap_or(&empty).clone();
    let (nodes, meshes, accessors, views, buffers, materials) = (
        arr("nodes"),
        arr("meshes"),
        arr("accessors"),
        arr("bufferViews"),
        arr("buffers"),
        arr("materials"),
    );

    let mut data: Vec<Vec<u8>> = Vec::new();
    for (i, b) in buffers.iter().enumerate() {
        let uri = b["uri"].as_str().unwrap_or("");
        let Some(encoded) = uri.strip_prefix("data:application/octet-stream;base64,") else {
            errors.push(format!("buffer {i}: not an embedded data URI"));
            data.push(Vec::new());
            continue;
        };
        let bytes = base64::engine::general_purpose::STANDARD.decode(encoded).unwrap_or_default();
        if Some(bytes.len()) != json_index(b, "byteLength") {
            errors.push(format!("buffer {i}: byteLength mismatch"));
        }
        data.push(bytes);
    }

    let scene = json_index(&doc, "scene").unwrap_or(0);
    if doc["scenes"].get(scene).is_none() {
        errors.push("default scene missing".into());
    }
    let mut parent_count = vec![0; nodes.len()];
    for (i, n) in nodes.iter().enumerate() {
        for c in n.get("children").and_then(|c| c.as_array()).unwrap_or(&empty) {
            match c.as_u64().map(|c| c as usize) {
                Some(c) if c < nodes.len() => parent_count[c] += 1,
                _ => errors.push(format!("node {i}: bad child")),
            }
        }
        if let Some(m) = json_index(n, "mesh") {
            if m >= meshes.len() {
                errors.push(format!("node {i}: mesh {m} out of range"));
            }
        }
    }
    if parent_count.iter().any(|&p| p > 1) {
        errors.push("a node has several parents".into());
    }

    // Returns the accessor's element bytes after checking bounds and alignment.
    let accessor_bytes = |a: usize, errors: &mut Vec<String>| -> Option<(Vec<u8>, usize, usize)> {
        let acc = accessors.get(a)?;
        let comp = match json_index(acc, "componentType")? {
            5126 | 5125 => 4,
            5123 | 5122 => 2,
            _ => 1,
        };
        let width = match acc["type"].as_str()? {
            "SCALAR" => 1,
            "VEC2" => 2,
            "VEC3" => 3,
            "VEC4" => 4,
            _ => 16,
        };
        let count = json_index(acc, "count")?;
        let view = views.get(json_index(acc, "bufferView")?)?;
        let buffer = data.get(json_index(view, "buffer")?)?;
        let view_offset = json_index(view, "byteOffset").unwrap_or(0);
        let view_len = json_index(view, "byteLength")?;
        let acc_offset = json_index(acc, "byteOffset").unwrap_or(0);
        if !(view_offset + acc_offset).is_multiple_of(comp) {
            errors.push(format!("accessor {a}: misaligned"));
        }
        if view_offset + view_len > buffer.len() {
            errors.push(format!("accessor {a}: view exceeds buffer"));
            return None;
        }
        if acc_offset + count * comp * width > view_len {
            errors.push(format!("accessor {a}: exceeds view"));
            return None;
        }
        let start = view_offset + acc_offset;
        Some((buffer[start..start + count * comp * width].to_vec(), count, width))
    };

    for (mi, mesh) in meshes.iter().enumerate() {
        for prim in mesh["primitives"].as_array().unwrap_or(&empty) {
            let Some(pos) = json_index(&prim["attributes"], "POSITION") else {
                errors.push(format!("mesh {mi}: no POSITION"));
                continue;
            };
            let Some((pbytes, vcount, _)) = accessor_bytes(pos, &mut errors) else {
                errors.push(format!("mesh {mi}: bad POSITION accessor"));
                continue;
            };
            let floats: Vec<f32> = pbytes.chunks_exact(4).map(|c| f32::from_le_bytes(c.try_into().unwrap())).collect();
            let mut lo = [f32::INFINITY; 3];
            let mut hi = [f32::NEG_INFINITY; 3];
            for v in floats.chunks_exact(3) {
                for k in 0..3 {
                    lo[k] = lo[k].min(v[k]);
                    hi[k] = hi[k].max(v[k]);
                }
            }
            let stated = |key: &str| -> Option<Vec<f32>> {
                accessors[pos]
                    .get(key)?
                    .as_array()?
                    .iter()
                    .map(|x| x.as_f64().map(|f| f as f32))
                    .collect()
            };
            if vcount > 0 && (stated("min") != Some(lo.to_vec()) || stated("max") != Some(hi.to_vec())) {
                errors.push(format!("mesh {mi}: POSITION min/max not exact"));
            }
            if let Some(norm) = json_index(&prim["attributes"], "NORMAL") {
                if let Some((nbytes, ncount, _)) = accessor_bytes(norm, &mut errors) {
                    if ncount != vcount {
                        errors.push(format!("mesh {mi}: NORMAL count differs"));
                    }
                    let n: Vec<f32> = nbytes.chunks_exact(4).map(|c| f32::from_le_bytes(c.try_into().unwrap())).collect();
                    if n.chunks_exact(3)
                        .any(|v| ((v[0] * v[0] + v[1] * v[1] + v[2] * v[2]).sqrt() - 1.0).abs() > 1e-6)
                    {
                        errors.push(format!("mesh {mi}: non-unit normal"));
                    }
                }
            }
            if let Some(ix) = json_index(prim, "indices") {
                match accessor_bytes(ix, &mut errors) {
                    Some((ibytes, icount, _)) => {
                        if icount % 3 != 0 {
                            errors.push(format!("mesh {mi}: index count not a multiple of 3"));
                        }
                        if ibytes
                            .chunks_exact(4)
                            .any(|c| u32::from_le_bytes(c.try_into().unwrap()) as usize >= vcount)
                        {
                            errors.push(format!("mesh {mi}: index out of bounds"));
                        }
                    }
                    None => errors.push(format!("mesh {mi}: bad index accessor")),
                }
            }
            if let Some(m) = json_index(prim, "material") {
                if m >= materials.len() {
                    errors.push(format!("mesh {mi}: material out of range"));
                }
            }
        }
    }
    errors
}

/// Names of glTF nodes, by walking the JSON.
pub fn gltf_node_names(bytes: &[u8]) -> Vec<String> {
    let doc: serde_json::Value = serde_json::from_slice(bytes).unwrap();
    doc["nodes"]
        .as_array()
        .unwrap()
        .iter()
        .map(|n| n["name"].as_str().unwrap().to_owned())
        .collect()
}

// ---------------------------------------------------------------------------
// Minimal OBJ reader

#[derive(Debug, Default)]
pub struct ObjStats {
    pub objects: Vec<String>,
    pub vertices: usize,
    pub faces: usize,
    pub bad_faces: usize,
}

pub fn read_obj(text: &str) -> ObjStats {
    let mut s = ObjStats::default();
    for line in text.lines() {
        let mut parts = line.split_whitespace();
        match parts.next() {
            Some("o") => s.objects.push(parts.collect::<Vec<_>>().join(" ")),
            Some("v") => s.vertices += 1,
            Some("f") => {
                s.faces += 1;
                let ix: Vec<usize> = parts.map(|p| p.parse().unwrap()).collect();
                if ix.len() != 3 || ix.iter().any(|&i| i == 0 || i > s.vertices) {
                    s.bad_faces += 1;
                }
            }
            _ => {}
        }
    }
    s
}
