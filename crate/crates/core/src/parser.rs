//! Tolerant parser for the Java subset used by the metrics.
//!
//! Recognized: `package`, `import` (kept as raw text), class / interface /
//! enum / record declarations at any nesting depth, `extends` and
//! `implements` lists, fields and methods by signature shape. Anything the
//! subset does not cover inside a method body is skipped by brace matching.
//! Generics and annotations are consumed and dropped.

use std::collections::BTreeSet;

use thiserror::Error;

use crate::lexer::{Span, Token, TokenKind};

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FieldDecl {
    pub name: String,
    pub declared_type: String,
    pub span: Span,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Receiver {
    /// Bare call or `this.m()`.
    ImplicitThis,
    /// `super.m()`: looked up in ancestors only.
    Super,
    /// `x.m()` where `x` is a plain identifier.
    Named(String),
    /// Any other receiver expression (`a().m()`, `"s".m()`, `a[0].m()`).
    Other,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CallSite {
    pub callee_name: String,
    pub receiver: Receiver,
    pub arg_count_hint: usize,
    pub span: Span,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct MethodDecl {
    pub name: String,
    pub param_count: usize,
    pub param_names: Vec<String>,
    /// Raw return type text; empty for constructors.
    pub return_type: String,
    /// Whole declaration, first annotation or modifier through `}` or `;`.
    pub span: Span,
    /// `None` for abstract and interface methods.
    pub body_span: Option<Span>,
    pub loc: u32,
    pub reads_fields: BTreeSet<String>,
    pub writes_fields: BTreeSet<String>,
    pub call_sites: Vec<CallSite>,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ClassDecl {
    /// Simple name, or `Outer.Inner` for nested declarations.
    pub name: String,
    pub package_name: String,
    /// The class `extends` target, or the first `extends` of an interface.
    pub super_name: Option<String>,
    /// `implements` targets, and further `extends` targets of an interface.
    pub super_interfaces: Vec<String>,
    pub fields: Vec<FieldDecl>,
    pub methods: Vec<MethodDecl>,
    pub span: Span,
    pub is_abstract: bool,
    pub is_interface: bool,
    /// Qualified name of the enclosing declaration for nested types.
    pub enclosing: Option<String>,
}

impl ClassDecl {
    pub fn simple_name(&self) -> &str {
        self.name.rsplit('.').next().unwrap_or(&self.name)
    }

    /// Every supertype as written, `extends` first.
    pub fn supertypes(&self) -> impl Iterator<Item = &str> {
        self.super_name.iter().chain(self.super_interfaces.iter()).map(String::as_str)
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct CompilationUnit {
    pub package: Option<String>,
    pub imports: Vec<String>,
    pub classes: Vec<ClassDecl>,
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ParseError {
    #[error("unbalanced braces near line {}", .0.line_start)]
    UnbalancedBraces(Span),
    #[error("type declaration without a name at line {}", .0.line_start)]
    MissingClassName(Span),
}

/// Result of scanning one method body.
#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct BodyScan {
    pub reads_fields: BTreeSet<String>,
    pub writes_fields: BTreeSet<String>,
    pub call_sites: Vec<CallSite>,
    pub loc: u32,
}

/// Parses a token stream and returns the flattened class list.
pub fn parse_unit(tokens: &[Token]) -> Result<Vec<ClassDecl>, ParseError> {
    parse_compilation_unit(tokens).map(|unit| unit.classes)
}

pub fn parse_compilation_unit(tokens: &[Token]) -> Result<CompilationUnit, ParseError> {
    let sig: Vec<usize> = (0..tokens.len()).filter(|&i| !tokens[i].kind.is_trivia()).collect();
    let mut parser = Parser {
        all: tokens,
        sig,
        pos: 0,
        unit: CompilationUnit::default(),
    };
    parser.unit_body()?;
    Ok(parser.unit)
}

const ASSIGN_OPS: &[&str] = &["=", "+=", "-=", "*=", "/=", "%=", "&=", "|=", "^=", "<<=", ">>=", ">>>="];

fn is_assign_op(tok: &Token) -> bool {
    tok.kind == TokenKind::Punctuation && ASSIGN_OPS.contains(&tok.text.as_str())
}

/// Scans the tokens of one method body, braces included.
///
/// `decl_line` is the first line of the declaration and only feeds `loc`.
/// Parameter names shadow fields of the same name.
pub fn scan_method_body(body: &[Token], fields: &BTreeSet<String>, params: &[String], decl_line: u32) -> BodyScan {
    let toks: Vec<&Token> = body.iter().filter(|t| !t.kind.is_trivia()).collect();
    let mut scan = BodyScan {
        loc: toks.last().map_or(0, |t| t.span.line_end.saturating_sub(decl_line) + 1),
        ..BodyScan::default()
    };
    let at = |i: usize| -> Option<&Token> { toks.get(i).copied() };

    for i in 0..toks.len() {
        let tok = toks[i];
        if tok.kind != TokenKind::Identifier {
            continue;
        }
        let prev = i.checked_sub(1).and_then(at);
        let next = at(i + 1);
        let after_dot = prev.is_some_and(|p| p.is_punct("."));

        if next.is_some_and(|n| n.is_punct("(")) {
            let close = matching(&toks, i + 1, "(", ")").unwrap_or(toks.len() - 1);
            // `name(...) {` or `name(...) throws` inside a body is a local or
            // anonymous-class method declaration, not a call.
            if at(close + 1).is_some_and(|t| t.is_punct("{") || t.is_keyword("throws")) {
                continue;
            }
            let mut head = i;
            while head >= 2 && toks[head - 1].is_punct(".") && toks[head - 2].kind == TokenKind::Identifier {
                head -= 2;
            }
            if head >= 1 && toks[head - 1].is_keyword("new") {
                continue;
            }
            let receiver = if !after_dot {
                Receiver::ImplicitThis
            } else {
                match i.checked_sub(2).and_then(at) {
                    Some(r) if r.is_keyword("this") => Receiver::ImplicitThis,
                    Some(r) if r.is_keyword("super") => Receiver::Super,
                    Some(r) if r.kind == TokenKind::Identifier => Receiver::Named(r.text.clone()),
                    _ => Receiver::Other,
                }
            };
            scan.call_sites.push(CallSite {
                callee_name: tok.text.clone(),
                receiver,
                arg_count_hint: arg_count(&toks[i + 2..close]),
                span: tok.span.cover(toks[close].span),
            });
            continue;
        }

        if !fields.contains(&tok.text) {
            continue;
        }
        if after_dot {
            let qualifier = i.checked_sub(2).and_then(at);
            let this_qualified =
                qualifier.is_some_and(|q| q.is_keyword("this")) && !i.checked_sub(3).and_then(at).is_some_and(|t| t.is_punct("."));
            if !this_qualified {
                continue;
            }
        } else {
            if params.iter().any(|p| p == &tok.text) {
                continue;
            }
            // `Type email` is a local declaration shadowing the field.
            // After `>` only `List<X> name =` or `List<X> name :` is a declaration; `a > name` is a comparison.
            let generic_decl = prev.is_some_and(|p| p.is_punct(">")) && next.is_some_and(|n| n.is_punct("=") || n.is_punct(":"));
            if generic_decl || prev.is_some_and(|p| p.kind == TokenKind::Identifier || p.is_punct("]")) {
                continue;
            }
        }
        if next.is_some_and(is_assign_op) {
            scan.writes_fields.insert(tok.text.clone());
        } else {
            scan.reads_fields.insert(tok.text.clone());
        }
    }
    scan
}

fn matching(toks: &[&Token], open_at: usize, open: &str, close: &str) -> Option<usize> {
    let mut depth = 0usize;
    for (j, t) in toks.iter().enumerate().skip(open_at) {
        if t.is_punct(open) {
            depth += 1;
        } else if t.is_punct(close) {
            depth -= 1;
            if depth == 0 {
                return Some(j);
            }
        }
    }
    None
}

/// Top-level commas + 1, or 0 for an empty argument list.
fn arg_count(args: &[&Token]) -> usize {
    if args.is_empty() {
        return 0;
    }
    let mut depth = 0i32;
    let mut commas = 0;
    for t in args {
        match t.text.as_str() {
            "(" | "[" | "{" if t.kind == TokenKind::Punctuation => depth += 1,
            ")" | "]" | "}" if t.kind == TokenKind::Punctuation => depth -= 1,
            "," if depth == 0 && t.kind == TokenKind::Punctuation => commas += 1,
            _ => {}
        }
    }
    commas + 1
}

const MODIFIERS: &[&str] = &[
    "public",
    "protected",
    "private",
    "static",
    "final",
    "abstract",
    "native",
    "synchronized",
    "transient",
    "volatile",
    "strictfp",
    "default",
];

struct PendingMethod {
    decl: MethodDecl,
    /// Index range into the full token list, braces included.
    body: Option<(usize, usize)>,
}

enum TypeKind {
    Class,
    Interface,
    Enum,
    Record,
}

struct Parser<'t> {
    all: &'t [Token],
    sig: Vec<usize>,
    pos: usize,
    unit: CompilationUnit,
}

impl<'t> Parser<'t> {
    fn tok(&self, i: usize) -> Option<&'t Token> {
        self.sig.get(i).map(|&k| &self.all[k])
    }

    fn cur(&self) -> Option<&'t Token> {
        self.tok(self.pos)
    }

    fn cur_is_punct(&self, p: &str) -> bool {
        self.cur().is_some_and(|t| t.is_punct(p))
    }

    fn eof_span(&self) -> Span {
        self.all.last().map(|t| t.span).unwrap_or_default()
    }

    fn span_of(&self, from: usize, to_inclusive: usize) -> Span {
        let a = self.tok(from).map(|t| t.span).unwrap_or_else(|| self.eof_span());
        let b = self.tok(to_inclusive).map(|t| t.span).unwrap_or_else(|| self.eof_span());
        a.cover(b)
    }

    /// Source text between two significant tokens, whitespace and comments collapsed.
    fn raw_text(&self, from: usize, to_exclusive: usize) -> String {
        let mut out = String::new();
        if from >= to_exclusive {
            return out;
        }
        let (a, b) = (self.sig[from], self.sig[to_exclusive - 1]);
        for t in &self.all[a..=b] {
            if t.kind.is_trivia() {
                if !out.ends_with(' ') {
                    out.push(' ');
                }
            } else {
                out.push_str(&t.text);
            }
        }
        out
    }

    fn unit_body(&mut self) -> Result<(), ParseError> {
        while let Some(tok) = self.cur() {
            if tok.is_keyword("package") {
                let start = self.pos + 1;
                self.skip_past(";");
                let end = self.pos.saturating_sub(1).max(start);
                let name: String = (start..end).filter_map(|i| self.tok(i)).map(|t| t.text.as_str()).collect();
                self.unit.package = Some(name);
            } else if tok.is_keyword("import") {
                let start = self.pos;
                self.skip_past(";");
                let raw = self.raw_text(start, self.pos);
                self.unit.imports.push(raw);
            } else if tok.is_punct("}") {
                return Err(ParseError::UnbalancedBraces(tok.span));
            } else if tok.is_punct(";") {
                self.pos += 1;
            } else {
                let start = self.pos;
                let mods = self.skip_modifiers();
                match self.type_keyword() {
                    Some(kind) => self.type_decl(start, kind, mods, None)?,
                    None => {
                        // Not part of the subset; drop one token and resync.
                        if self.pos == start {
                            self.pos += 1;
                        }
                    }
                }
            }
        }
        Ok(())
    }

    fn skip_past(&mut self, punct: &str) {
        while let Some(t) = self.cur() {
            self.pos += 1;
            if t.is_punct(punct) {
                return;
            }
        }
    }

    /// Skips annotations and modifiers; returns whether `abstract` was among them.
    fn skip_modifiers(&mut self) -> bool {
        let mut is_abstract = false;
        loop {
            let Some(t) = self.cur() else { return is_abstract };
            if t.is_punct("@") && !self.tok(self.pos + 1).is_some_and(|n| n.is_keyword("interface")) {
                self.pos += 1;
                self.qualified_name();
                if self.cur_is_punct("(") {
                    self.skip_balanced("(", ")");
                }
            } else if t.kind == TokenKind::Keyword && MODIFIERS.contains(&t.text.as_str()) {
                is_abstract |= t.text == "abstract";
                self.pos += 1;
            } else if t.kind == TokenKind::Identifier
                && t.text == "sealed"
                && self.tok(self.pos + 1).is_some_and(|n| n.kind == TokenKind::Keyword)
            {
                self.pos += 1;
            } else if t.kind == TokenKind::Identifier
                && t.text == "non"
                && self.tok(self.pos + 1).is_some_and(|n| n.is_punct("-"))
                && self.tok(self.pos + 2).is_some_and(|n| n.text == "sealed")
            {
                self.pos += 3;
            } else {
                return is_abstract;
            }
        }
    }

    fn type_keyword(&self) -> Option<TypeKind> {
        let t = self.cur()?;
        if t.is_keyword("class") {
            Some(TypeKind::Class)
        } else if t.is_keyword("interface") || (t.is_punct("@") && self.tok(self.pos + 1).is_some_and(|n| n.is_keyword("interface"))) {
            Some(TypeKind::Interface)
        } else if t.is_keyword("enum") {
            Some(TypeKind::Enum)
        } else if t.kind == TokenKind::Identifier
            && t.text == "record"
            && self.tok(self.pos + 1).is_some_and(|n| n.kind == TokenKind::Identifier)
        {
            Some(TypeKind::Record)
        } else {
            None
        }
    }

    /// `a.b.C`, consumed; returns the dotted text.
    fn qualified_name(&mut self) -> String {
        let mut name = String::new();
        while let Some(t) = self.cur() {
            if t.kind != TokenKind::Identifier {
                break;
            }
            name.push_str(&t.text);
            self.pos += 1;
            if self.cur_is_punct(".") && self.tok(self.pos + 1).is_some_and(|n| n.kind == TokenKind::Identifier) {
                name.push('.');
                self.pos += 1;
            } else {
                break;
            }
        }
        name
    }

    /// Skips a balanced group starting at the current `open` token.
    fn skip_balanced(&mut self, open: &str, close: &str) -> Option<usize> {
        let mut depth = 0usize;
        while let Some(t) = self.cur() {
            if t.is_punct(open) {
                depth += 1;
            } else if t.is_punct(close) {
                depth -= 1;
                if depth == 0 {
                    let at = self.pos;
                    self.pos += 1;
                    return Some(at);
                }
            }
            self.pos += 1;
        }
        None
    }

    /// Skips `<...>` type parameters or arguments if present.
    fn skip_angles(&mut self) {
        if !self.cur_is_punct("<") {
            return;
        }
        let mut depth = 0usize;
        while let Some(t) = self.cur() {
            if t.is_punct("<") {
                depth += 1;
            } else if t.is_punct(">") {
                depth -= 1;
                if depth == 0 {
                    self.pos += 1;
                    return;
                }
            } else if t.is_punct("{") || t.is_punct(";") {
                return;
            }
            self.pos += 1;
        }
    }

    /// A comma-separated supertype list; generics and annotations dropped.
    fn type_list(&mut self) -> Vec<String> {
        let mut names = Vec::new();
        loop {
            self.skip_modifiers();
            let name = self.qualified_name();
            self.skip_angles();
            if !name.is_empty() {
                names.push(name);
            }
            if self.cur_is_punct(",") {
                self.pos += 1;
            } else {
                return names;
            }
        }
    }

    fn type_decl(&mut self, start: usize, kind: TypeKind, is_abstract: bool, enclosing: Option<&str>) -> Result<(), ParseError> {
        if self.cur_is_punct("@") {
            self.pos += 1;
        }
        let keyword_at = self.pos;
        self.pos += 1;
        let name_tok = match self.cur() {
            Some(t) if t.kind == TokenKind::Identifier => t,
            _ => return Err(ParseError::MissingClassName(self.span_of(start, keyword_at))),
        };
        self.pos += 1;
        let name = match enclosing {
            Some(outer) => format!("{outer}.{}", name_tok.text),
            None => name_tok.text.clone(),
        };
        self.skip_angles();
        if matches!(kind, TypeKind::Record) && self.cur_is_punct("(") {
            self.skip_balanced("(", ")");
        }

        let is_interface = matches!(kind, TypeKind::Interface);
        let mut super_name = None;
        let mut super_interfaces = Vec::new();
        // Header clauses up to the body.
        loop {
            let Some(t) = self.cur() else {
                return Err(ParseError::UnbalancedBraces(self.span_of(start, self.pos)));
            };
            if t.is_punct("{") {
                break;
            }
            if t.is_keyword("extends") {
                self.pos += 1;
                let mut list = self.type_list().into_iter();
                if is_interface {
                    super_name = list.next();
                    super_interfaces.extend(list);
                } else {
                    super_name = list.next();
                }
            } else if t.is_keyword("implements") {
                self.pos += 1;
                super_interfaces.extend(self.type_list());
            } else if t.kind == TokenKind::Identifier && t.text == "permits" {
                self.pos += 1;
                self.type_list();
            } else {
                self.pos += 1;
            }
        }

        let index = self.unit.classes.len();
        self.unit.classes.push(ClassDecl {
            name: name.clone(),
            package_name: self.unit.package.clone().unwrap_or_default(),
            super_name,
            super_interfaces,
            fields: Vec::new(),
            methods: Vec::new(),
            span: Span::default(),
            is_abstract: is_abstract || is_interface,
            is_interface,
            enclosing: enclosing.map(str::to_owned),
        });

        let open = self.pos;
        self.pos += 1;
        if matches!(kind, TypeKind::Enum) {
            self.enum_constants();
        }
        let simple = name_tok.text.clone();
        let mut fields = Vec::new();
        let mut pending = Vec::new();
        loop {
            let Some(t) = self.cur() else {
                return Err(ParseError::UnbalancedBraces(self.span_of(start, open)));
            };
            if t.is_punct("}") {
                break;
            }
            self.member(&name, &simple, &mut fields, &mut pending)?;
        }
        let close = self.pos;
        self.pos += 1;

        let field_names: BTreeSet<String> = fields.iter().map(|f: &FieldDecl| f.name.clone()).collect();
        let methods = pending
            .into_iter()
            .map(|p| {
                let mut decl = p.decl;
                if let Some((a, b)) = p.body {
                    let scan = scan_method_body(&self.all[a..=b], &field_names, &decl.param_names, decl.span.line_start);
                    decl.reads_fields = scan.reads_fields;
                    decl.writes_fields = scan.writes_fields;
                    decl.call_sites = scan.call_sites;
                }
                decl
            })
            .collect();
        let span = self.span_of(start, close);
        let class = &mut self.unit.classes[index];
        class.fields = fields;
        class.methods = methods;
        class.span = span;
        Ok(())
    }

    /// Enum constants up to the `;` that opens the member section, or the closing brace.
    fn enum_constants(&mut self) {
        while let Some(t) = self.cur() {
            if t.is_punct(";") {
                self.pos += 1;
                return;
            }
            if t.is_punct("}") {
                return;
            }
            if t.is_punct("(") {
                self.skip_balanced("(", ")");
            } else if t.is_punct("{") {
                self.skip_balanced("{", "}");
            } else {
                self.pos += 1;
            }
        }
    }

    fn member(
        &mut self,
        class_name: &str,
        simple_name: &str,
        fields: &mut Vec<FieldDecl>,
        pending: &mut Vec<PendingMethod>,
    ) -> Result<(), ParseError> {
        let start = self.pos;
        let unbalanced = |p: &Self| ParseError::UnbalancedBraces(p.span_of(start, p.pos));
        if self.cur_is_punct(";") {
            self.pos += 1;
            return Ok(());
        }
        let is_abstract = self.skip_modifiers();
        if self.cur_is_punct("{") {
            // Instance or static initializer.
            return self.skip_balanced("{", "}").map(|_| ()).ok_or_else(|| unbalanced(self));
        }
        if let Some(kind) = self.type_keyword() {
            return self.type_decl(start, kind, is_abstract, Some(class_name));
        }
        self.skip_angles();
        let sig_start = self.pos;

        // Find what terminates the signature: `(` for methods, `=` `,` `;` for fields.
        let mut angle = 0usize;
        let mut j = self.pos;
        let terminator = loop {
            let Some(t) = self.tok(j) else {
                self.pos = j;
                return Err(unbalanced(self));
            };
            if t.kind == TokenKind::Punctuation {
                match t.text.as_str() {
                    "<" => angle += 1,
                    ">" => angle = angle.saturating_sub(1),
                    "(" | "=" | ";" | "{" | "}" if angle == 0 => break j,
                    "," if angle == 0 => break j,
                    "{" | "}" | ";" => break j,
                    _ => {}
                }
            }
            j += 1;
        };
        let term = self.tok(terminator).expect("found above");
        let before = terminator.checked_sub(1).filter(|&b| b >= sig_start).and_then(|b| self.tok(b));

        match term.text.as_str() {
            "(" if before.is_some_and(|b| b.kind == TokenKind::Identifier) => {
                let name = before.expect("checked").text.clone();
                self.pos = terminator;
                let method = self.method(start, sig_start, terminator - 1, name)?;
                pending.push(method);
                Ok(())
            }
            "=" | ";" | "," => {
                self.pos = sig_start;
                self.fields(start, fields);
                Ok(())
            }
            "{" if terminator == sig_start + 1 && before.is_some_and(|b| b.text == simple_name) => {
                // Compact record constructor.
                self.pos = terminator;
                let close = self.skip_balanced("{", "}").ok_or_else(|| unbalanced(self))?;
                pending.push(PendingMethod {
                    decl: new_method(
                        before.expect("checked").text.clone(),
                        Vec::new(),
                        String::new(),
                        self.span_of(start, close),
                        Some(self.span_of(terminator, close)),
                    ),
                    body: Some((self.sig[terminator], self.sig[close])),
                });
                Ok(())
            }
            "}" => {
                // Junk before the closing brace of the class body.
                self.pos = terminator;
                Ok(())
            }
            _ => {
                self.pos = terminator;
                if term.is_punct("{") {
                    self.skip_balanced("{", "}").ok_or_else(|| unbalanced(self))?;
                } else {
                    self.pos += 1;
                }
                Ok(())
            }
        }
    }

    fn method(&mut self, start: usize, sig_start: usize, name_at: usize, name: String) -> Result<PendingMethod, ParseError> {
        let return_type = self.raw_text(sig_start, name_at);
        let open = self.pos;
        let close = self
            .skip_balanced("(", ")")
            .ok_or_else(|| ParseError::UnbalancedBraces(self.span_of(start, open)))?;
        let param_names = self.param_names(open + 1, close);

        // Array dims, `throws`, `default` values; then a body or `;`.
        loop {
            let Some(t) = self.cur() else {
                return Err(ParseError::UnbalancedBraces(self.span_of(start, self.pos)));
            };
            if t.is_punct("{") {
                let body_open = self.pos;
                let body_close = self
                    .skip_balanced("{", "}")
                    .ok_or_else(|| ParseError::UnbalancedBraces(self.span_of(start, body_open)))?;
                let span = self.span_of(start, body_close);
                let body_span = self.span_of(body_open, body_close);
                return Ok(PendingMethod {
                    decl: new_method(name, param_names, return_type, span, Some(body_span)),
                    body: Some((self.sig[body_open], self.sig[body_close])),
                });
            }
            if t.is_punct(";") {
                let span = self.span_of(start, self.pos);
                self.pos += 1;
                return Ok(PendingMethod {
                    decl: new_method(name, param_names, return_type, span, None),
                    body: None,
                });
            }
            if t.is_punct("}") {
                return Err(ParseError::UnbalancedBraces(self.span_of(start, self.pos)));
            }
            if t.is_punct("(") {
                self.skip_balanced("(", ")");
            } else {
                self.pos += 1;
            }
        }
    }

    /// Parameter names between the parentheses, one per top-level comma-separated segment.
    fn param_names(&self, from: usize, to_exclusive: usize) -> Vec<String> {
        let mut names = Vec::new();
        let mut depth = 0i32;
        let mut last_ident: Option<&str> = None;
        let mut any = false;
        for i in from..to_exclusive {
            let t = self.tok(i).expect("inside parsed range");
            any = true;
            if t.kind == TokenKind::Punctuation {
                match t.text.as_str() {
                    "(" | "<" | "[" | "{" => depth += 1,
                    ")" | ">" | "]" | "}" => depth -= 1,
                    "," if depth == 0 => {
                        names.push(last_ident.take().unwrap_or("_").to_owned());
                    }
                    _ => {}
                }
            } else if t.kind == TokenKind::Identifier && depth == 0 {
                last_ident = Some(&t.text);
            }
        }
        if any {
            names.push(last_ident.unwrap_or("_").to_owned());
        }
        names
    }

    /// One field declaration statement, possibly declaring several names.
    fn fields(&mut self, start: usize, out: &mut Vec<FieldDecl>) {
        // Type runs up to the first declarator name: the identifier right before `=` `,` `;` or `[`.
        let type_start = self.pos;
        let mut angle = 0usize;
        let mut name_at = None;
        let mut j = self.pos;
        while let Some(t) = self.tok(j) {
            if t.is_punct("<") {
                angle += 1;
            } else if t.is_punct(">") {
                angle = angle.saturating_sub(1);
            } else if angle == 0 && t.kind == TokenKind::Identifier {
                let next = self.tok(j + 1);
                if next.is_some_and(|n| n.is_punct("=") || n.is_punct(",") || n.is_punct(";") || (n.is_punct("[") && j > type_start))
                    && j > type_start
                {
                    name_at = Some(j);
                    break;
                }
            } else if angle == 0 && (t.is_punct(";") || t.is_punct("=")) {
                break;
            }
            j += 1;
        }
        let Some(first) = name_at else {
            self.skip_past(";");
            return;
        };
        let declared_type = self.raw_text(type_start, first);
        self.pos = first;
        loop {
            let Some(t) = self.cur() else { return };
            if t.kind == TokenKind::Identifier {
                let decl_start = if self.pos == first { start } else { self.pos };
                let next = self.tok(self.pos + 1);
                if next.is_some_and(|n| n.is_punct("=") || n.is_punct(",") || n.is_punct(";") || n.is_punct("[")) {
                    out.push(FieldDecl {
                        name: t.text.clone(),
                        declared_type: declared_type.clone(),
                        span: self.span_of(decl_start, self.pos),
                    });
                }
            }
            // Skip the rest of this declarator.
            let mut depth = 0i32;
            loop {
                let Some(t) = self.cur() else { return };
                if t.kind == TokenKind::Punctuation {
                    match t.text.as_str() {
                        "(" | "[" | "{" => depth += 1,
                        ")" | "]" => depth -= 1,
                        "}" => {
                            if depth == 0 {
                                // Missing `;` before the class close; leave the brace.
                                return;
                            }
                            depth -= 1;
                        }
                        "," if depth == 0 => {
                            self.pos += 1;
                            break;
                        }
                        ";" if depth == 0 => {
                            self.pos += 1;
                            return;
                        }
                        _ => {}
                    }
                }
                self.pos += 1;
            }
        }
    }
}

fn new_method(name: String, param_names: Vec<String>, return_type: String, span: Span, body_span: Option<Span>) -> MethodDecl {
    MethodDecl {
        name,
        param_count: param_names.len(),
        param_names,
        return_type,
        span,
        body_span,
        loc: span.line_count(),
        reads_fields: BTreeSet::new(),
        writes_fields: BTreeSet::new(),
        call_sites: Vec::new(),
    }
}
