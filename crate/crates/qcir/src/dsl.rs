//! The `.qcir` text format.
//!
//! One statement per line, `#` to end of line is a comment:
//!
//! ```text
//! circuit majority
//! mode probabilistic
//! registers 4
//! inputs 0
//! outputs 1
//! init r4 1
//! defgate SET1 1 rows: 0 0; 1 1
//! apply FLIP(1/2,1/2) r1
//! apply AND r3 r4
//! r1 := r1 OR r2
//! ```
//!
//! Matrix entries and coin-flip biases accept decimals, exact fractions
//! `a/b`, the literal `rsqrt2` for `1/√2`, and complex numbers written
//! `x+yi`, `x-yi`, `yi` or `i`.

use std::collections::HashMap;
use std::fmt;
use std::sync::Arc;

use qcir_core::circuit::{Circuit, CircuitBuilder, GateApplication, SemanticsMode, Violation};
use qcir_core::gates::{self, Builtin, CoinFlipParams, GateKind, GateSpec};
use qcir_core::linalg::{Matrix, Scalar};

/// Name used when a source has no `circuit` statement.
pub const DEFAULT_NAME: &str = "circuit";

/// Conventional file extension, without the dot.
pub const EXTENSION: &str = "qcir";

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct SourceSpan {
    pub line: usize,
    pub column: usize,
}

impl SourceSpan {
    pub fn new(line: usize, column: usize) -> Self {
        SourceSpan { line, column }
    }
}

impl fmt::Display for SourceSpan {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}:{}", self.line, self.column)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ErrorKind {
    Lex,
    Syntax,
    Semantic,
}

impl fmt::Display for ErrorKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            ErrorKind::Lex => "lex",
            ErrorKind::Syntax => "syntax",
            ErrorKind::Semantic => "semantic",
        })
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ParseError {
    pub span: SourceSpan,
    pub kind: ErrorKind,
    pub message: String,
}

impl ParseError {
    fn new(kind: ErrorKind, span: SourceSpan, message: impl Into<String>) -> Self {
        ParseError {
            span,
            kind,
            message: message.into(),
        }
    }
}

impl fmt::Display for ParseError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}: {} error: {}", self.span, self.kind, self.message)
    }
}

impl std::error::Error for ParseError {}

#[derive(Debug, Clone, PartialEq)]
enum Tok {
    Word(String),
    LParen,
    RParen,
    Comma,
    Semi,
    Colon,
    Assign,
}

impl fmt::Display for Tok {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Tok::Word(w) => write!(f, "`{w}`"),
            Tok::LParen => f.write_str("`(`"),
            Tok::RParen => f.write_str("`)`"),
            Tok::Comma => f.write_str("`,`"),
            Tok::Semi => f.write_str("`;`"),
            Tok::Colon => f.write_str("`:`"),
            Tok::Assign => f.write_str("`:=`"),
        }
    }
}

#[derive(Debug, Clone)]
struct Token {
    tok: Tok,
    span: SourceSpan,
}

fn is_word_char(c: char) -> bool {
    c.is_ascii_alphanumeric() || matches!(c, '_' | '-' | '.' | '/' | '+')
}

fn lex_line(text: &str, line: usize) -> Result<Vec<Token>, ParseError> {
    let chars: Vec<char> = text.chars().collect();
    let mut out = Vec::new();
    let mut i = 0;
    while i < chars.len() {
        let c = chars[i];
        let span = SourceSpan::new(line, i + 1);
        if c == '#' {
            break;
        }
        if c.is_whitespace() {
            i += 1;
            continue;
        }
        let single = match c {
            '(' => Some(Tok::LParen),
            ')' => Some(Tok::RParen),
            ',' => Some(Tok::Comma),
            ';' => Some(Tok::Semi),
            ':' if chars.get(i + 1) == Some(&'=') => {
                i += 1;
                Some(Tok::Assign)
            }
            ':' => Some(Tok::Colon),
            _ => None,
        };
        if let Some(tok) = single {
            out.push(Token { tok, span });
            i += 1;
            continue;
        }
        if !is_word_char(c) {
            return Err(ParseError::new(
                ErrorKind::Lex,
                span,
                format!("unexpected character {c:?}"),
            ));
        }
        let start = i;
        while i < chars.len() && is_word_char(chars[i]) {
            i += 1;
        }
        out.push(Token {
            tok: Tok::Word(chars[start..i].iter().collect()),
            span,
        });
    }
    Ok(out)
}

/// A real literal: decimal, `a/b`, or `rsqrt2`, with an optional sign.
pub fn parse_real(s: &str) -> Result<f64, String> {
    let (neg, body) = match s.as_bytes().first() {
        Some(b'-') => (true, &s[1..]),
        Some(b'+') => (false, &s[1..]),
        _ => (false, s),
    };
    let v = if body == "rsqrt2" {
        std::f64::consts::FRAC_1_SQRT_2
    } else if let Some((a, b)) = body.split_once('/') {
        let a: u64 = a.parse().map_err(|_| format!("bad fraction numerator in `{s}`"))?;
        let b: u64 = b.parse().map_err(|_| format!("bad fraction denominator in `{s}`"))?;
        if b == 0 {
            return Err(format!("zero denominator in `{s}`"));
        }
        a as f64 / b as f64
    } else {
        let decimal = !body.is_empty()
            && body.starts_with(|c: char| c.is_ascii_digit() || c == '.')
            && body
                .chars()
                .all(|c| c.is_ascii_digit() || matches!(c, '.' | 'e' | 'E' | '+' | '-'));
        match body.parse::<f64>() {
            Ok(v) if decimal && v.is_finite() => v,
            _ => return Err(format!("`{s}` is not a number")),
        }
    };
    Ok(if neg { -v } else { v })
}

/// A matrix entry: a real literal, or a complex one ending in `i`.
pub fn parse_scalar(s: &str) -> Result<Scalar, String> {
    let Some(body) = s.strip_suffix('i') else {
        return parse_real(s).map(|x| Scalar::new(x, 0.0));
    };
    // split before the last sign that is not a leading sign or an exponent sign
    let bytes = body.as_bytes();
    let split = (1..bytes.len())
        .rev()
        .find(|&k| matches!(bytes[k], b'+' | b'-') && !matches!(bytes[k - 1], b'e' | b'E'));
    let (re, im) = match split {
        Some(k) => (parse_real(&body[..k])?, &body[k..]),
        None => (0.0, body),
    };
    let im = match im {
        "" | "+" => 1.0,
        "-" => -1.0,
        other => parse_real(other).map_err(|_| format!("`{s}` is not a number"))?,
    };
    Ok(Scalar::new(re, im))
}

/// Shortest text that parses back to exactly `z`.
pub fn format_scalar(z: Scalar) -> String {
    if z.im == 0.0 {
        format!("{}", z.re)
    } else if z.re == 0.0 {
        format!("{}i", z.im)
    } else if z.im.is_sign_negative() {
        format!("{}{}i", z.re, z.im)
    } else {
        format!("{}+{}i", z.re, z.im)
    }
}

fn parse_register(w: &str) -> Option<usize> {
    let digits = w.strip_prefix('r').or_else(|| w.strip_prefix('R')).unwrap_or(w);
    if digits.is_empty() || !digits.bytes().all(|b| b.is_ascii_digit()) {
        return None;
    }
    digits.parse().ok()
}

#[derive(Default)]
struct Header {
    name: Option<(String, SourceSpan)>,
    mode: Option<(SemanticsMode, SourceSpan)>,
    registers: Option<(usize, SourceSpan)>,
    inputs: Option<(usize, SourceSpan)>,
    outputs: Option<(usize, SourceSpan)>,
}

#[derive(Default)]
struct Parser {
    header: Header,
    inits: Vec<(usize, u8, SourceSpan)>,
    defs: HashMap<String, Arc<GateSpec>>,
    builtins: HashMap<Builtin, Arc<GateSpec>>,
    flips: Vec<Arc<GateSpec>>,
    gates: Vec<(GateApplication, SourceSpan)>,
    errors: Vec<ParseError>,
    // a malformed `mode` or `registers` line is not also reported as missing
    saw_mode: bool,
    saw_registers: bool,
    // names of rejected defgates, so their uses are not reported again
    rejected_defs: Vec<String>,
}

struct Cursor<'a> {
    toks: &'a [Token],
    pos: usize,
    end: SourceSpan,
}

impl<'a> Cursor<'a> {
    fn peek(&self) -> Option<&'a Token> {
        self.toks.get(self.pos)
    }

    fn next(&mut self) -> Option<&'a Token> {
        let t = self.toks.get(self.pos);
        self.pos += 1;
        t
    }

    fn word(&mut self, what: &str) -> Result<(&'a str, SourceSpan), ParseError> {
        match self.next() {
            Some(Token {
                tok: Tok::Word(w),
                span,
            }) => Ok((w.as_str(), *span)),
            Some(t) => Err(syntax(t.span, format!("expected {what}, found {}", t.tok))),
            None => Err(syntax(self.end, format!("expected {what}"))),
        }
    }

    fn expect(&mut self, tok: Tok) -> Result<(), ParseError> {
        match self.next() {
            Some(t) if t.tok == tok => Ok(()),
            Some(t) => Err(syntax(t.span, format!("expected {tok}, found {}", t.tok))),
            None => Err(syntax(self.end, format!("expected {tok}"))),
        }
    }

    fn finish(&self) -> Result<(), ParseError> {
        match self.peek() {
            Some(t) => Err(syntax(t.span, format!("unexpected {} at end of statement", t.tok))),
            None => Ok(()),
        }
    }

    fn count(&mut self, what: &str) -> Result<(usize, SourceSpan), ParseError> {
        let (w, span) = self.word(what)?;
        w.parse()
            .map(|v| (v, span))
            .map_err(|_| syntax(span, format!("expected {what}, found `{w}`")))
    }

    fn register(&mut self) -> Result<(usize, SourceSpan), ParseError> {
        let (w, span) = self.word("a register")?;
        parse_register(w)
            .map(|r| (r, span))
            .ok_or_else(|| syntax(span, format!("expected a register like r1, found `{w}`")))
    }

    fn registers(&mut self) -> Result<Vec<usize>, ParseError> {
        let mut out = Vec::new();
        while self.peek().is_some() {
            out.push(self.register()?.0);
        }
        Ok(out)
    }
}

fn syntax(span: SourceSpan, message: impl Into<String>) -> ParseError {
    ParseError::new(ErrorKind::Syntax, span, message)
}

fn semantic(span: SourceSpan, message: impl Into<String>) -> ParseError {
    ParseError::new(ErrorKind::Semantic, span, message)
}

impl Parser {
    fn statement(&mut self, toks: &[Token], end: SourceSpan) -> Result<(), ParseError> {
        let mut c = Cursor { toks, pos: 0, end };
        if matches!(toks.get(1), Some(Token { tok: Tok::Assign, .. })) {
            return self.assignment(&mut c);
        }
        let (kw, span) = c.word("a keyword")?;
        match kw.to_ascii_lowercase().as_str() {
            "circuit" => {
                let (name, _) = c.word("a circuit name")?;
                c.finish()?;
                set_once(&mut self.header.name, name.to_string(), span, "circuit")
            }
            "mode" => {
                self.saw_mode = true;
                let (m, mspan) = c.word("a mode")?;
                let mode = m.to_ascii_lowercase().parse::<SemanticsMode>().map_err(|_| {
                    syntax(
                        mspan,
                        format!("unknown mode `{m}` (expected deterministic, probabilistic, quantum-real or quantum-complex)"),
                    )
                })?;
                c.finish()?;
                set_once(&mut self.header.mode, mode, span, "mode")
            }
            "registers" => {
                self.saw_registers = true;
                let (n, _) = c.count("a register count")?;
                c.finish()?;
                set_once(&mut self.header.registers, n, span, "registers")
            }
            "inputs" => {
                let (k, _) = c.count("an input count")?;
                c.finish()?;
                set_once(&mut self.header.inputs, k, span, "inputs")
            }
            "outputs" => {
                let (l, _) = c.count("an output count")?;
                c.finish()?;
                set_once(&mut self.header.outputs, l, span, "outputs")
            }
            "init" => {
                let (r, _) = c.register()?;
                let (v, vspan) = c.word("0 or 1")?;
                let v = match v {
                    "0" => 0,
                    "1" => 1,
                    _ => return Err(syntax(vspan, format!("init value must be 0 or 1, found `{v}`"))),
                };
                c.finish()?;
                if self.inits.iter().any(|&(q, _, _)| q == r) {
                    return Err(semantic(span, format!("r{r} initialized twice")));
                }
                self.inits.push((r, v, span));
                Ok(())
            }
            "defgate" => {
                let name = match toks.get(1) {
                    Some(Token { tok: Tok::Word(w), .. }) => w.clone(),
                    _ => String::new(),
                };
                let r = self.defgate(&mut c, span);
                if r.is_err() && !self.defs.contains_key(&name) {
                    self.rejected_defs.push(name);
                }
                r
            }
            "apply" => self.apply(&mut c, span),
            _ => Err(syntax(span, format!("unknown statement `{kw}`"))),
        }
    }

    fn defgate(&mut self, c: &mut Cursor<'_>, span: SourceSpan) -> Result<(), ParseError> {
        let (name, nspan) = c.word("a gate name")?;
        let (arity, aspan) = c.count("an arity")?;
        let (kw, kspan) = c.word("`rows:`")?;
        if !kw.eq_ignore_ascii_case("rows") {
            return Err(syntax(kspan, format!("expected `rows:`, found `{kw}`")));
        }
        c.expect(Tok::Colon)?;
        let mut rows: Vec<Vec<Scalar>> = vec![Vec::new()];
        while let Some(t) = c.next() {
            match &t.tok {
                Tok::Semi => rows.push(Vec::new()),
                Tok::Word(w) => {
                    let z = parse_scalar(w).map_err(|m| syntax(t.span, m))?;
                    rows.last_mut().expect("rows is nonempty").push(z);
                }
                other => return Err(syntax(t.span, format!("unexpected {other} in matrix rows"))),
            }
        }
        if self.defs.contains_key(name) {
            return Err(semantic(nspan, format!("gate `{name}` defined twice")));
        }
        if arity == 0 || arity > 8 {
            return Err(semantic(aspan, format!("arity must be between 1 and 8, found {arity}")));
        }
        let dim = 1usize << arity;
        if rows.len() != dim || rows.iter().any(|r| r.len() != dim) {
            let shape: Vec<String> = rows.iter().map(|r| r.len().to_string()).collect();
            return Err(semantic(
                span,
                format!(
                    "gate `{name}` of arity {arity} needs {dim} rows of {dim} entries, found {} rows of sizes {}",
                    rows.len(),
                    shape.join(",")
                ),
            ));
        }
        let m = Matrix::from_rows(rows).map_err(|e| semantic(span, e.to_string()))?;
        let g = gates::custom(name, arity, m).map_err(|e| semantic(nspan, e.to_string()))?;
        self.defs.insert(name.to_string(), Arc::new(g));
        Ok(())
    }

    fn apply(&mut self, c: &mut Cursor<'_>, span: SourceSpan) -> Result<(), ParseError> {
        let (name, nspan) = c.word("a gate name")?;
        let gate = if name.eq_ignore_ascii_case("FLIP") {
            c.expect(Tok::LParen)?;
            let (p, pspan) = c.word("a bias p")?;
            c.expect(Tok::Comma)?;
            let (q, qspan) = c.word("a bias q")?;
            c.expect(Tok::RParen)?;
            let p = parse_real(p).map_err(|m| syntax(pspan, m))?;
            let q = parse_real(q).map_err(|m| syntax(qspan, m))?;
            let params = CoinFlipParams::new(p, q).map_err(|e| semantic(nspan, e.to_string()))?;
            self.flip(params)
        } else if self.rejected_defs.iter().any(|d| d == name) {
            return Ok(());
        } else {
            self.lookup(name)
                .ok_or_else(|| semantic(nspan, format!("unknown gate `{name}`")))?
        };
        let targets = c.registers()?;
        self.gates.push((GateApplication::new(gate, targets), span));
        Ok(())
    }

    /// `rT := NOT rT` and `rT := rT OP rC` for OP in AND, OR, XOR.
    fn assignment(&mut self, c: &mut Cursor<'_>) -> Result<(), ParseError> {
        let (target, span) = c.register()?;
        c.expect(Tok::Assign)?;
        let (first, fspan) = c.word("an operand")?;
        if first.eq_ignore_ascii_case("NOT") {
            let (r, rspan) = c.register()?;
            c.finish()?;
            if r != target {
                return Err(semantic(rspan, format!("NOT must assign to its own register r{r}")));
            }
            let g = self.builtin(Builtin::Not);
            self.gates.push((GateApplication::new(g, vec![target]), span));
            return Ok(());
        }
        let a = parse_register(first).ok_or_else(|| syntax(fspan, format!("expected a register, found `{first}`")))?;
        let (op, ospan) = c.word("a connective")?;
        let b = match op.to_ascii_uppercase().as_str() {
            "AND" => Builtin::And,
            "OR" => Builtin::Or,
            "XOR" => Builtin::Xor,
            _ => return Err(syntax(ospan, format!("expected AND, OR or XOR, found `{op}`"))),
        };
        let (rhs, _) = c.register()?;
        c.finish()?;
        let control = if a == target {
            rhs
        } else if rhs == target {
            a
        } else {
            return Err(semantic(span, format!("r{target} must appear on the right-hand side")));
        };
        let g = self.builtin(b);
        self.gates.push((GateApplication::new(g, vec![control, target]), span));
        Ok(())
    }

    fn builtin(&mut self, b: Builtin) -> Arc<GateSpec> {
        self.builtins
            .entry(b)
            .or_insert_with(|| Arc::new(gates::builtin(b)))
            .clone()
    }

    fn flip(&mut self, params: CoinFlipParams) -> Arc<GateSpec> {
        if let Some(g) = self
            .flips
            .iter()
            .find(|g| matches!(g.kind(), GateKind::CoinFlip(p) if *p == params))
        {
            return g.clone();
        }
        let g = Arc::new(gates::coin_flip(params));
        self.flips.push(g.clone());
        g
    }

    fn lookup(&mut self, name: &str) -> Option<Arc<GateSpec>> {
        if let Some(g) = self.defs.get(name) {
            return Some(g.clone());
        }
        let b = Builtin::ALL.into_iter().find(|b| b.name().eq_ignore_ascii_case(name))?;
        Some(self.builtin(b))
    }

    fn finish(mut self, last: SourceSpan) -> Result<Circuit, Vec<ParseError>> {
        let mode = self.header.mode.map(|m| m.0);
        let n = self.header.registers.map(|r| r.0);
        if mode.is_none() && !self.saw_mode {
            self.errors.push(semantic(last, "missing `mode` statement"));
        }
        if n.is_none() && !self.saw_registers {
            self.errors.push(semantic(last, "missing `registers` statement"));
        }
        if let (Some(mode), Some(n)) = (mode, n) {
            let b = self.builder(mode, n);
            for v in b.validate() {
                let span = self.violation_span(&v, last);
                self.errors.push(semantic(span, v.to_string()));
            }
            if self.errors.is_empty() {
                return b.build().map_err(|e| vec![semantic(last, e.to_string())]);
            }
        }
        self.errors.sort_by_key(|e| e.span);
        Err(self.errors)
    }

    fn builder(&self, mode: SemanticsMode, n: usize) -> CircuitBuilder {
        let name = self.header.name.as_ref().map_or(DEFAULT_NAME, |(s, _)| s.as_str());
        let mut b = Circuit::builder(name, mode, n);
        if let Some((k, _)) = self.header.inputs {
            b = b.inputs(k);
        }
        if let Some((l, _)) = self.header.outputs {
            b = b.outputs(l);
        }
        for &(r, v, _) in &self.inits {
            b = b.init(r, v);
        }
        for (ga, _) in &self.gates {
            b.push(ga.clone());
        }
        b
    }

    fn violation_span(&self, v: &Violation, last: SourceSpan) -> SourceSpan {
        if let Some(i) = v.position() {
            return self.gates[i].1;
        }
        let init_line = |r: usize| self.inits.iter().find(|&&(q, _, _)| q == r).map(|x| x.2);
        let found = match v {
            Violation::NoRegisters => self.header.registers.map(|x| x.1),
            Violation::InputsExceedRegisters { .. } => self.header.inputs.map(|x| x.1),
            Violation::OutputsExceedRegisters { .. } => self.header.outputs.map(|x| x.1),
            Violation::InitOnInput { register }
            | Violation::InitOutOfRange { register, .. }
            | Violation::InitValue { register, .. } => init_line(*register),
            _ => None,
        };
        found.unwrap_or(last)
    }
}

fn set_once<T>(slot: &mut Option<(T, SourceSpan)>, value: T, span: SourceSpan, what: &str) -> Result<(), ParseError> {
    if let Some((_, first)) = slot {
        return Err(semantic(
            span,
            format!("duplicate `{what}` statement (first on line {})", first.line),
        ));
    }
    *slot = Some((value, span));
    Ok(())
}

/// Parses a whole source text, reporting every error found.
pub fn parse(source: &str) -> Result<Circuit, Vec<ParseError>> {
    let mut p = Parser::default();
    let mut lines = 0;
    for (i, text) in source.lines().enumerate() {
        let line = i + 1;
        lines = line;
        let toks = match lex_line(text, line) {
            Ok(t) => t,
            Err(e) => {
                p.errors.push(e);
                continue;
            }
        };
        if toks.is_empty() {
            continue;
        }
        let end = SourceSpan::new(line, text.chars().count() + 1);
        if let Err(e) = p.statement(&toks, end) {
            p.errors.push(e);
        }
    }
    p.finish(SourceSpan::new(lines.max(1), 1))
}

fn sanitize(name: &str) -> String {
    let s: String = name.chars().map(|c| if is_word_char(c) { c } else { '_' }).collect();
    if s.is_empty() {
        DEFAULT_NAME.to_string()
    } else {
        s
    }
}

fn format_matrix(m: &Matrix) -> String {
    (0..m.rows())
        .map(|i| m.row(i).iter().map(|&z| format_scalar(z)).collect::<Vec<_>>().join(" "))
        .collect::<Vec<_>>()
        .join("; ")
}

/// Canonical text for `c`. [`parse`] reads it back to an equal circuit.
pub fn serialize(c: &Circuit) -> String {
    let mut out = String::new();
    let mut line = |s: String| {
        out.push_str(&s);
        out.push('\n');
    };
    line(format!("circuit {}", sanitize(c.name())));
    line(format!("mode {}", c.mode()));
    line(format!("registers {}", c.n()));
    line(format!("inputs {}", c.k()));
    line(format!("outputs {}", c.ell()));
    for (i, &v) in c.ancilla_init().iter().enumerate() {
        if v == 1 {
            line(format!("init r{} 1", c.k() + 1 + i));
        }
    }
    // one defgate per distinct custom gate; clashing names get a suffix
    let mut defs: Vec<(String, &GateSpec)> = Vec::new();
    let mut names: Vec<String> = Vec::with_capacity(c.gates().len());
    for ga in c.gates() {
        let g = ga.gate();
        let name = match g.kind() {
            GateKind::Custom => {
                if let Some((n, _)) = defs.iter().find(|(_, d)| *d == g) {
                    n.clone()
                } else {
                    let base = sanitize(g.name());
                    let mut name = base.clone();
                    let mut suffix = 2;
                    while defs.iter().any(|(n, _)| *n == name) {
                        name = format!("{base}_{suffix}");
                        suffix += 1;
                    }
                    line(format!(
                        "defgate {name} {} rows: {}",
                        g.arity(),
                        format_matrix(g.matrix())
                    ));
                    defs.push((name.clone(), g));
                    name
                }
            }
            GateKind::CoinFlip(p) => format!("FLIP({},{})", p.p(), p.q()),
            GateKind::Builtin(b) => b.name().to_string(),
        };
        names.push(name);
    }
    for (ga, name) in c.gates().iter().zip(names) {
        let regs: Vec<String> = ga.targets().iter().map(|r| format!("r{r}")).collect();
        line(format!("apply {name} {}", regs.join(" ")));
    }
    out
}

/// Equal metadata, gate names and targets, and gate matrices within `tol`.
pub fn structurally_equal(a: &Circuit, b: &Circuit, tol: f64) -> bool {
    a.name() == b.name()
        && a.mode() == b.mode()
        && a.n() == b.n()
        && a.k() == b.k()
        && a.ell() == b.ell()
        && a.ancilla_init() == b.ancilla_init()
        && a.gates().len() == b.gates().len()
        && a.gates().iter().zip(b.gates()).all(|(x, y)| {
            let (gx, gy) = (x.gate(), y.gate());
            x.targets() == y.targets()
                && gx.name() == gy.name()
                && gx.arity() == gy.arity()
                && std::mem::discriminant(gx.kind()) == std::mem::discriminant(gy.kind())
                && gx.matrix().max_deviation(gy.matrix()).is_ok_and(|d| d <= tol)
        })
}
