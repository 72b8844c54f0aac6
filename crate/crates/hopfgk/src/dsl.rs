//! Line-oriented presentation language, positioned diagnostics, the
//! pretty-printer, and the built-in corpus.
//!
//! Grammar, one statement per line:
//!   hopf "<name>"
//!   gen <ident> deg <1|2>
//!   rel [<a>,<b>] = <polynomial | 0>
//!   delta <ident> = <sum of (x ox y) terms>
//!   # comment

use std::collections::BTreeMap;
use std::fmt;
use std::sync::Arc;

use num::Zero;

use crate::algebra::{AlgebraElement, GenIndex, SymbolTable, Word};
use crate::rewrite::{Presentation, Relation};
use crate::scalar::{format_scalar, int, parse_scalar, Scalar};
use crate::tensor::TensorElement;

#[derive(Debug, Clone, Copy, PartialEq, Eq, serde::Serialize)]
pub enum Severity {
    Error,
    Warning,
}

#[derive(Debug, Clone, serde::Serialize)]
pub struct Diagnostic {
    pub line: usize,
    pub column: usize,
    pub severity: Severity,
    pub message: String,
}

impl fmt::Display for Diagnostic {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let sev = match self.severity {
            Severity::Error => "error",
            Severity::Warning => "warning",
        };
        write!(f, "{}:{}: {}: {}", self.line, self.column, sev, self.message)
    }
}

#[derive(Debug, Clone, PartialEq)]
enum Tok {
    Ident(String),
    Num(String),
    Str(String),
    LBracket,
    RBracket,
    LParen,
    RParen,
    Comma,
    Eq,
    Plus,
    Minus,
    Star,
}

fn tokenize(line: &str, lineno: usize, diags: &mut Vec<Diagnostic>) -> Option<Vec<(Tok, usize)>> {
    let mut toks = Vec::new();
    let chars: Vec<char> = line.chars().collect();
    let mut i = 0;
    while i < chars.len() {
        let c = chars[i];
        let col = i + 1;
        match c {
            '#' => break,
            c if c.is_whitespace() => {
                i += 1;
            }
            '[' => {
                toks.push((Tok::LBracket, col));
                i += 1;
            }
            ']' => {
                toks.push((Tok::RBracket, col));
                i += 1;
            }
            '(' => {
                toks.push((Tok::LParen, col));
                i += 1;
            }
            ')' => {
                toks.push((Tok::RParen, col));
                i += 1;
            }
            ',' => {
                toks.push((Tok::Comma, col));
                i += 1;
            }
            '=' => {
                toks.push((Tok::Eq, col));
                i += 1;
            }
            '+' => {
                toks.push((Tok::Plus, col));
                i += 1;
            }
            '-' | '\u{2212}' => {
                toks.push((Tok::Minus, col));
                i += 1;
            }
            '*' => {
                toks.push((Tok::Star, col));
                i += 1;
            }
            '"' => {
                let start = i + 1;
                let mut j = start;
                while j < chars.len() && chars[j] != '"' {
                    j += 1;
                }
                if j == chars.len() {
                    diags.push(Diagnostic {
                        line: lineno,
                        column: col,
                        severity: Severity::Error,
                        message: "unterminated string".into(),
                    });
                    return None;
                }
                toks.push((Tok::Str(chars[start..j].iter().collect()), col));
                i = j + 1;
            }
            c if c.is_ascii_digit() => {
                let mut j = i;
                while j < chars.len() && (chars[j].is_ascii_digit() || chars[j] == '/') {
                    j += 1;
                }
                toks.push((Tok::Num(chars[i..j].iter().collect()), col));
                i = j;
            }
            c if c.is_alphabetic() || c == '_' => {
                let mut j = i;
                while j < chars.len()
                    && (chars[j].is_alphanumeric() || chars[j] == '_' || chars[j] == '\'')
                {
                    j += 1;
                }
                toks.push((Tok::Ident(chars[i..j].iter().collect()), col));
                i = j;
            }
            other => {
                diags.push(Diagnostic {
                    line: lineno,
                    column: col,
                    severity: Severity::Error,
                    message: format!("unexpected character `{other}`"),
                });
                return None;
            }
        }
    }
    Some(toks)
}

struct LineStream<'a> {
    toks: &'a [(Tok, usize)],
    pos: usize,
    line: usize,
}

impl<'a> LineStream<'a> {
    fn peek(&self) -> Option<&Tok> {
        self.toks.get(self.pos).map(|(t, _)| t)
    }

    fn col(&self) -> usize {
        self.toks
            .get(self.pos)
            .map(|(_, c)| *c)
            .unwrap_or_else(|| self.toks.last().map(|(_, c)| c + 1).unwrap_or(1))
    }

    fn next(&mut self) -> Option<&Tok> {
        let t = self.toks.get(self.pos).map(|(t, _)| t);
        self.pos += 1;
        t
    }

    fn error(&self, diags: &mut Vec<Diagnostic>, message: impl Into<String>) {
        diags.push(Diagnostic {
            line: self.line,
            column: self.col(),
            severity: Severity::Error,
            message: message.into(),
        });
    }

    fn expect(&mut self, tok: Tok, diags: &mut Vec<Diagnostic>, what: &str) -> bool {
        if self.peek() == Some(&tok) {
            self.next();
            true
        } else {
            self.error(diags, format!("expected {what}"));
            false
        }
    }

}

/// Parses one DSL document into a presentation, or a list of positioned
/// diagnostics. Errors prevent construction; warnings do not.
pub fn parse(src: &str) -> std::result::Result<Presentation, Vec<Diagnostic>> {
    let mut diags: Vec<Diagnostic> = Vec::new();
    let lines: Vec<&str> = src.lines().collect();

    // Pass 1: header and generator declarations.
    let mut name: Option<String> = None;
    let mut gens: Vec<(String, u8)> = Vec::new();
    let mut tokenized: Vec<Option<Vec<(Tok, usize)>>> = Vec::new();
    for (idx, raw) in lines.iter().enumerate() {
        tokenized.push(tokenize(raw, idx + 1, &mut diags));
    }
    for (idx, toks) in tokenized.iter().enumerate() {
        let Some(toks) = toks else { continue };
        if toks.is_empty() {
            continue;
        }
        let mut s = LineStream {
            toks,
            pos: 0,
            line: idx + 1,
        };
        match s.peek() {
            Some(Tok::Ident(kw)) if kw == "hopf" => {
                s.next();
                match s.next() {
                    Some(Tok::Str(n)) => {
                        if name.replace(n.clone()).is_some() {
                            s.error(&mut diags, "duplicate hopf header");
                        }
                    }
                    _ => s.error(&mut diags, "expected quoted name after `hopf`"),
                }
            }
            Some(Tok::Ident(kw)) if kw == "gen" => {
                s.next();
                let gname = match s.next() {
                    Some(Tok::Ident(n)) => n.clone(),
                    _ => {
                        s.error(&mut diags, "expected generator name");
                        continue;
                    }
                };
                match s.next() {
                    Some(Tok::Ident(d)) if d == "deg" => {}
                    _ => {
                        s.error(&mut diags, "expected `deg`");
                        continue;
                    }
                }
                let deg = match s.next() {
                    Some(Tok::Num(n)) if n == "1" => 1u8,
                    Some(Tok::Num(n)) if n == "2" => 2u8,
                    _ => {
                        s.error(&mut diags, "degree must be 1 or 2");
                        continue;
                    }
                };
                if gens.iter().any(|(n, _)| n == &gname) {
                    s.error(&mut diags, format!("duplicate generator `{gname}`"));
                } else {
                    gens.push((gname, deg));
                }
            }
            _ => {}
        }
    }
    if name.is_none() {
        diags.push(Diagnostic {
            line: 1,
            column: 1,
            severity: Severity::Error,
            message: "missing `hopf \"<name>\"` header".into(),
        });
    }
    if gens.is_empty() {
        diags.push(Diagnostic {
            line: 1,
            column: 1,
            severity: Severity::Error,
            message: "no generators declared".into(),
        });
    }
    if !diags.iter().all(|d| d.severity == Severity::Warning) {
        return Err(diags);
    }
    let table = match SymbolTable::new(gens) {
        Ok(t) => t,
        Err(e) => {
            diags.push(Diagnostic {
                line: 1,
                column: 1,
                severity: Severity::Error,
                message: e.to_string(),
            });
            return Err(diags);
        }
    };

    // Pass 2: relations and coproduct tails.
    let mut relations: BTreeMap<(GenIndex, GenIndex), AlgebraElement> = BTreeMap::new();
    let mut tails: BTreeMap<GenIndex, TensorElement> = BTreeMap::new();
    for (idx, toks) in tokenized.iter().enumerate() {
        let Some(toks) = toks else { continue };
        if toks.is_empty() {
            continue;
        }
        let mut s = LineStream {
            toks,
            pos: 0,
            line: idx + 1,
        };
        match s.peek() {
            Some(Tok::Ident(kw)) if kw == "rel" => {
                s.next();
                parse_rel(&mut s, &table, &mut relations, &mut diags);
            }
            Some(Tok::Ident(kw)) if kw == "delta" => {
                s.next();
                parse_delta(&mut s, &table, &mut tails, &mut diags);
            }
            Some(Tok::Ident(kw)) if kw == "hopf" || kw == "gen" => {}
            _ => {
                s.error(&mut diags, "expected `hopf`, `gen`, `rel`, or `delta`");
            }
        }
    }

    // Totality: one relation per unordered pair.
    let n = table.len() as GenIndex;
    for hi in 1..n {
        for lo in 0..hi {
            if !relations.contains_key(&(hi, lo)) {
                diags.push(Diagnostic {
                    line: lines.len().max(1),
                    column: 1,
                    severity: Severity::Error,
                    message: format!(
                        "missing relation for pair ({}, {})",
                        table.get(lo).name,
                        table.get(hi).name
                    ),
                });
            }
        }
    }
    for g in table.degree_two_indices() {
        if !tails.contains_key(&g) {
            diags.push(Diagnostic {
                line: lines.len().max(1),
                column: 1,
                severity: Severity::Error,
                message: format!(
                    "degree-2 generator `{}` needs a delta declaration",
                    table.get(g).name
                ),
            });
        }
    }
    if !diags.iter().all(|d| d.severity == Severity::Warning) {
        return Err(diags);
    }

    let rels = relations
        .into_iter()
        .map(|((hi, lo), rhs)| Relation { hi, lo, rhs })
        .collect();
    match Presentation::new(name.unwrap(), table, rels, tails) {
        Ok(p) => Ok(p),
        Err(e) => {
            diags.push(Diagnostic {
                line: 1,
                column: 1,
                severity: Severity::Error,
                message: e.to_string(),
            });
            Err(diags)
        }
    }
}

/// Alias used where a source has a non-file origin; origin only affects how
/// the caller labels messages.
pub fn parse_named(src: &str, _origin: &str) -> std::result::Result<Presentation, Vec<Diagnostic>> {
    parse(src)
}

fn lookup_gen(
    s: &LineStream<'_>,
    table: &Arc<SymbolTable>,
    name: &str,
    diags: &mut Vec<Diagnostic>,
) -> Option<GenIndex> {
    match table.lookup(name) {
        Some(i) => Some(i),
        None => {
            s.error(diags, format!("unknown identifier `{name}`"));
            None
        }
    }
}

fn parse_rel(
    s: &mut LineStream<'_>,
    table: &Arc<SymbolTable>,
    relations: &mut BTreeMap<(GenIndex, GenIndex), AlgebraElement>,
    diags: &mut Vec<Diagnostic>,
) {
    if !s.expect(Tok::LBracket, diags, "`[`") {
        return;
    }
    let a = match s.next() {
        Some(Tok::Ident(n)) => n.clone(),
        _ => {
            s.error(diags, "expected generator name");
            return;
        }
    };
    if !s.expect(Tok::Comma, diags, "`,`") {
        return;
    }
    let b = match s.next() {
        Some(Tok::Ident(n)) => n.clone(),
        _ => {
            s.error(diags, "expected generator name");
            return;
        }
    };
    if !s.expect(Tok::RBracket, diags, "`]`") {
        return;
    }
    if !s.expect(Tok::Eq, diags, "`=`") {
        return;
    }
    let (Some(ia), Some(ib)) = (
        lookup_gen(s, table, &a, diags),
        lookup_gen(s, table, &b, diags),
    ) else {
        return;
    };
    if ia == ib {
        s.error(diags, format!("relation [{a},{a}] is trivial; remove it"));
        return;
    }
    let Some(rhs) = parse_polynomial(s, table, diags) else {
        return;
    };
    // [a,b] = rhs compiles to the ordered rule hi lo = lo hi +/- rhs.
    let (hi, lo, rhs) = if ia > ib {
        (ia, ib, rhs)
    } else {
        (ib, ia, rhs.neg())
    };
    // Structural checks with positions; the constructor re-checks them.
    let cap = table.weight(hi) + table.weight(lo);
    for (w, _) in rhs.terms() {
        if !w.is_normal() {
            s.error(diags, "rhs is not in normal form (letters must be nondecreasing)");
            return;
        }
        if w.len() > 2 {
            s.error(diags, "rhs words longer than 2 are not supported");
            return;
        }
        if w.weighted_degree(table) >= cap {
            s.error(
                diags,
                format!("rhs must have degree lower than {cap} (filtration compatibility)"),
            );
            return;
        }
    }
    if relations.insert((hi, lo), rhs).is_some() {
        s.error(diags, format!("duplicate relation for pair ({a}, {b})"));
    }
}

/// polynomial := ['-'] term (('+'|'-') term)* ; term := factor ('*' factor)* ;
/// factor := rational | ident.
fn parse_polynomial(
    s: &mut LineStream<'_>,
    table: &Arc<SymbolTable>,
    diags: &mut Vec<Diagnostic>,
) -> Option<AlgebraElement> {
    let mut out = AlgebraElement::zero(table.clone());
    let mut sign = int(1);
    if s.peek() == Some(&Tok::Minus) {
        s.next();
        sign = int(-1);
    }
    loop {
        let (coeff, word) = parse_term(s, table, diags)?;
        out.add_term(word, coeff * sign.clone());
        match s.peek() {
            Some(Tok::Plus) => {
                s.next();
                sign = int(1);
            }
            Some(Tok::Minus) => {
                s.next();
                sign = int(-1);
            }
            None => break,
            _ => {
                s.error(diags, "expected `+`, `-`, or end of line");
                return None;
            }
        }
    }
    Some(out)
}

fn parse_term(
    s: &mut LineStream<'_>,
    table: &Arc<SymbolTable>,
    diags: &mut Vec<Diagnostic>,
) -> Option<(Scalar, Word)> {
    let mut coeff = int(1);
    let mut letters: Vec<GenIndex> = Vec::new();
    loop {
        match s.peek() {
            Some(Tok::Num(n)) => {
                let lit = n.clone();
                match parse_scalar(&lit) {
                    Some(v) => coeff *= v,
                    None => {
                        s.error(diags, format!("malformed rational `{lit}`"));
                        return None;
                    }
                }
                s.next();
            }
            Some(Tok::Ident(name)) => {
                let name = name.clone();
                let idx = lookup_gen(s, table, &name, diags)?;
                letters.push(idx);
                s.next();
            }
            _ => {
                s.error(diags, "expected a rational or a generator");
                return None;
            }
        }
        if s.peek() == Some(&Tok::Star) {
            s.next();
        } else {
            break;
        }
    }
    if coeff.is_zero() {
        return Some((Scalar::zero(), Word::empty()));
    }
    Some((coeff, Word(letters)))
}

/// delta rhs := ['-'] tterm (('+'|'-') tterm)* ;
/// tterm := [rational '*'] '(' ident ox ident ')' | ident ox ident.
fn parse_delta(
    s: &mut LineStream<'_>,
    table: &Arc<SymbolTable>,
    tails: &mut BTreeMap<GenIndex, TensorElement>,
    diags: &mut Vec<Diagnostic>,
) {
    let gname = match s.next() {
        Some(Tok::Ident(n)) => n.clone(),
        _ => {
            s.error(diags, "expected generator name after `delta`");
            return;
        }
    };
    let Some(g) = lookup_gen(s, table, &gname, diags) else {
        return;
    };
    if table.get(g).degree != 2 {
        s.error(
            diags,
            format!("delta may only be declared for degree-2 generators; `{gname}` has degree 1"),
        );
        return;
    }
    if !s.expect(Tok::Eq, diags, "`=`") {
        return;
    }
    let mut tail = TensorElement::zero(table.clone());
    let mut sign = int(1);
    if s.peek() == Some(&Tok::Minus) {
        s.next();
        sign = int(-1);
    }
    loop {
        let mut coeff = sign.clone();
        if let Some(Tok::Num(n)) = s.peek() {
            let lit = n.clone();
            match parse_scalar(&lit) {
                Some(v) => coeff *= v,
                None => {
                    s.error(diags, format!("malformed rational `{lit}`"));
                    return;
                }
            }
            s.next();
            if s.peek() == Some(&Tok::Star) {
                s.next();
            }
        }
        let parenthesized = s.peek() == Some(&Tok::LParen);
        if parenthesized {
            s.next();
        }
        let left = match s.next() {
            Some(Tok::Ident(n)) => n.clone(),
            _ => {
                s.error(diags, "expected generator name in tensor term");
                return;
            }
        };
        match s.next() {
            Some(Tok::Ident(k)) if k == "ox" => {}
            _ => {
                s.error(diags, "expected `ox`");
                return;
            }
        }
        let right = match s.next() {
            Some(Tok::Ident(n)) => n.clone(),
            _ => {
                s.error(diags, "expected generator name in tensor term");
                return;
            }
        };
        if parenthesized && !s.expect(Tok::RParen, diags, "`)`") {
            return;
        }
        let (Some(il), Some(ir)) = (
            lookup_gen(s, table, &left, diags),
            lookup_gen(s, table, &right, diags),
        ) else {
            return;
        };
        for (name, idx) in [(&left, il), (&right, ir)] {
            if table.get(idx).degree != 1 {
                s.error(
                    diags,
                    format!("tensor leg `{name}` must be a degree-1 generator"),
                );
                return;
            }
        }
        tail.add_term(Word::single(il), Word::single(ir), coeff);
        match s.peek() {
            Some(Tok::Plus) => {
                s.next();
                sign = int(1);
            }
            Some(Tok::Minus) => {
                s.next();
                sign = int(-1);
            }
            None => break,
            _ => {
                s.error(diags, "expected `+`, `-`, or end of line");
                return;
            }
        }
    }
    // Anti-cocommutativity: the tail must be antisymmetric under the twist.
    if !tail
        .add(&tail.twist())
        .map(|t| t.is_zero())
        .unwrap_or(false)
    {
        s.error(diags, "tail not antisymmetric under the twist");
        return;
    }
    if tails.insert(g, tail).is_some() {
        s.error(diags, format!("duplicate delta declaration for `{gname}`"));
    }
}

/// Canonical text form; `parse(print(p))` reconstructs an equal
/// presentation.
pub fn print(p: &Presentation) -> String {
    let table = p.table();
    let mut out = String::new();
    out.push_str(&format!("hopf \"{}\"\n", p.name));
    for g in table.iter() {
        out.push_str(&format!("gen {} deg {}\n", g.name, g.degree));
    }
    for (&(hi, lo), rhs) in p.relations() {
        let rhs_str = if rhs.is_zero() {
            "0".to_string()
        } else {
            rhs.to_string()
        };
        out.push_str(&format!(
            "rel [{},{}] = {}\n",
            table.get(hi).name,
            table.get(lo).name,
            rhs_str
        ));
    }
    for (&g, tail) in p.tails() {
        let mut parts = Vec::new();
        let mut first = true;
        for ((a, b), c) in tail.terms() {
            let cs = format_scalar(c);
            let (neg, mag) = match cs.strip_prefix('-') {
                Some(m) => (true, m.to_string()),
                None => (false, cs),
            };
            let body = if mag == "1" {
                format!(
                    "({} ox {})",
                    a.display(table),
                    b.display(table)
                )
            } else {
                format!(
                    "{}*({} ox {})",
                    mag,
                    a.display(table),
                    b.display(table)
                )
            };
            if first {
                parts.push(if neg { format!("-{body}") } else { body });
                first = false;
            } else {
                parts.push(format!("{} {}", if neg { "-" } else { "+" }, body));
            }
        }
        out.push_str(&format!(
            "delta {} = {}\n",
            table.get(g).name,
            parts.join(" ")
        ));
    }
    out
}

// ---------------------------------------------------------------------------
// Built-in corpus.

pub const WZZ_3_5A: &str = r#"hopf "wzz-3-5a"
gen x1 deg 1
gen x2 deg 1
gen x3 deg 1
gen z deg 2
rel [x1,x2] = x2
rel [x1,x3] = 0
rel [x2,x3] = 0
rel [x1,z] = z
rel [z,x2] = 0
rel [z,x3] = x2
delta z = (x1 ox x2) - (x2 ox x1)
"#;

pub const ENV_ABELIAN_3: &str = r#"hopf "env-abelian-3"
gen x1 deg 1
gen x2 deg 1
gen x3 deg 1
rel [x1,x2] = 0
rel [x1,x3] = 0
rel [x2,x3] = 0
"#;

pub const ENV_NONABELIAN_2: &str = r#"hopf "env-nonabelian-2"
gen x deg 1
gen y deg 1
rel [x,y] = y
"#;

pub const ENV_HEISENBERG: &str = r#"hopf "env-heisenberg"
gen x deg 1
gen y deg 1
gen z deg 1
rel [x,y] = z
rel [x,z] = 0
rel [y,z] = 0
"#;

pub const CENTRAL_ACC: &str = r#"hopf "central-acc"
gen x1 deg 1
gen x2 deg 1
gen z deg 2
rel [x1,x2] = 0
rel [z,x1] = 0
rel [z,x2] = 0
delta z = (x1 ox x2) - (x2 ox x1)
"#;

/// A deliberately inconsistent bracket table; the overlap check rejects it
/// with triple (z, y, x). Not part of the built-in corpus.
pub const JACOBI_VIOLATING: &str = r#"hopf "jacobi-violating"
gen x deg 1
gen y deg 1
gen z deg 1
rel [x,y] = z
rel [y,z] = x
rel [x,z] = x + z
"#;

pub fn builtin_names() -> [&'static str; 5] {
    [
        "wzz-3-5a",
        "env-abelian-3",
        "env-nonabelian-2",
        "env-heisenberg",
        "central-acc",
    ]
}

pub fn builtin_source(name: &str) -> Option<&'static str> {
    match name {
        "wzz-3-5a" => Some(WZZ_3_5A),
        "env-abelian-3" => Some(ENV_ABELIAN_3),
        "env-nonabelian-2" => Some(ENV_NONABELIAN_2),
        "env-heisenberg" => Some(ENV_HEISENBERG),
        "central-acc" => Some(CENTRAL_ACC),
        _ => None,
    }
}

pub fn builtin(name: &str) -> Option<Presentation> {
    builtin_source(name).map(|src| parse(src).expect("built-in sources parse"))
}
