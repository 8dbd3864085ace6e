//! The ring/ideal description language.
//!
//! ```text
//! char 5
//! vars x y z
//! order grevlex
//! mod x*y - z^2
//! ideal I = x^2, y, z
//! prime P = y, z height 1
//! param f = x
//! ```
//!
//! Directives may appear in any order; `#` starts a comment. Coefficients are
//! integers reduced modulo the characteristic.

use std::sync::Arc;

use crate::checks::DeclaredPrime;
use crate::error::{Error, Result};
use crate::field::PrimeField;
use crate::ideal::Ideal;
use crate::monomial::{MonomialOrder, OrderKind};
use crate::poly::{PolyRing, Polynomial};
use crate::ring::{Limits, PresentedRing};

pub const MAX_VARS: usize = 10;

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct NamedIdeal {
    pub name: String,
    pub gens: Vec<Polynomial>,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct NamedPrime {
    pub name: String,
    pub gens: Vec<Polynomial>,
    pub height: usize,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct NamedParam {
    pub name: String,
    pub poly: Polynomial,
}

/// A parsed and validated session description.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SessionInput {
    pub characteristic: u64,
    pub vars: Vec<String>,
    pub order: OrderKind,
    pub relations: Vec<Polynomial>,
    pub ideals: Vec<NamedIdeal>,
    pub primes: Vec<NamedPrime>,
    pub params: Vec<NamedParam>,
}

fn parse_error(line: usize, column: usize, message: impl Into<String>) -> Error {
    Error::Parse {
        line,
        column,
        message: message.into(),
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
enum Tok {
    Int(String),
    Ident(String),
    Sym(char),
}

#[derive(Debug, Clone)]
struct Token {
    tok: Tok,
    col: usize,
}

fn is_ident_start(c: char) -> bool {
    c.is_ascii_alphabetic() || c == '_'
}

fn is_ident_char(c: char) -> bool {
    c.is_ascii_alphanumeric() || c == '_'
}

fn tokenize(text: &str, line: usize) -> Result<Vec<Token>> {
    let chars: Vec<char> = text.chars().collect();
    let mut out = Vec::new();
    let mut i = 0;
    while i < chars.len() {
        let c = chars[i];
        let col = i + 1;
        if c.is_whitespace() {
            i += 1;
        } else if c.is_ascii_digit() {
            let start = i;
            while i < chars.len() && chars[i].is_ascii_digit() {
                i += 1;
            }
            out.push(Token {
                tok: Tok::Int(chars[start..i].iter().collect()),
                col,
            });
        } else if is_ident_start(c) {
            let start = i;
            while i < chars.len() && is_ident_char(chars[i]) {
                i += 1;
            }
            out.push(Token {
                tok: Tok::Ident(chars[start..i].iter().collect()),
                col,
            });
        } else if "+-*^(),=".contains(c) {
            out.push(Token { tok: Tok::Sym(c), col });
            i += 1;
        } else {
            return Err(parse_error(line, col, format!("unexpected character `{c}`")));
        }
    }
    Ok(out)
}

/// Recursive-descent polynomial parser over one line's tokens.
struct PolyParser<'a> {
    ring: &'a Arc<PolyRing>,
    toks: &'a [Token],
    pos: usize,
    line: usize,
    end_col: usize,
}

impl<'a> PolyParser<'a> {
    fn col(&self) -> usize {
        self.toks.get(self.pos).map_or(self.end_col, |t| t.col)
    }

    fn peek_sym(&self, c: char) -> bool {
        matches!(self.toks.get(self.pos), Some(Token { tok: Tok::Sym(s), .. }) if *s == c)
    }

    fn err(&self, message: impl Into<String>) -> Error {
        parse_error(self.line, self.col(), message)
    }

    fn expr(&mut self) -> Result<Polynomial> {
        let mut acc = self.term()?;
        loop {
            if self.peek_sym('+') {
                self.pos += 1;
                acc = &acc + &self.term()?;
            } else if self.peek_sym('-') {
                self.pos += 1;
                acc = &acc - &self.term()?;
            } else {
                return Ok(acc);
            }
        }
    }

    fn term(&mut self) -> Result<Polynomial> {
        let mut acc = self.unary()?;
        while self.peek_sym('*') {
            self.pos += 1;
            acc = &acc * &self.unary()?;
        }
        Ok(acc)
    }

    fn unary(&mut self) -> Result<Polynomial> {
        if self.peek_sym('-') {
            self.pos += 1;
            return Ok(-&self.unary()?);
        }
        if self.peek_sym('+') {
            self.pos += 1;
            return self.unary();
        }
        self.power()
    }

    fn power(&mut self) -> Result<Polynomial> {
        let base = self.atom()?;
        if !self.peek_sym('^') {
            return Ok(base);
        }
        self.pos += 1;
        let col = self.col();
        match self.toks.get(self.pos).map(|t| &t.tok) {
            Some(Tok::Int(s)) => {
                let e: u32 = s
                    .parse()
                    .map_err(|_| parse_error(self.line, col, format!("exponent {s} too large")))?;
                self.pos += 1;
                base.pow(e as u64)
                    .map_err(|e| parse_error(self.line, col, e.to_string()))
            }
            _ => Err(self.err("expected a nonnegative integer exponent")),
        }
    }

    fn atom(&mut self) -> Result<Polynomial> {
        let col = self.col();
        let tok = self.toks.get(self.pos).map(|t| t.tok.clone());
        match tok {
            Some(Tok::Int(s)) => {
                self.pos += 1;
                let p = self.ring.characteristic() as u64;
                let c = s.bytes().fold(0u64, |acc, d| (acc * 10 + (d - b'0') as u64) % p);
                Ok(Polynomial::constant(self.ring, c as u32))
            }
            Some(Tok::Ident(name)) => {
                self.pos += 1;
                let v = self
                    .ring
                    .var_index(&name)
                    .ok_or_else(|| parse_error(self.line, col, format!("unknown variable `{name}`")))?;
                Ok(Polynomial::var(self.ring, v))
            }
            Some(Tok::Sym('(')) => {
                self.pos += 1;
                let inner = self.expr()?;
                if !self.peek_sym(')') {
                    return Err(self.err("expected `)`"));
                }
                self.pos += 1;
                Ok(inner)
            }
            Some(Tok::Sym(c)) => Err(parse_error(self.line, col, format!("unexpected `{c}`"))),
            None => Err(self.err("unexpected end of polynomial")),
        }
    }

    fn at_end(&self) -> bool {
        self.pos >= self.toks.len()
    }
}

/// A polynomial in the variables of `ring`, using the same grammar as the
/// session language.
pub fn parse_polynomial(ring: &Arc<PolyRing>, text: &str) -> Result<Polynomial> {
    let toks = tokenize(text, 1)?;
    let list = parse_poly_list(ring, &toks, 1, text.chars().count() + 1)?;
    match <[Polynomial; 1]>::try_from(list) {
        Ok([p]) => Ok(p),
        Err(_) => Err(parse_error(1, 1, "expected a single polynomial")),
    }
}

fn parse_poly_list(ring: &Arc<PolyRing>, toks: &[Token], line: usize, end_col: usize) -> Result<Vec<Polynomial>> {
    let mut parser = PolyParser {
        ring,
        toks,
        pos: 0,
        line,
        end_col,
    };
    let mut out = vec![parser.expr()?];
    while parser.peek_sym(',') {
        parser.pos += 1;
        out.push(parser.expr()?);
    }
    if !parser.at_end() {
        return Err(parser.err("unexpected token after polynomial"));
    }
    Ok(out)
}

struct Line {
    number: usize,
    toks: Vec<Token>,
    end_col: usize,
}

impl Line {
    fn keyword(&self) -> Option<&str> {
        match &self.toks.first()?.tok {
            Tok::Ident(s) => Some(s),
            _ => None,
        }
    }

    fn err_at(&self, k: usize, message: impl Into<String>) -> Error {
        let col = self.toks.get(k).map_or(self.end_col, |t| t.col);
        parse_error(self.number, col, message)
    }

    fn ident(&self, k: usize, what: &str) -> Result<String> {
        match self.toks.get(k).map(|t| &t.tok) {
            Some(Tok::Ident(s)) => Ok(s.clone()),
            _ => Err(self.err_at(k, format!("expected {what}"))),
        }
    }

    fn expect_sym(&self, k: usize, c: char) -> Result<()> {
        match self.toks.get(k).map(|t| &t.tok) {
            Some(Tok::Sym(s)) if *s == c => Ok(()),
            _ => Err(self.err_at(k, format!("expected `{c}`"))),
        }
    }
}

const KEYWORDS: [&str; 8] = ["char", "vars", "order", "mod", "ideal", "prime", "param", "height"];

impl SessionInput {
    pub fn parse(text: &str) -> Result<Self> {
        let mut lines = Vec::new();
        for (k, raw) in text.lines().enumerate() {
            let body = raw.split('#').next().unwrap_or("");
            let toks = tokenize(body, k + 1)?;
            if !toks.is_empty() {
                lines.push(Line {
                    number: k + 1,
                    toks,
                    end_col: body.chars().count() + 1,
                });
            }
        }

        // Ring header first, wherever it appears.
        let mut characteristic: Option<(u64, PrimeField)> = None;
        let mut vars: Option<Vec<String>> = None;
        let mut order: Option<OrderKind> = None;
        for line in &lines {
            match line.keyword() {
                Some("char") => {
                    if characteristic.is_some() {
                        return Err(line.err_at(0, "duplicate `char`"));
                    }
                    let p = match line.toks.get(1).map(|t| &t.tok) {
                        Some(Tok::Int(s)) if line.toks.len() == 2 => s
                            .parse::<u64>()
                            .map_err(|_| line.err_at(1, format!("characteristic {s} out of range")))?,
                        _ => return Err(line.err_at(1, "expected `char <prime>`")),
                    };
                    let field = PrimeField::new(p).map_err(|e| line.err_at(1, e.to_string()))?;
                    characteristic = Some((p, field));
                }
                Some("vars") => {
                    if vars.is_some() {
                        return Err(line.err_at(0, "duplicate `vars`"));
                    }
                    let mut names: Vec<String> = Vec::new();
                    for k in 1..line.toks.len() {
                        let name = line.ident(k, "a variable name")?;
                        if KEYWORDS.contains(&name.as_str()) {
                            return Err(line.err_at(k, format!("`{name}` is reserved")));
                        }
                        if names.contains(&name) {
                            return Err(line.err_at(k, format!("duplicate variable `{name}`")));
                        }
                        names.push(name);
                    }
                    if names.is_empty() {
                        return Err(line.err_at(1, "expected at least one variable"));
                    }
                    if names.len() > MAX_VARS {
                        return Err(line.err_at(
                            MAX_VARS + 1,
                            format!("at most {MAX_VARS} variables are supported, got {}", names.len()),
                        ));
                    }
                    vars = Some(names);
                }
                Some("order") => {
                    if order.is_some() {
                        return Err(line.err_at(0, "duplicate `order`"));
                    }
                    let name = line.ident(1, "an order name")?;
                    if line.toks.len() != 2 {
                        return Err(line.err_at(2, "unexpected token after order"));
                    }
                    order = Some(
                        name.parse()
                            .map_err(|_| line.err_at(1, format!("unknown order `{name}` (grevlex, lex, grlex)")))?,
                    );
                }
                _ => {}
            }
        }
        let (p, field) = characteristic.ok_or_else(|| parse_error(1, 1, "missing `char` directive"))?;
        let vars = vars.ok_or_else(|| parse_error(1, 1, "missing `vars` directive"))?;
        let order = order.unwrap_or(OrderKind::Grevlex);
        let ring = PolyRing::new(field, vars.clone(), MonomialOrder::new(order, vars.len()))?;

        let mut input = SessionInput {
            characteristic: p,
            vars,
            order,
            relations: Vec::new(),
            ideals: Vec::new(),
            primes: Vec::new(),
            params: Vec::new(),
        };
        let mut names: Vec<String> = Vec::new();
        let mut claim = |line: &Line, name: &str| -> Result<()> {
            if names.iter().any(|n| n == name) {
                return Err(line.err_at(1, format!("duplicate name `{name}`")));
            }
            if input_var(&ring, name) {
                return Err(line.err_at(1, format!("`{name}` is already a variable")));
            }
            names.push(name.to_string());
            Ok(())
        };
        for line in &lines {
            match line.keyword() {
                Some("char" | "vars" | "order") => {}
                Some("mod") => {
                    let rels = parse_poly_list(&ring, &line.toks[1..], line.number, line.end_col)?;
                    for r in rels {
                        if r.constant_term() != 0 {
                            return Err(line.err_at(1, format!("relation has nonzero constant term: {r}")));
                        }
                        if !r.is_zero() {
                            input.relations.push(r);
                        }
                    }
                }
                Some("ideal") => {
                    let name = line.ident(1, "an ideal name")?;
                    line.expect_sym(2, '=')?;
                    claim(line, &name)?;
                    let gens = parse_poly_list(&ring, &line.toks[3..], line.number, line.end_col)?;
                    input.ideals.push(NamedIdeal { name, gens });
                }
                Some("prime") => {
                    let name = line.ident(1, "a prime name")?;
                    line.expect_sym(2, '=')?;
                    claim(line, &name)?;
                    let n = line.toks.len();
                    let has_height = n >= 5
                        && line.toks[n - 2].tok == Tok::Ident("height".into())
                        && matches!(line.toks[n - 1].tok, Tok::Int(_));
                    if !has_height {
                        return Err(line.err_at(n, "expected `height <h>` after the generators"));
                    }
                    let Tok::Int(h) = &line.toks[n - 1].tok else {
                        unreachable!()
                    };
                    let height: usize = h
                        .parse()
                        .map_err(|_| line.err_at(n - 1, format!("height {h} out of range")))?;
                    let end_col = line.toks[n - 2].col;
                    let gens = parse_poly_list(&ring, &line.toks[3..n - 2], line.number, end_col)?;
                    input.primes.push(NamedPrime { name, gens, height });
                }
                Some("param") => {
                    let name = line.ident(1, "a parameter name")?;
                    line.expect_sym(2, '=')?;
                    claim(line, &name)?;
                    let mut list = parse_poly_list(&ring, &line.toks[3..], line.number, line.end_col)?;
                    if list.len() != 1 {
                        return Err(line.err_at(3, "a parameter is a single polynomial"));
                    }
                    input.params.push(NamedParam {
                        name,
                        poly: list.remove(0),
                    });
                }
                Some(other) => return Err(line.err_at(0, format!("unknown directive `{other}`"))),
                None => return Err(line.err_at(0, "expected a directive")),
            }
        }
        Ok(input)
    }

    /// Canonical text form; parsing it yields an equal value.
    pub fn to_dsl(&self) -> String {
        let join = |ps: &[Polynomial]| ps.iter().map(|p| p.to_string()).collect::<Vec<_>>().join(", ");
        let mut out = format!(
            "char {}\nvars {}\norder {}\n",
            self.characteristic,
            self.vars.join(" "),
            self.order
        );
        for r in &self.relations {
            out.push_str(&format!("mod {r}\n"));
        }
        for i in &self.ideals {
            out.push_str(&format!("ideal {} = {}\n", i.name, join(&i.gens)));
        }
        for p in &self.primes {
            out.push_str(&format!("prime {} = {} height {}\n", p.name, join(&p.gens), p.height));
        }
        for p in &self.params {
            out.push_str(&format!("param {} = {}\n", p.name, p.poly));
        }
        out
    }

    /// The presented ring, optionally under another order and limits.
    pub fn build(&self, order: Option<OrderKind>, limits: Limits) -> Result<Session> {
        let kind = order.unwrap_or(self.order);
        let base = PolyRing::new(
            PrimeField::new(self.characteristic)?,
            self.vars.clone(),
            MonomialOrder::new(kind, self.vars.len()),
        )?;
        let mut input = self.reordered(&base)?;
        input.order = kind;
        let ring = PresentedRing::new(base, input.relations.clone(), limits)?;
        Ok(Session { input, ring })
    }

    fn reordered(&self, target: &Arc<PolyRing>) -> Result<SessionInput> {
        let re = |ps: &[Polynomial]| ps.iter().map(|p| p.reorder(target)).collect::<Result<Vec<_>>>();
        Ok(SessionInput {
            characteristic: self.characteristic,
            vars: self.vars.clone(),
            order: self.order,
            relations: re(&self.relations)?,
            ideals: self
                .ideals
                .iter()
                .map(|i| {
                    Ok(NamedIdeal {
                        name: i.name.clone(),
                        gens: re(&i.gens)?,
                    })
                })
                .collect::<Result<_>>()?,
            primes: self
                .primes
                .iter()
                .map(|p| {
                    Ok(NamedPrime {
                        name: p.name.clone(),
                        gens: re(&p.gens)?,
                        height: p.height,
                    })
                })
                .collect::<Result<_>>()?,
            params: self
                .params
                .iter()
                .map(|p| {
                    Ok(NamedParam {
                        name: p.name.clone(),
                        poly: p.poly.reorder(target)?,
                    })
                })
                .collect::<Result<_>>()?,
        })
    }
}

fn input_var(ring: &Arc<PolyRing>, name: &str) -> bool {
    ring.var_index(name).is_some()
}

/// A session bound to its presented ring.
#[derive(Debug, Clone)]
pub struct Session {
    input: SessionInput,
    ring: Arc<PresentedRing>,
}

impl Session {
    pub fn ring(&self) -> &Arc<PresentedRing> {
        &self.ring
    }

    pub fn input(&self) -> &SessionInput {
        &self.input
    }

    /// A declared ideal or prime. `m` and `R` name the maximal and unit ideals
    /// unless declared otherwise.
    pub fn ideal(&self, name: &str) -> Result<Ideal> {
        if let Some(i) = self.input.ideals.iter().find(|i| i.name == name) {
            return Ok(Ideal::new(&self.ring, self.rebase(&i.gens)?)?.named(name));
        }
        if let Some(p) = self.input.primes.iter().find(|p| p.name == name) {
            return Ok(Ideal::new(&self.ring, self.rebase(&p.gens)?)?.named(name));
        }
        match name {
            "m" => Ok(Ideal::maximal(&self.ring)),
            "R" => Ok(Ideal::unit(&self.ring)),
            _ => Err(Error::InvalidInput(format!("no ideal named `{name}`"))),
        }
    }

    pub fn prime(&self, name: &str) -> Result<DeclaredPrime> {
        let p = self
            .input
            .primes
            .iter()
            .find(|p| p.name == name)
            .ok_or_else(|| Error::InvalidInput(format!("no prime named `{name}`")))?;
        Ok(DeclaredPrime {
            ideal: Ideal::new(&self.ring, self.rebase(&p.gens)?)?.named(name),
            height: p.height,
        })
    }

    /// A declared parameter, or else `text` parsed as a polynomial.
    pub fn param(&self, text: &str) -> Result<Polynomial> {
        if let Some(p) = self.input.params.iter().find(|p| p.name == text) {
            return p.poly.reorder(self.ring.base());
        }
        parse_polynomial(self.ring.base(), text)
    }

    fn rebase(&self, ps: &[Polynomial]) -> Result<Vec<Polynomial>> {
        ps.iter().map(|p| p.reorder(self.ring.base())).collect()
    }
}
