use std::fmt;

use num_bigint::BigInt;
use num_traits::{ToPrimitive, Zero};
use thiserror::Error;

use crate::jets::{Jet1, Jet2, MapGerm, VFieldGerm};
use crate::scalar::GaussianRational as GR;

/// Truncation used when a declaration has no `order` clause.
pub const DEFAULT_ORDER: u32 = 12;

const MAX_EXPONENT: u32 = 10_000;

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Pos {
    pub line: usize,
    pub col: usize,
}

impl fmt::Display for Pos {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "line {}, column {}", self.line, self.col)
    }
}

#[derive(Clone, Debug, PartialEq, Error)]
pub enum ParseErrorKind {
    #[error("syntax error: {0}")]
    Syntax(String),
    #[error("non-rational literal `{0}` (write it as p/q)")]
    NonRational(String),
    #[error("undeclared variable `{0}`")]
    UndeclaredVariable(String),
    #[error("implicit multiplication, use `*`")]
    ImplicitMultiplication,
    #[error("division by a non-constant or zero expression")]
    BadDivision,
    #[error("zero linear part for a map declared as a diffeomorphism")]
    ZeroLinearPart,
    #[error("{0}")]
    Germ(crate::Error),
}

#[derive(Clone, Debug, PartialEq, Error)]
#[error("{pos}: {kind}")]
pub struct ParseError {
    pub pos: Pos,
    pub kind: ParseErrorKind,
}

fn err<T>(pos: &Pos, kind: ParseErrorKind) -> Result<T, ParseError> {
    Err(ParseError { pos: pos.clone(), kind })
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum GermKind {
    Map,
    Field,
}

impl GermKind {
    fn keyword(&self) -> &'static str {
        match self {
            GermKind::Map => "map",
            GermKind::Field => "field",
        }
    }
}

/// One declared germ with its metadata.
#[derive(Clone, Debug, PartialEq)]
pub struct GermDocument {
    pub kind: GermKind,
    pub name: String,
    pub variables: Vec<String>,
    /// One component per variable, truncated at `truncation`.
    pub components: Vec<Jet2>,
    pub truncation: u32,
    pub metadata: Vec<(String, String)>,
}

impl GermDocument {
    pub fn from_map(name: &str, f: &MapGerm) -> Self {
        GermDocument {
            kind: GermKind::Map,
            name: name.into(),
            variables: vec!["x".into(), "y".into()],
            components: vec![f.fx().clone(), f.fy().clone()],
            truncation: f.order(),
            metadata: Vec::new(),
        }
    }

    pub fn from_field(name: &str, x: &VFieldGerm) -> Self {
        GermDocument {
            kind: GermKind::Field,
            name: name.into(),
            variables: vec!["x".into(), "y".into()],
            components: vec![x.vx().clone(), x.vy().clone()],
            truncation: x.order(),
            metadata: Vec::new(),
        }
    }

    pub fn from_jet1(name: &str, h: &Jet1) -> Self {
        let n = h.order();
        let terms = h.coeffs().iter().enumerate().map(|(d, c)| ((d as u32, 0), c.clone()));
        GermDocument {
            kind: GermKind::Map,
            name: name.into(),
            variables: vec!["x".into()],
            components: vec![Jet2::from_terms(n, terms)],
            truncation: n,
            metadata: Vec::new(),
        }
    }

    pub fn dimension(&self) -> usize {
        self.variables.len()
    }

    pub fn as_map(&self) -> crate::Result<MapGerm> {
        match (self.kind, self.dimension()) {
            (GermKind::Map, 2) => MapGerm::new(self.components[0].clone(), self.components[1].clone()),
            _ => Err(crate::Error::InvalidArgument(format!("`{}` is not a map of two variables", self.name))),
        }
    }

    pub fn as_field(&self) -> crate::Result<VFieldGerm> {
        match (self.kind, self.dimension()) {
            (GermKind::Field, 2) => VFieldGerm::new(self.components[0].clone(), self.components[1].clone()),
            _ => Err(crate::Error::InvalidArgument(format!("`{}` is not a vector field of two variables", self.name))),
        }
    }

    pub fn as_jet1(&self) -> crate::Result<Jet1> {
        match (self.kind, self.dimension()) {
            (GermKind::Map, 1) => {
                let c = &self.components[0];
                let coeffs = (0..=self.truncation).map(|d| c.coeff(d, 0)).collect();
                Ok(Jet1::new(self.truncation, coeffs))
            }
            _ => Err(crate::Error::InvalidArgument(format!("`{}` is not a map of one variable", self.name))),
        }
    }

    /// Canonical text; [`parse_germ`] inverts it.
    pub fn render(&self) -> String {
        let mut out = String::new();
        for (k, v) in &self.metadata {
            out.push_str(&format!("meta {k} = {v}\n"));
        }
        let (xn, yn) = (self.variables[0].as_str(), self.variables.get(1).map_or("y", |s| s.as_str()));
        let comps: Vec<String> = self.components.iter().map(|c| c.render(xn, yn)).collect();
        let body = if comps.len() == 1 { comps[0].clone() } else { format!("({})", comps.join(", ")) };
        out.push_str(&format!(
            "{} {}({}) = {} order {}\n",
            self.kind.keyword(),
            self.name,
            self.variables.join(","),
            body,
            self.truncation
        ));
        out
    }
}

pub fn parse_germ(text: &str) -> Result<GermDocument, ParseError> {
    parse_germ_with_order(text, None)
}

/// Parses a document, truncating at `order` instead of the declared order when given.
pub fn parse_germ_with_order(text: &str, order: Option<u32>) -> Result<GermDocument, ParseError> {
    let mut metadata = Vec::new();
    let mut code = String::with_capacity(text.len());
    for (ln, line) in text.lines().enumerate() {
        let trimmed = line.trim_start();
        if let Some(rest) = trimmed.strip_prefix("meta").filter(|r| r.starts_with(char::is_whitespace)) {
            let pos = Pos { line: ln + 1, col: line.len() - trimmed.len() + 1 };
            let Some((k, v)) = rest.split_once('=') else {
                return err(&pos, ParseErrorKind::Syntax("expected `meta key = value`".into()));
            };
            let k = k.trim();
            if k.is_empty() || !k.chars().all(|c| c.is_alphanumeric() || "_.-".contains(c)) {
                return err(&pos, ParseErrorKind::Syntax(format!("bad metadata key `{k}`")));
            }
            metadata.push((k.to_string(), v.trim().to_string()));
            code.push('\n');
        } else {
            code.push_str(line);
            code.push('\n');
        }
    }
    let tokens = tokenize(&code)?;
    let mut p = Parser { tokens, at: 0, vars: Vec::new() };
    let mut doc = p.declaration(order)?;
    doc.metadata = metadata;
    Ok(doc)
}

/// Parses a constant expression such as `-3/7`, `1+2*i` or `(1/2)^3`.
pub fn parse_scalar(text: &str) -> Result<GR, ParseError> {
    let tokens = tokenize(text)?;
    let mut p = Parser { tokens, at: 0, vars: Vec::new() };
    let e = p.expr()?;
    if *p.peek() != Tok::Eof {
        return p.syntax("end of expression");
    }
    Ok(e.eval(0)?.coeff(0, 0))
}

#[derive(Clone, Debug, PartialEq)]
enum Tok {
    Ident(String),
    Int(BigInt),
    Sym(char),
    Eof,
}

impl fmt::Display for Tok {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Tok::Ident(s) => write!(f, "`{s}`"),
            Tok::Int(n) => write!(f, "`{n}`"),
            Tok::Sym(c) => write!(f, "`{c}`"),
            Tok::Eof => write!(f, "end of input"),
        }
    }
}

fn tokenize(src: &str) -> Result<Vec<(Tok, Pos)>, ParseError> {
    let chars: Vec<char> = src.chars().collect();
    let mut out = Vec::new();
    let (mut i, mut line, mut col) = (0, 1, 1);
    while i < chars.len() {
        let c = chars[i];
        let pos = Pos { line, col };
        if c == '\n' {
            i += 1;
            line += 1;
            col = 1;
            continue;
        }
        if c.is_whitespace() {
            i += 1;
            col += 1;
            continue;
        }
        if c == '#' {
            while i < chars.len() && chars[i] != '\n' {
                i += 1;
            }
            continue;
        }
        let start = i;
        if c.is_ascii_digit() || (c == '.' && chars.get(i + 1).is_some_and(|d| d.is_ascii_digit())) {
            while i < chars.len() && chars[i].is_ascii_digit() {
                i += 1;
            }
            let frac = i < chars.len() && chars[i] == '.';
            if frac {
                i += 1;
                while i < chars.len() && (chars[i].is_ascii_alphanumeric() || chars[i] == '.') {
                    i += 1;
                }
            }
            let lit: String = chars[start..i].iter().collect();
            if frac {
                return err(&pos, ParseErrorKind::NonRational(lit));
            }
            out.push((Tok::Int(lit.parse().unwrap()), pos));
        } else if c.is_alphabetic() || c == '_' {
            while i < chars.len() && (chars[i].is_alphanumeric() || chars[i] == '_') {
                i += 1;
            }
            out.push((Tok::Ident(chars[start..i].iter().collect()), pos));
        } else if "+-*/^(),=".contains(c) {
            i += 1;
            out.push((Tok::Sym(c), pos));
        } else {
            return err(&pos, ParseErrorKind::Syntax(format!("unexpected character `{c}`")));
        }
        col += i - start;
    }
    out.push((Tok::Eof, Pos { line, col }));
    Ok(out)
}

enum Expr {
    Const(GR),
    Var(usize),
    Neg(Box<Expr>),
    Add(Box<Expr>, Box<Expr>),
    Sub(Box<Expr>, Box<Expr>),
    Mul(Box<Expr>, Box<Expr>),
    Div(Box<Expr>, Box<Expr>, Pos),
    Pow(Box<Expr>, u32),
}

impl Expr {
    fn eval(&self, n: u32) -> Result<Jet2, ParseError> {
        Ok(match self {
            Expr::Const(c) => Jet2::constant(n, c.clone()),
            Expr::Var(0) => Jet2::x(n),
            Expr::Var(_) => Jet2::y(n),
            Expr::Neg(a) => -&a.eval(n)?,
            Expr::Add(a, b) => &a.eval(n)? + &b.eval(n)?,
            Expr::Sub(a, b) => &a.eval(n)? - &b.eval(n)?,
            Expr::Mul(a, b) => &a.eval(n)? * &b.eval(n)?,
            Expr::Div(a, b, pos) => {
                let d = b.eval(n)?;
                let c = d.coeff(0, 0);
                if c.is_zero() || d.num_terms() != 1 {
                    return err(pos, ParseErrorKind::BadDivision);
                }
                a.eval(n)?.scale(&c.inv().unwrap())
            }
            Expr::Pow(a, e) => a.eval(n)?.pow(*e),
        })
    }
}

struct Parser {
    tokens: Vec<(Tok, Pos)>,
    at: usize,
    vars: Vec<String>,
}

impl Parser {
    fn peek(&self) -> &Tok {
        &self.tokens[self.at].0
    }

    fn pos(&self) -> Pos {
        self.tokens[self.at].1.clone()
    }

    fn next(&mut self) -> (Tok, Pos) {
        let t = self.tokens[self.at].clone();
        if self.at + 1 < self.tokens.len() {
            self.at += 1;
        }
        t
    }

    fn syntax<T>(&self, what: &str) -> Result<T, ParseError> {
        err(&self.pos(), ParseErrorKind::Syntax(format!("expected {what}, found {}", self.peek())))
    }

    fn expect(&mut self, c: char) -> Result<(), ParseError> {
        if *self.peek() == Tok::Sym(c) {
            self.next();
            Ok(())
        } else {
            self.syntax(&format!("`{c}`"))
        }
    }

    fn ident(&mut self) -> Result<(String, Pos), ParseError> {
        match self.next() {
            (Tok::Ident(s), p) => Ok((s, p)),
            _ => {
                self.at -= 1;
                self.syntax("an identifier")
            }
        }
    }

    fn integer(&mut self) -> Result<(BigInt, Pos), ParseError> {
        match self.peek().clone() {
            Tok::Int(n) => Ok((n, self.next().1)),
            _ => self.syntax("an integer"),
        }
    }

    fn declaration(&mut self, order: Option<u32>) -> Result<GermDocument, ParseError> {
        let (kw, kpos) = self.ident()?;
        let kind = match kw.as_str() {
            "map" => GermKind::Map,
            "field" => GermKind::Field,
            _ => return err(&kpos, ParseErrorKind::Syntax(format!("expected `map` or `field`, found `{kw}`"))),
        };
        let (name, _) = self.ident()?;
        self.expect('(')?;
        loop {
            let (v, vpos) = self.ident()?;
            if v == "i" || self.vars.contains(&v) || self.vars.len() == 2 {
                return err(&vpos, ParseErrorKind::Syntax(format!("bad variable list at `{v}`")));
            }
            self.vars.push(v);
            if *self.peek() == Tok::Sym(',') {
                self.next();
            } else {
                break;
            }
        }
        self.expect(')')?;
        self.expect('=')?;
        let bpos = self.pos();
        let exprs = if self.vars.len() == 2 {
            self.expect('(')?;
            let a = self.expr()?;
            self.expect(',')?;
            let b = self.expr()?;
            self.expect(')')?;
            vec![a, b]
        } else {
            vec![self.expr()?]
        };
        let mut declared = None;
        if *self.peek() == Tok::Ident("order".into()) {
            self.next();
            let (n, npos) = self.integer()?;
            match n.to_u32() {
                Some(n) if n >= 1 => declared = Some(n),
                _ => return err(&npos, ParseErrorKind::Syntax("order must be a positive integer".into())),
            }
        }
        if *self.peek() != Tok::Eof {
            return self.syntax("end of declaration");
        }
        let n = order.or(declared).unwrap_or(DEFAULT_ORDER);
        let components = exprs.iter().map(|e| e.eval(n)).collect::<Result<Vec<_>, _>>()?;
        let doc = GermDocument {
            kind,
            name,
            variables: std::mem::take(&mut self.vars),
            components,
            truncation: n,
            metadata: Vec::new(),
        };
        validate(&doc, &bpos)?;
        Ok(doc)
    }

    fn expr(&mut self) -> Result<Expr, ParseError> {
        let mut acc = match self.peek() {
            Tok::Sym('-') => {
                self.next();
                Expr::Neg(Box::new(self.term()?))
            }
            Tok::Sym('+') => {
                self.next();
                self.term()?
            }
            _ => self.term()?,
        };
        loop {
            match self.peek() {
                Tok::Sym('+') => {
                    self.next();
                    acc = Expr::Add(Box::new(acc), Box::new(self.term()?));
                }
                Tok::Sym('-') => {
                    self.next();
                    acc = Expr::Sub(Box::new(acc), Box::new(self.term()?));
                }
                _ => return Ok(acc),
            }
        }
    }

    fn term(&mut self) -> Result<Expr, ParseError> {
        let mut acc = self.unary()?;
        loop {
            match self.peek() {
                Tok::Sym('*') => {
                    self.next();
                    acc = Expr::Mul(Box::new(acc), Box::new(self.unary()?));
                }
                Tok::Sym('/') => {
                    self.next();
                    let pos = self.pos();
                    acc = Expr::Div(Box::new(acc), Box::new(self.unary()?), pos);
                }
                Tok::Int(_) | Tok::Ident(_) | Tok::Sym('(') => {
                    if *self.peek() == Tok::Ident("order".into()) {
                        return Ok(acc);
                    }
                    return err(&self.pos(), ParseErrorKind::ImplicitMultiplication);
                }
                _ => return Ok(acc),
            }
        }
    }

    fn unary(&mut self) -> Result<Expr, ParseError> {
        if *self.peek() == Tok::Sym('-') {
            self.next();
            return Ok(Expr::Neg(Box::new(self.unary()?)));
        }
        let base = self.atom()?;
        if *self.peek() != Tok::Sym('^') {
            return Ok(base);
        }
        self.next();
        let (e, epos) = self.integer()?;
        match e.to_u32() {
            Some(e) if e <= MAX_EXPONENT => Ok(Expr::Pow(Box::new(base), e)),
            _ => err(&epos, ParseErrorKind::Syntax(format!("exponent above {MAX_EXPONENT}"))),
        }
    }

    fn atom(&mut self) -> Result<Expr, ParseError> {
        match self.next() {
            (Tok::Int(n), _) => Ok(Expr::Const(GR::from_bigint(n))),
            (Tok::Ident(s), p) => {
                if s == "i" {
                    Ok(Expr::Const(GR::i()))
                } else if let Some(k) = self.vars.iter().position(|v| *v == s) {
                    Ok(Expr::Var(k))
                } else {
                    err(&p, ParseErrorKind::UndeclaredVariable(s))
                }
            }
            (Tok::Sym('('), _) => {
                let e = self.expr()?;
                self.expect(')')?;
                Ok(e)
            }
            _ => {
                self.at -= 1;
                self.syntax("a number, variable or `(`")
            }
        }
    }
}

fn validate(doc: &GermDocument, pos: &Pos) -> Result<(), ParseError> {
    let germ = |e: crate::Error| ParseError { pos: pos.clone(), kind: ParseErrorKind::Germ(e) };
    if doc.components.iter().any(|c| !c.coeff(0, 0).is_zero()) {
        return Err(germ(crate::Error::NotAtOrigin));
    }
    match (doc.kind, doc.dimension()) {
        (GermKind::Map, 2) => match doc.as_map() {
            Err(crate::Error::SingularLinearPart) => err(pos, ParseErrorKind::ZeroLinearPart),
            Err(e) => Err(germ(e)),
            Ok(_) => Ok(()),
        },
        (GermKind::Map, _) if doc.components[0].coeff(1, 0).is_zero() => err(pos, ParseErrorKind::ZeroLinearPart),
        _ => Ok(()),
    }
}
