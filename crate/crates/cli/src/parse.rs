//! Problem files.
//!
//! ```text
//! ring {
//!   field = QQ;
//!   family x { arity = 1, constraint = none, weight = 1 }
//!   family y { arity = 2, constraint = strictly_decreasing, weight = 2 }
//!   order = lex;
//!   precedence = [x, y];
//!   use_weights = false;
//! }
//! generators {
//!   y[1,0] - x[1]*x[0];
//! }
//! options {
//!   algorithm = buchberger;
//!   max_width = 16;
//! }
//! ```
//!
//! `#` starts a comment that runs to the end of the line.

use std::fmt;

use egb_core::{
    Coeff, Constraint, EngineLimits, FamilySpec, Index, Monomial, OrderKind, OrderSpec, Polynomial,
    Ring,
};
use num_bigint::BigInt;
use num_traits::ToPrimitive;

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
#[error("{line}:{col}: {message}")]
pub struct ParseError {
    pub line: usize,
    pub col: usize,
    pub message: String,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum Algorithm {
    #[default]
    Buchberger,
    Incremental,
    Signature,
    /// Ordinary Buchberger over the variables that occur, no index action.
    Classical,
}

impl Algorithm {
    pub fn tag(self) -> &'static str {
        match self {
            Algorithm::Buchberger => "buchberger",
            Algorithm::Incremental => "incremental",
            Algorithm::Signature => "signature",
            Algorithm::Classical => "classical",
        }
    }

    pub fn from_tag(tag: &str) -> Option<Self> {
        match tag {
            "buchberger" => Some(Algorithm::Buchberger),
            "incremental" => Some(Algorithm::Incremental),
            "signature" => Some(Algorithm::Signature),
            "classical" => Some(Algorithm::Classical),
            _ => None,
        }
    }
}

impl fmt::Display for Algorithm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.tag())
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Options {
    pub algorithm: Algorithm,
    pub limits: EngineLimits,
    pub principal_syzygies: bool,
    pub width_queue: bool,
    pub cover: bool,
}

impl Default for Options {
    fn default() -> Self {
        Options {
            algorithm: Algorithm::default(),
            limits: EngineLimits::default(),
            principal_syzygies: false,
            width_queue: false,
            cover: true,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ProblemFile {
    pub ring: Ring,
    pub generators: Vec<Polynomial>,
    pub options: Options,
}

#[derive(Debug, Clone, PartialEq, Eq)]
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
            Tok::Eof => f.write_str("end of input"),
        }
    }
}

#[derive(Debug, Clone)]
struct Token {
    tok: Tok,
    line: usize,
    col: usize,
}

fn lex(text: &str) -> Result<Vec<Token>, ParseError> {
    let mut out = Vec::new();
    let (mut line, mut col) = (1, 1);
    let mut chars = text.chars().peekable();
    while let Some(&c) = chars.peek() {
        let (l, k) = (line, col);
        if c == '\n' {
            chars.next();
            line += 1;
            col = 1;
        } else if c.is_whitespace() {
            chars.next();
            col += 1;
        } else if c == '#' {
            while chars.peek().is_some_and(|&c| c != '\n') {
                chars.next();
            }
        } else if c.is_ascii_digit() {
            let mut s = String::new();
            while let Some(&d) = chars.peek().filter(|d| d.is_ascii_digit()) {
                s.push(d);
                chars.next();
                col += 1;
            }
            let n = s.parse().expect("digits");
            out.push(Token {
                tok: Tok::Int(n),
                line: l,
                col: k,
            });
        } else if c.is_alphabetic() || c == '_' {
            let mut s = String::new();
            while let Some(&d) = chars.peek().filter(|d| d.is_alphanumeric() || **d == '_') {
                s.push(d);
                chars.next();
                col += 1;
            }
            out.push(Token {
                tok: Tok::Ident(s),
                line: l,
                col: k,
            });
        } else if "{}[](),;=+-*/^".contains(c) {
            chars.next();
            col += 1;
            out.push(Token {
                tok: Tok::Sym(c),
                line: l,
                col: k,
            });
        } else {
            return Err(ParseError {
                line: l,
                col: k,
                message: format!("unexpected character `{c}`"),
            });
        }
    }
    out.push(Token {
        tok: Tok::Eof,
        line,
        col,
    });
    Ok(out)
}

struct Parser {
    toks: Vec<Token>,
    pos: usize,
}

type PResult<T> = Result<T, ParseError>;

impl Parser {
    fn new(text: &str) -> PResult<Self> {
        Ok(Parser {
            toks: lex(text)?,
            pos: 0,
        })
    }

    fn peek(&self) -> &Tok {
        &self.toks[self.pos].tok
    }

    fn error_here<T>(&self, message: impl Into<String>) -> PResult<T> {
        let t = &self.toks[self.pos];
        Err(ParseError {
            line: t.line,
            col: t.col,
            message: message.into(),
        })
    }

    fn unexpected<T>(&self, wanted: &str) -> PResult<T> {
        self.error_here(format!("expected {wanted}, found {}", self.peek()))
    }

    fn eat(&mut self, c: char) -> bool {
        if *self.peek() == Tok::Sym(c) {
            self.pos += 1;
            true
        } else {
            false
        }
    }

    fn expect(&mut self, c: char) -> PResult<()> {
        if self.eat(c) {
            Ok(())
        } else {
            self.unexpected(&format!("`{c}`"))
        }
    }

    fn ident(&mut self) -> PResult<String> {
        match self.peek().clone() {
            Tok::Ident(s) => {
                self.pos += 1;
                Ok(s)
            }
            _ => self.unexpected("a name"),
        }
    }

    fn keyword(&mut self, word: &str) -> PResult<()> {
        match self.peek() {
            Tok::Ident(s) if s == word => {
                self.pos += 1;
                Ok(())
            }
            _ => self.unexpected(&format!("`{word}`")),
        }
    }

    fn natural(&mut self) -> PResult<u64> {
        match self.peek().clone() {
            Tok::Int(n) => match n.to_u64() {
                Some(v) => {
                    self.pos += 1;
                    Ok(v)
                }
                None => self.error_here("number out of range"),
            },
            _ => self.unexpected("a number"),
        }
    }

    fn boolean(&mut self) -> PResult<bool> {
        match self.peek() {
            Tok::Ident(s) if s == "true" => {
                self.pos += 1;
                Ok(true)
            }
            Tok::Ident(s) if s == "false" => {
                self.pos += 1;
                Ok(false)
            }
            _ => self.unexpected("`true` or `false`"),
        }
    }

    /// Optional limit: a number or `none`.
    fn limit(&mut self) -> PResult<Option<u64>> {
        if matches!(self.peek(), Tok::Ident(s) if s == "none") {
            self.pos += 1;
            return Ok(None);
        }
        self.natural().map(Some)
    }

    /// `; ` or `,` between entries; both are optional before a closing brace.
    fn separator(&mut self) {
        let _ = self.eat(';') || self.eat(',');
    }

    fn ring(&mut self) -> PResult<Ring> {
        let start = self.pos;
        self.keyword("ring")?;
        self.expect('{')?;
        let mut families = Vec::new();
        let mut kind = OrderKind::Lex;
        let mut precedence: Option<Vec<String>> = None;
        let mut use_weights = false;
        while !self.eat('}') {
            let key = self.ident()?;
            match key.as_str() {
                "family" => families.push(self.family()?),
                "field" => {
                    self.expect('=')?;
                    let f = self.ident()?;
                    if f != "QQ" {
                        self.pos -= 1;
                        return self.error_here(format!("unsupported field `{f}`; only QQ"));
                    }
                }
                "order" => {
                    self.expect('=')?;
                    let tag = self.ident()?;
                    kind = match OrderKind::from_tag(&tag) {
                        Some(k) => k,
                        None => {
                            self.pos -= 1;
                            return self.error_here(format!("unknown order `{tag}`"));
                        }
                    };
                }
                "precedence" => {
                    self.expect('=')?;
                    self.expect('[')?;
                    let mut names = Vec::new();
                    while !self.eat(']') {
                        names.push(self.ident()?);
                        if !self.eat(',') {
                            self.expect(']')?;
                            break;
                        }
                    }
                    precedence = Some(names);
                }
                "use_weights" => {
                    self.expect('=')?;
                    use_weights = self.boolean()?;
                }
                _ => {
                    self.pos -= 1;
                    return self.error_here(format!("unknown ring entry `{key}`"));
                }
            }
            self.separator();
        }
        let precedence = precedence.unwrap_or_else(|| {
            families
                .iter()
                .map(|f: &FamilySpec| f.name.clone())
                .collect()
        });
        let order = OrderSpec {
            kind,
            precedence,
            use_weights,
        };
        Ring::new(families, order).map_err(|e| {
            let t = &self.toks[start];
            ParseError {
                line: t.line,
                col: t.col,
                message: e.to_string(),
            }
        })
    }

    fn family(&mut self) -> PResult<FamilySpec> {
        let name = self.ident()?;
        let mut spec = FamilySpec::new(&name, 1);
        self.expect('{')?;
        while !self.eat('}') {
            let key = self.ident()?;
            self.expect('=')?;
            match key.as_str() {
                "arity" => spec.arity = self.natural()? as usize,
                "weight" => {
                    let w = self.natural()?;
                    spec.weight =
                        u32::try_from(w).or_else(|_| self.error_here("weight out of range"))?;
                }
                "constraint" => {
                    let tag = self.ident()?;
                    spec.constraint = match Constraint::from_tag(&tag) {
                        Some(c) => c,
                        None => {
                            self.pos -= 1;
                            return self.error_here(format!("unknown constraint `{tag}`"));
                        }
                    };
                }
                _ => {
                    self.pos -= 2;
                    return self.error_here(format!("unknown family entry `{key}`"));
                }
            }
            self.separator();
        }
        Ok(spec)
    }

    /// Expressions up to the closing brace of a generators block.
    fn generators(&mut self, ring: &Ring) -> PResult<Vec<Polynomial>> {
        self.keyword("generators")?;
        self.expect('{')?;
        let mut out = Vec::new();
        while !self.eat('}') {
            out.push(self.expr(ring)?);
            if !(self.eat(';') || self.eat(',')) {
                self.expect('}')?;
                break;
            }
        }
        Ok(out)
    }

    fn options(&mut self, opts: &mut Options) -> PResult<()> {
        self.keyword("options")?;
        self.expect('{')?;
        while !self.eat('}') {
            let key = self.ident()?;
            self.expect('=')?;
            match key.as_str() {
                "algorithm" => {
                    let tag = self.ident()?;
                    opts.algorithm = match Algorithm::from_tag(&tag) {
                        Some(a) => a,
                        None => {
                            self.pos -= 1;
                            return self.error_here(format!("unknown algorithm `{tag}`"));
                        }
                    };
                }
                "max_width" => opts.limits.max_width = self.limit()?.map(|v| v as usize),
                "max_pairs" => opts.limits.max_pairs = self.limit()?,
                "max_basis" => opts.limits.max_basis = self.limit()?.map(|v| v as usize),
                "principal_syzygies" => opts.principal_syzygies = self.boolean()?,
                "width_queue" => opts.width_queue = self.boolean()?,
                "cover" => opts.cover = self.boolean()?,
                _ => {
                    self.pos -= 2;
                    return self.error_here(format!("unknown option `{key}`"));
                }
            }
            self.separator();
        }
        Ok(())
    }

    fn expr(&mut self, ring: &Ring) -> PResult<Polynomial> {
        let mut acc = self.term(ring)?;
        loop {
            if self.eat('+') {
                acc = acc.add(ring, &self.term(ring)?).expect("same ring");
            } else if self.eat('-') {
                acc = acc.sub(ring, &self.term(ring)?).expect("same ring");
            } else {
                return Ok(acc);
            }
        }
    }

    fn term(&mut self, ring: &Ring) -> PResult<Polynomial> {
        let mut acc = self.unary(ring)?;
        loop {
            if self.eat('*') {
                acc = acc.mul(ring, &self.unary(ring)?).expect("same ring");
            } else if *self.peek() == Tok::Sym('/') {
                let at = self.pos;
                self.pos += 1;
                let d = self.unary(ring)?;
                let c = match d.terms() {
                    [(m, c)] if m.is_one() => c.clone(),
                    [] => {
                        self.pos = at;
                        return self.error_here("division by zero");
                    }
                    _ => {
                        self.pos = at;
                        return self.error_here("division by a non-constant");
                    }
                };
                acc = acc.scale(&c.recip());
            } else {
                return Ok(acc);
            }
        }
    }

    fn unary(&mut self, ring: &Ring) -> PResult<Polynomial> {
        if self.eat('-') {
            return Ok(self.unary(ring)?.neg());
        }
        if self.eat('+') {
            return self.unary(ring);
        }
        self.power(ring)
    }

    fn power(&mut self, ring: &Ring) -> PResult<Polynomial> {
        let base = self.atom(ring)?;
        if self.eat('^') {
            let e = self.natural()?;
            let e = u32::try_from(e).or_else(|_| self.error_here("exponent out of range"))?;
            return Ok(base.pow(ring, e).expect("same ring"));
        }
        Ok(base)
    }

    fn atom(&mut self, ring: &Ring) -> PResult<Polynomial> {
        let t = self.toks[self.pos].clone();
        match t.tok {
            Tok::Int(n) => {
                self.pos += 1;
                Ok(Polynomial::constant(ring, Coeff::from_integer(n)))
            }
            Tok::Sym('(') => {
                self.pos += 1;
                let e = self.expr(ring)?;
                self.expect(')')?;
                Ok(e)
            }
            Tok::Ident(name) => {
                let Some(family) = ring.family_index(&name) else {
                    return self.error_here(format!("unknown variable family `{name}`"));
                };
                self.pos += 1;
                self.expect('[')?;
                let mut idx: Vec<Index> = Vec::new();
                loop {
                    let v = self.natural()?;
                    let v =
                        Index::try_from(v).or_else(|_| self.error_here("index out of range"))?;
                    idx.push(v);
                    if !self.eat(',') {
                        break;
                    }
                }
                self.expect(']')?;
                let var = ring.var(family, &idx).map_err(|e| ParseError {
                    line: t.line,
                    col: t.col,
                    message: e.to_string(),
                })?;
                Ok(Polynomial::term(
                    ring,
                    Coeff::from_integer(1.into()),
                    Monomial::var(var),
                ))
            }
            _ => self.unexpected("a number, a variable or `(`"),
        }
    }
}

/// Parses a whole problem file.
pub fn parse(text: &str) -> Result<ProblemFile, ParseError> {
    let mut p = Parser::new(text)?;
    let ring = p.ring()?;
    let mut generators = None;
    let mut options = Options::default();
    let mut seen_options = false;
    loop {
        match p.peek().clone() {
            Tok::Eof => break,
            Tok::Ident(s) if s == "generators" && generators.is_none() => {
                generators = Some(p.generators(&ring)?);
            }
            Tok::Ident(s) if s == "options" && !seen_options => {
                p.options(&mut options)?;
                seen_options = true;
            }
            _ => return p.unexpected("a `generators` or `options` block"),
        }
    }
    Ok(ProblemFile {
        ring,
        generators: generators.unwrap_or_default(),
        options,
    })
}

/// Parses a single polynomial expression over `ring`.
pub fn parse_polynomial(ring: &Ring, text: &str) -> Result<Polynomial, ParseError> {
    let mut p = Parser::new(text)?;
    let f = p.expr(ring)?;
    if *p.peek() != Tok::Eof {
        return p.unexpected("end of input");
    }
    Ok(f)
}
