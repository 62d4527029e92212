//! The presentation DSL.
//!
//! Grammar (EBNF; statements may appear in any order, each ends with `;`):
//!
//! ```text
//! input    = { statement } ;
//! statement = "space" space ";" | "variant" ident ";" | "Q" qmatrix ";" ;
//! space    = "X" "(" int ")" | "M" "(" int ")" | "blocks" "(" int { "," int } ")" ;
//! variant  = "aut" | "q_aut" | "a_u" | "a_o_new" | "a_o_old" ;
//! qmatrix  = "diag" "(" number { "," number } ")"
//!          | "matrix" "[" row { ";" row } "]" ;
//! row      = number { "," number } ;
//! number   = [ "-" ] int [ "/" int ] ;
//! ```
//!
//! Numbers are exact rationals.  `variant` defaults to `aut`; `Q` defaults
//! to the identity where a variant needs one.

use qaut::presentations::{
    a_u_presentation, appendix_presentation, aut_b_presentation, aut_mn_presentation,
    magic_presentation, q_variant, AppendixKind, Presentation, QMatrix, SpaceSpec,
};
use qaut::scalar::GaussQ;
use qaut::Error;

/// What a DSL input selects.
#[derive(Clone, Debug, PartialEq)]
pub struct DslSpec {
    pub space: Option<SpaceSpec>,
    pub variant: Variant,
    pub q: Option<QMatrix>,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Variant {
    Aut,
    QAut,
    AU,
    AONew,
    AOOld,
}

impl DslSpec {
    /// Dimension of the underlying object (number of points, matrix size,
    /// or sum of squares of block sizes).
    fn space(&self) -> Result<&SpaceSpec, Error> {
        self.space.as_ref().ok_or_else(|| Error::Parse {
            line: 0,
            col: 0,
            msg: "no `space …;` statement in input".into(),
        })
    }

    /// Builds the selected presentation.
    pub fn presentation(&self) -> Result<Presentation, Error> {
        if let Some(space) = &self.space {
            let blocks = space.blocks();
            if blocks.is_empty() || blocks.contains(&0) {
                return Err(Error::DimensionMismatch(
                    "all space sizes must be positive".into(),
                ));
            }
        }
        match self.variant {
            Variant::Aut => Ok(match self.space()? {
                SpaceSpec::X(n) => magic_presentation(*n),
                SpaceSpec::M(n) => aut_mn_presentation(*n),
                SpaceSpec::Blocks(sizes) => aut_b_presentation(sizes),
            }),
            Variant::QAut => {
                let space = self.space()?;
                let q = match &self.q {
                    Some(q) => q.clone(),
                    None => QMatrix::identity(space.blocks().iter().map(|&n| n as usize).sum()),
                };
                q_variant(space, &q)
            }
            Variant::AU => match self.space()? {
                SpaceSpec::X(n) => Ok(a_u_presentation(*n)),
                other => Err(Error::DimensionMismatch(format!(
                    "variant a_u expects `space X(n)`, got {other:?}"
                ))),
            },
            Variant::AONew | Variant::AOOld => {
                let n = match self.space()? {
                    SpaceSpec::X(n) => *n,
                    other => {
                        return Err(Error::DimensionMismatch(format!(
                            "orthogonal variants expect `space X(n)`, got {other:?}"
                        )))
                    }
                };
                let q = self
                    .q
                    .clone()
                    .unwrap_or_else(|| QMatrix::identity(n as usize));
                let kind = if self.variant == Variant::AONew {
                    AppendixKind::AONew(q)
                } else {
                    AppendixKind::AOOld(q)
                };
                appendix_presentation(&kind)
            }
        }
    }
}

#[derive(Clone, Debug, PartialEq)]
enum Tok {
    Ident(String),
    Int(i64),
    Slash,
    Minus,
    LParen,
    RParen,
    LBracket,
    RBracket,
    Comma,
    Semi,
}

struct Lexer<'a> {
    src: &'a str,
    pos: usize,
    line: usize,
    col: usize,
}

type Spanned = (Tok, usize, usize);

impl<'a> Lexer<'a> {
    fn new(src: &'a str) -> Self {
        Lexer {
            src,
            pos: 0,
            line: 1,
            col: 1,
        }
    }

    fn error(&self, msg: impl Into<String>) -> Error {
        Error::Parse {
            line: self.line,
            col: self.col,
            msg: msg.into(),
        }
    }

    fn bump(&mut self, ch: char) {
        self.pos += ch.len_utf8();
        if ch == '\n' {
            self.line += 1;
            self.col = 1;
        } else {
            self.col += 1;
        }
    }

    fn tokens(mut self) -> Result<Vec<Spanned>, Error> {
        let mut out = Vec::new();
        while let Some(ch) = self.src[self.pos..].chars().next() {
            let (line, col) = (self.line, self.col);
            match ch {
                c if c.is_whitespace() => self.bump(c),
                '#' => {
                    while let Some(c) = self.src[self.pos..].chars().next() {
                        self.bump(c);
                        if c == '\n' {
                            break;
                        }
                    }
                }
                '(' => {
                    self.bump(ch);
                    out.push((Tok::LParen, line, col));
                }
                ')' => {
                    self.bump(ch);
                    out.push((Tok::RParen, line, col));
                }
                '[' => {
                    self.bump(ch);
                    out.push((Tok::LBracket, line, col));
                }
                ']' => {
                    self.bump(ch);
                    out.push((Tok::RBracket, line, col));
                }
                ',' => {
                    self.bump(ch);
                    out.push((Tok::Comma, line, col));
                }
                ';' => {
                    self.bump(ch);
                    out.push((Tok::Semi, line, col));
                }
                '/' => {
                    self.bump(ch);
                    out.push((Tok::Slash, line, col));
                }
                '-' => {
                    self.bump(ch);
                    out.push((Tok::Minus, line, col));
                }
                c if c.is_ascii_digit() => {
                    let start = self.pos;
                    while let Some(c) = self.src[self.pos..].chars().next() {
                        if c.is_ascii_digit() {
                            self.bump(c);
                        } else {
                            break;
                        }
                    }
                    let text = &self.src[start..self.pos];
                    let value = text
                        .parse::<i64>()
                        .map_err(|_| self.error(format!("integer `{text}` out of range")))?;
                    out.push((Tok::Int(value), line, col));
                }
                c if c.is_ascii_alphabetic() || c == '_' => {
                    let start = self.pos;
                    while let Some(c) = self.src[self.pos..].chars().next() {
                        if c.is_ascii_alphanumeric() || c == '_' {
                            self.bump(c);
                        } else {
                            break;
                        }
                    }
                    out.push((
                        Tok::Ident(self.src[start..self.pos].to_string()),
                        line,
                        col,
                    ));
                }
                other => return Err(self.error(format!("unexpected character `{other}`"))),
            }
        }
        Ok(out)
    }
}

struct Parser {
    toks: Vec<Spanned>,
    at: usize,
}

impl Parser {
    fn peek(&self) -> Option<&Tok> {
        self.toks.get(self.at).map(|(t, _, _)| t)
    }

    fn here(&self) -> (usize, usize) {
        self.toks
            .get(self.at)
            .or_else(|| self.toks.last())
            .map(|&(_, l, c)| (l, c))
            .unwrap_or((1, 1))
    }

    fn error(&self, msg: impl Into<String>) -> Error {
        let (line, col) = self.here();
        Error::Parse {
            line,
            col,
            msg: msg.into(),
        }
    }

    fn next(&mut self, what: &str) -> Result<Tok, Error> {
        let t = self
            .peek()
            .cloned()
            .ok_or_else(|| self.error(format!("expected {what}, found end of input")))?;
        self.at += 1;
        Ok(t)
    }

    fn expect(&mut self, tok: Tok, what: &str) -> Result<(), Error> {
        let found = self.next(what)?;
        if found == tok {
            Ok(())
        } else {
            self.at -= 1;
            Err(self.error(format!("expected {what}, found {found:?}")))
        }
    }

    fn int(&mut self, what: &str) -> Result<i64, Error> {
        match self.next(what)? {
            Tok::Int(v) => Ok(v),
            other => {
                self.at -= 1;
                Err(self.error(format!("expected {what}, found {other:?}")))
            }
        }
    }

    fn small(&mut self, what: &str) -> Result<u16, Error> {
        let v = self.int(what)?;
        u16::try_from(v).map_err(|_| self.error(format!("{what} `{v}` out of range")))
    }

    fn number(&mut self) -> Result<GaussQ, Error> {
        let negative = if self.peek() == Some(&Tok::Minus) {
            self.at += 1;
            true
        } else {
            false
        };
        let num = self.int("a number")?;
        let den = if self.peek() == Some(&Tok::Slash) {
            self.at += 1;
            let d = self.int("a denominator")?;
            if d == 0 {
                self.at -= 1;
                return Err(self.error("denominator must be nonzero"));
            }
            d
        } else {
            1
        };
        let v = GaussQ::ratio(num, den);
        Ok(if negative { -v } else { v })
    }

    fn int_list(&mut self) -> Result<Vec<u16>, Error> {
        self.expect(Tok::LParen, "`(`")?;
        let mut out = vec![self.small("a positive integer")?];
        loop {
            match self.next("`,` or `)`")? {
                Tok::Comma => out.push(self.small("a positive integer")?),
                Tok::RParen => break,
                other => {
                    self.at -= 1;
                    return Err(self.error(format!("expected `,` or `)`, found {other:?}")));
                }
            }
        }
        Ok(out)
    }

    fn space(&mut self) -> Result<SpaceSpec, Error> {
        match self.next("a space kind (`X`, `M` or `blocks`)")? {
            Tok::Ident(name) if name == "X" => {
                let ns = self.int_list()?;
                if ns.len() != 1 {
                    return Err(self.error("`X(n)` takes exactly one size"));
                }
                Ok(SpaceSpec::X(ns[0]))
            }
            Tok::Ident(name) if name == "M" => {
                let ns = self.int_list()?;
                if ns.len() != 1 {
                    return Err(self.error("`M(n)` takes exactly one size"));
                }
                Ok(SpaceSpec::M(ns[0]))
            }
            Tok::Ident(name) if name == "blocks" => Ok(SpaceSpec::Blocks(self.int_list()?)),
            other => {
                self.at -= 1;
                Err(self.error(format!(
                    "expected a space kind (`X`, `M` or `blocks`), found {other:?}"
                )))
            }
        }
    }

    fn q_matrix(&mut self) -> Result<QMatrix, Error> {
        match self.next("`diag` or `matrix`")? {
            Tok::Ident(name) if name == "diag" => {
                self.expect(Tok::LParen, "`(`")?;
                let mut entries = vec![self.number()?];
                loop {
                    match self.next("`,` or `)`")? {
                        Tok::Comma => entries.push(self.number()?),
                        Tok::RParen => break,
                        other => {
                            self.at -= 1;
                            return Err(self.error(format!("expected `,` or `)`, found {other:?}")));
                        }
                    }
                }
                Ok(QMatrix::from_diag(&entries))
            }
            Tok::Ident(name) if name == "matrix" => {
                self.expect(Tok::LBracket, "`[`")?;
                let mut rows: Vec<Vec<GaussQ>> = vec![vec![self.number()?]];
                loop {
                    match self.next("`,`, `;` or `]`")? {
                        Tok::Comma => rows.last_mut().unwrap().push(self.number()?),
                        Tok::Semi => rows.push(vec![self.number()?]),
                        Tok::RBracket => break,
                        other => {
                            self.at -= 1;
                            return Err(
                                self.error(format!("expected `,`, `;` or `]`, found {other:?}"))
                            );
                        }
                    }
                }
                let (line, col) = self.here();
                QMatrix::from_rows(rows).map_err(|e| Error::Parse {
                    line,
                    col,
                    msg: e.to_string(),
                })
            }
            other => {
                self.at -= 1;
                Err(self.error(format!("expected `diag` or `matrix`, found {other:?}")))
            }
        }
    }

    fn variant(&mut self) -> Result<Variant, Error> {
        match self.next("a variant name")? {
            Tok::Ident(name) => match name.as_str() {
                "aut" => Ok(Variant::Aut),
                "q_aut" => Ok(Variant::QAut),
                "a_u" => Ok(Variant::AU),
                "a_o_new" => Ok(Variant::AONew),
                "a_o_old" => Ok(Variant::AOOld),
                other => {
                    self.at -= 1;
                    Err(self.error(format!(
                        "unknown variant `{other}` (expected aut, q_aut, a_u, a_o_new or a_o_old)"
                    )))
                }
            },
            other => {
                self.at -= 1;
                Err(self.error(format!("expected a variant name, found {other:?}")))
            }
        }
    }

    fn input(&mut self) -> Result<DslSpec, Error> {
        let mut spec = DslSpec {
            space: None,
            variant: Variant::Aut,
            q: None,
        };
        while let Some(tok) = self.peek() {
            match tok {
                Tok::Ident(k) if k == "space" => {
                    self.at += 1;
                    spec.space = Some(self.space()?);
                }
                Tok::Ident(k) if k == "variant" => {
                    self.at += 1;
                    spec.variant = self.variant()?;
                }
                Tok::Ident(k) if k == "Q" => {
                    self.at += 1;
                    spec.q = Some(self.q_matrix()?);
                }
                other => {
                    return Err(self.error(format!(
                        "expected a statement (`space`, `variant` or `Q`), found {other:?}"
                    )))
                }
            }
            self.expect(Tok::Semi, "`;`")?;
        }
        Ok(spec)
    }
}

/// Parses DSL text into a spec; errors carry 1-based line/column positions.
pub fn parse_dsl(text: &str) -> Result<DslSpec, Error> {
    let toks = Lexer::new(text).tokens()?;
    Parser { toks, at: 0 }.input()
}
