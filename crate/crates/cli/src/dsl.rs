//! Structure-spec language.
//!
//! ```text
//! spec  := named | chain
//! named := NAME "(" INT { "," INT } ")" | "MT12U" | "tt"
//! chain := OPNAME "(" chain ")" | SEED
//! NAME  := "M" | "Ulin" | "Ucyc"      OPNAME := "P4" | "TrsC" | "Op"
//! SEED  := "T" | "D"
//! ```
//!
//! Whitespace is ignored between tokens; identifiers are case sensitive.

use std::fmt;

use multitori::assembly::{AssemblyError, StructureParams};
use multitori::mapops::{open_faces, p4_quadrangulate, truncate_vertices, MapOpError, Provenance};
use multitori::polymap::{seed_dodecahedron, seed_tetrahedron, Walk};
use multitori::CombMap;

/// Largest unit count accepted for the cell arrays.
pub const MAX_UNITS: usize = 1000;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Seed {
    Tetrahedron,
    Dodecahedron,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum MapOp {
    P4,
    /// Truncation of the face-center vertices added by the preceding P4.
    TrsC,
    /// Opening of the cap faces added by the preceding truncation.
    Op,
}

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub enum StructureSpec {
    Named(StructureParams),
    /// The bare monomer name.
    Monomer,
    /// Operations listed outermost first, applied to `seed` innermost first.
    Chain {
        ops: Vec<MapOp>,
        seed: Seed,
    },
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ParseErrorKind {
    InvalidCharacter,
    UnexpectedToken,
    UnexpectedEnd,
    UnknownIdentifier,
    ArityMismatch,
    OutOfRange,
    IntegerOverflow,
    TrailingInput,
}

impl ParseErrorKind {
    pub fn code(self) -> &'static str {
        match self {
            ParseErrorKind::InvalidCharacter => "E001",
            ParseErrorKind::UnexpectedToken => "E002",
            ParseErrorKind::UnexpectedEnd => "E003",
            ParseErrorKind::UnknownIdentifier => "E004",
            ParseErrorKind::ArityMismatch => "E005",
            ParseErrorKind::OutOfRange => "E006",
            ParseErrorKind::IntegerOverflow => "E007",
            ParseErrorKind::TrailingInput => "E008",
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ParseError {
    pub kind: ParseErrorKind,
    pub line: usize,
    pub column: usize,
    pub message: String,
}

impl fmt::Display for ParseError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "error[{}] at {}:{}: {}",
            self.kind.code(),
            self.line,
            self.column,
            self.message
        )
    }
}

impl std::error::Error for ParseError {}

#[derive(Debug, Clone, PartialEq, Eq)]
enum Tok {
    Ident(String),
    Int(String),
    LParen,
    RParen,
    Comma,
    End,
}

impl fmt::Display for Tok {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Tok::Ident(s) => write!(f, "identifier `{}`", s),
            Tok::Int(s) => write!(f, "integer `{}`", s),
            Tok::LParen => write!(f, "`(`"),
            Tok::RParen => write!(f, "`)`"),
            Tok::Comma => write!(f, "`,`"),
            Tok::End => write!(f, "end of input"),
        }
    }
}

struct Token {
    tok: Tok,
    line: usize,
    column: usize,
}

fn lex(input: &str) -> Result<Vec<Token>, ParseError> {
    let mut out = Vec::new();
    let (mut line, mut column) = (1, 1);
    let mut chars = input.chars().peekable();
    while let Some(&c) = chars.peek() {
        let (tl, tc) = (line, column);
        if c == '\n' {
            chars.next();
            line += 1;
            column = 1;
            continue;
        }
        if c.is_whitespace() {
            chars.next();
            column += 1;
            continue;
        }
        let tok = if c.is_ascii_alphabetic() {
            let mut s = String::new();
            while let Some(&d) = chars.peek() {
                if !d.is_ascii_alphanumeric() {
                    break;
                }
                s.push(d);
                chars.next();
                column += 1;
            }
            Tok::Ident(s)
        } else if c.is_ascii_digit() {
            let mut s = String::new();
            while let Some(&d) = chars.peek() {
                if !d.is_ascii_digit() {
                    break;
                }
                s.push(d);
                chars.next();
                column += 1;
            }
            Tok::Int(s)
        } else {
            chars.next();
            column += 1;
            match c {
                '(' => Tok::LParen,
                ')' => Tok::RParen,
                ',' => Tok::Comma,
                _ => {
                    return Err(ParseError {
                        kind: ParseErrorKind::InvalidCharacter,
                        line: tl,
                        column: tc,
                        message: format!("unexpected character {:?}", c),
                    })
                }
            }
        };
        out.push(Token {
            tok,
            line: tl,
            column: tc,
        });
    }
    out.push(Token {
        tok: Tok::End,
        line,
        column,
    });
    Ok(out)
}

const KNOWN: &str = "M, Ulin, Ucyc, MT12U, tt, P4, TrsC, Op, T, D";

struct Parser {
    tokens: Vec<Token>,
    pos: usize,
}

impl Parser {
    fn peek(&self) -> &Token {
        &self.tokens[self.pos]
    }

    fn bump(&mut self) -> &Token {
        let t = &self.tokens[self.pos];
        if self.pos + 1 < self.tokens.len() {
            self.pos += 1;
        }
        t
    }

    fn error_at(&self, token: &Token, kind: ParseErrorKind, message: String) -> ParseError {
        ParseError {
            kind,
            line: token.line,
            column: token.column,
            message,
        }
    }

    fn unexpected(&self, expected: &str) -> ParseError {
        let t = self.peek();
        let kind = if t.tok == Tok::End {
            ParseErrorKind::UnexpectedEnd
        } else {
            ParseErrorKind::UnexpectedToken
        };
        self.error_at(t, kind, format!("expected {}, found {}", expected, t.tok))
    }

    fn expect(&mut self, tok: Tok) -> Result<(), ParseError> {
        if self.peek().tok == tok {
            self.bump();
            Ok(())
        } else {
            Err(self.unexpected(&tok.to_string()))
        }
    }

    fn spec(&mut self) -> Result<StructureSpec, ParseError> {
        let start = self.pos;
        let name = match &self.peek().tok {
            Tok::Ident(s) => s.clone(),
            _ => return Err(self.unexpected("a structure name or operation")),
        };
        match name.as_str() {
            "M" | "Ulin" | "Ucyc" => self.named(&name, start),
            "MT12U" | "tt" => {
                self.bump();
                if self.peek().tok == Tok::LParen {
                    let t = self.peek();
                    return Err(self.error_at(
                        t,
                        ParseErrorKind::ArityMismatch,
                        format!("`{}` takes no arguments", name),
                    ));
                }
                Ok(if name == "tt" {
                    StructureSpec::Monomer
                } else {
                    StructureSpec::Named(StructureParams::MT12U)
                })
            }
            "P4" | "TrsC" | "Op" | "T" | "D" => {
                let (ops, seed) = self.chain()?;
                Ok(StructureSpec::Chain { ops, seed })
            }
            _ => {
                let t = self.peek();
                Err(self.error_at(
                    t,
                    ParseErrorKind::UnknownIdentifier,
                    format!("unknown identifier `{}`; expected one of {}", name, KNOWN),
                ))
            }
        }
    }

    fn named(&mut self, name: &str, start: usize) -> Result<StructureSpec, ParseError> {
        self.bump();
        self.expect(Tok::LParen)?;
        let mut args = Vec::new();
        loop {
            let t = self.peek();
            let value = match &t.tok {
                Tok::Int(s) => s.parse::<usize>().map_err(|_| {
                    self.error_at(
                        t,
                        ParseErrorKind::IntegerOverflow,
                        format!("integer `{}` is too large", s),
                    )
                })?,
                _ => return Err(self.unexpected("an integer")),
            };
            args.push(value);
            self.bump();
            match self.peek().tok {
                Tok::Comma => {
                    self.bump();
                }
                Tok::RParen => {
                    self.bump();
                    break;
                }
                _ => return Err(self.unexpected("`,` or `)`")),
            }
        }
        let head = &self.tokens[start];
        let arity = if name == "M" { 2 } else { 1 };
        if args.len() != arity {
            return Err(self.error_at(
                head,
                ParseErrorKind::ArityMismatch,
                format!("`{}` takes {} argument(s), got {}", name, arity, args.len()),
            ));
        }
        let params = match name {
            "M" => StructureParams::Dendrimer {
                m: args[0],
                r: args[1],
            },
            "Ulin" => StructureParams::ULinear { u: args[0] },
            _ => StructureParams::UCyclic { u: args[0] },
        };
        let range_error = |msg: String| self.error_at(head, ParseErrorKind::OutOfRange, msg);
        params.validate().map_err(|e| range_error(e.to_string()))?;
        match params {
            StructureParams::ULinear { u } | StructureParams::UCyclic { u } if u > MAX_UNITS => {
                return Err(range_error(format!(
                    "unit count {} exceeds {}",
                    u, MAX_UNITS
                )))
            }
            _ => {}
        }
        Ok(StructureSpec::Named(params))
    }

    fn chain(&mut self) -> Result<(Vec<MapOp>, Seed), ParseError> {
        let mut ops = Vec::new();
        loop {
            let name = match &self.peek().tok {
                Tok::Ident(s) => s.clone(),
                _ => return Err(self.unexpected("an operation or seed")),
            };
            let op = match name.as_str() {
                "P4" => MapOp::P4,
                "TrsC" => MapOp::TrsC,
                "Op" => MapOp::Op,
                "T" | "D" => {
                    self.bump();
                    for _ in &ops {
                        self.expect(Tok::RParen)?;
                    }
                    let seed = if name == "T" {
                        Seed::Tetrahedron
                    } else {
                        Seed::Dodecahedron
                    };
                    return Ok((ops, seed));
                }
                "M" | "Ulin" | "Ucyc" | "MT12U" | "tt" => {
                    return Err(self.unexpected("an operation (P4, TrsC, Op) or seed (T, D)"))
                }
                _ => {
                    let t = self.peek();
                    return Err(self.error_at(
                        t,
                        ParseErrorKind::UnknownIdentifier,
                        format!(
                            "unknown identifier `{}`; expected one of P4, TrsC, Op, T, D",
                            name
                        ),
                    ));
                }
            };
            self.bump();
            self.expect(Tok::LParen)?;
            ops.push(op);
        }
    }
}

pub fn parse(input: &str) -> Result<StructureSpec, ParseError> {
    let mut p = Parser {
        tokens: lex(input)?,
        pos: 0,
    };
    let spec = p.spec()?;
    if p.peek().tok != Tok::End {
        let t = p.peek();
        return Err(p.error_at(
            t,
            ParseErrorKind::TrailingInput,
            format!("unexpected {} after structure", t.tok),
        ));
    }
    Ok(spec)
}

impl fmt::Display for StructureSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            StructureSpec::Named(p) => write!(f, "{}", p),
            StructureSpec::Monomer => write!(f, "tt"),
            StructureSpec::Chain { ops, seed } => {
                for op in ops {
                    let name = match op {
                        MapOp::P4 => "P4",
                        MapOp::TrsC => "TrsC",
                        MapOp::Op => "Op",
                    };
                    write!(f, "{}(", name)?;
                }
                write!(
                    f,
                    "{}",
                    match seed {
                        Seed::Tetrahedron => "T",
                        Seed::Dodecahedron => "D",
                    }
                )?;
                for _ in ops {
                    write!(f, ")")?;
                }
                Ok(())
            }
        }
    }
}

#[derive(Debug, thiserror::Error)]
pub enum BuildError {
    #[error("{0} needs the output of {1} as its argument")]
    OperationOrder(&'static str, &'static str),
    #[error(transparent)]
    MapOp(#[from] MapOpError),
    #[error(transparent)]
    Assembly(#[from] AssemblyError),
}

impl StructureSpec {
    /// Net parameters when the spec names a structure family member.
    pub fn params(&self) -> Option<StructureParams> {
        match self {
            StructureSpec::Named(p) => Some(*p),
            StructureSpec::Monomer => Some(StructureParams::dendrimer(1)),
            StructureSpec::Chain { .. } => None,
        }
    }

    pub fn build(&self) -> Result<CombMap, BuildError> {
        match self {
            StructureSpec::Named(p) => Ok(p.assemble()?),
            StructureSpec::Monomer => Ok(multitori::build_monomer().map),
            StructureSpec::Chain { ops, seed } => {
                let mut map = match seed {
                    Seed::Tetrahedron => seed_tetrahedron(),
                    Seed::Dodecahedron => seed_dodecahedron(),
                };
                let mut provenance: Option<Vec<Provenance>> = None;
                let mut caps: Option<Vec<Walk>> = None;
                for op in ops.iter().rev() {
                    match op {
                        MapOp::P4 => {
                            let q = p4_quadrangulate(&map)?;
                            map = q.map.clone();
                            provenance = Some(q.provenance.clone());
                            caps = None;
                        }
                        MapOp::TrsC => {
                            let prov = provenance
                                .take()
                                .ok_or(BuildError::OperationOrder("TrsC", "P4"))?;
                            let q = multitori::mapops::Quadrangulation {
                                map: map.clone(),
                                provenance: prov,
                            };
                            let t = truncate_vertices(&map, &q.select(Provenance::FaceCenter))?;
                            map = t.map;
                            caps = Some(t.caps);
                        }
                        MapOp::Op => {
                            let c = caps
                                .take()
                                .ok_or(BuildError::OperationOrder("Op", "TrsC"))?;
                            map = open_faces(&map, &c)?;
                            provenance = None;
                        }
                    }
                }
                Ok(map)
            }
        }
    }
}
