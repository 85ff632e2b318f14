//! Text syntax for alphabets, expressions and trees.
//!
//! ```text
//! alphabet := (NAME ':' ARITY)*               whitespace separated
//! expr     := prod ('+' prod)*
//! prod     := post ('.' '[' CONST ']' post)*
//! post     := atom ('*' '[' CONST ']')*
//! atom     := CONST | SYMBOL '(' expr (',' expr)* ')' | '(' expr ')' | '0'
//! tree     := CONST | SYMBOL '(' tree (',' tree)* ')'
//! ```
//!
//! Names match `[a-zA-Z][a-zA-Z0-9_]*`. A non-constant symbol may carry a
//! mark written `f@3`. Error positions are byte offsets into the input.

use thiserror::Error;

use super::{Letter, RankedAlphabet, RegExpr, Tree};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ParseError {
    #[error("syntax error at offset {pos}: {message}")]
    Syntax { pos: usize, message: String },
    #[error("duplicate symbol `{name}` at offset {pos}")]
    DuplicateSymbol { pos: usize, name: String },
    #[error("negative arity for `{name}` at offset {pos}")]
    NegativeArity { pos: usize, name: String },
    #[error("unknown symbol `{name}` at offset {pos}")]
    UnknownSymbol { pos: usize, name: String },
    #[error("`{name}` at offset {pos} expects {expected} argument(s), found {found}")]
    ArityMismatch {
        pos: usize,
        name: String,
        expected: usize,
        found: usize,
    },
    #[error("subscript `{name}` at offset {pos} is not a constant")]
    NotAConstant { pos: usize, name: String },
    #[error("`0` at offset {pos} occurs inside a larger expression")]
    InnerZero { pos: usize },
}

impl ParseError {
    pub fn pos(&self) -> usize {
        match self {
            ParseError::Syntax { pos, .. }
            | ParseError::DuplicateSymbol { pos, .. }
            | ParseError::NegativeArity { pos, .. }
            | ParseError::UnknownSymbol { pos, .. }
            | ParseError::ArityMismatch { pos, .. }
            | ParseError::NotAConstant { pos, .. }
            | ParseError::InnerZero { pos } => *pos,
        }
    }
}

fn syntax(pos: usize, message: impl Into<String>) -> ParseError {
    ParseError::Syntax {
        pos,
        message: message.into(),
    }
}

fn is_name(s: &str) -> bool {
    let mut chars = s.chars();
    matches!(chars.next(), Some(c) if c.is_ascii_alphabetic())
        && chars.all(|c| c.is_ascii_alphanumeric() || c == '_')
}

/// Parses whitespace-separated `name:arity` declarations.
pub fn parse_alphabet(text: &str) -> Result<RankedAlphabet, ParseError> {
    let mut sigma = RankedAlphabet::new();
    let mut offset = 0;
    for chunk in text.split_inclusive(char::is_whitespace) {
        let pos = offset;
        offset += chunk.len();
        let decl = chunk.trim();
        if decl.is_empty() {
            continue;
        }
        let (name, arity) = decl
            .split_once(':')
            .ok_or_else(|| syntax(pos, format!("expected `name:arity`, found `{decl}`")))?;
        if !is_name(name) {
            return Err(syntax(pos, format!("invalid symbol name `{name}`")));
        }
        let arity: i64 = arity
            .parse()
            .map_err(|_| syntax(pos + name.len() + 1, format!("invalid arity `{arity}`")))?;
        if arity < 0 {
            return Err(ParseError::NegativeArity {
                pos,
                name: name.to_string(),
            });
        }
        if !sigma.insert(name, arity as usize) {
            return Err(ParseError::DuplicateSymbol {
                pos,
                name: name.to_string(),
            });
        }
    }
    Ok(sigma)
}

#[derive(Debug, Clone, PartialEq)]
enum Tok {
    Name(String, Option<u32>),
    Zero,
    LParen,
    RParen,
    LBracket,
    RBracket,
    Comma,
    Plus,
    Dot,
    Star,
    End,
}

fn tokenize(text: &str) -> Result<Vec<(Tok, usize)>, ParseError> {
    let bytes = text.as_bytes();
    let mut out = Vec::new();
    let mut i = 0;
    while i < bytes.len() {
        let c = bytes[i] as char;
        let start = i;
        let tok = match c {
            _ if c.is_whitespace() => {
                i += 1;
                continue;
            }
            '(' => Tok::LParen,
            ')' => Tok::RParen,
            '[' => Tok::LBracket,
            ']' => Tok::RBracket,
            ',' => Tok::Comma,
            '+' => Tok::Plus,
            '.' => Tok::Dot,
            '*' => Tok::Star,
            '0' => Tok::Zero,
            _ if c.is_ascii_alphabetic() => {
                while i < bytes.len() && (bytes[i].is_ascii_alphanumeric() || bytes[i] == b'_') {
                    i += 1;
                }
                let name = text[start..i].to_string();
                let mut mark = None;
                if i < bytes.len() && bytes[i] == b'@' {
                    let mstart = i + 1;
                    let mut j = mstart;
                    while j < bytes.len() && bytes[j].is_ascii_digit() {
                        j += 1;
                    }
                    let m: u32 = text[mstart..j]
                        .parse()
                        .ok()
                        .filter(|&m| m > 0)
                        .ok_or_else(|| syntax(i, "expected a positive mark after `@`"))?;
                    mark = Some(m);
                    i = j;
                }
                out.push((Tok::Name(name, mark), start));
                continue;
            }
            _ => return Err(syntax(i, format!("unexpected character `{c}`"))),
        };
        out.push((tok, start));
        i += 1;
    }
    out.push((Tok::End, text.len()));
    Ok(out)
}

struct Parser<'a> {
    toks: Vec<(Tok, usize)>,
    at: usize,
    sigma: &'a RankedAlphabet,
    zeros: Vec<usize>,
}

impl<'a> Parser<'a> {
    fn peek(&self) -> &Tok {
        &self.toks[self.at].0
    }

    fn pos(&self) -> usize {
        self.toks[self.at].1
    }

    fn bump(&mut self) -> (Tok, usize) {
        let t = self.toks[self.at].clone();
        if self.at + 1 < self.toks.len() {
            self.at += 1;
        }
        t
    }

    fn expect(&mut self, tok: Tok, what: &str) -> Result<(), ParseError> {
        if *self.peek() == tok {
            self.bump();
            Ok(())
        } else {
            Err(syntax(self.pos(), format!("expected {what}")))
        }
    }

    fn subscript(&mut self) -> Result<String, ParseError> {
        self.expect(Tok::LBracket, "`[`")?;
        let (tok, pos) = self.bump();
        let name = match tok {
            Tok::Name(name, None) => name,
            _ => return Err(syntax(pos, "expected a constant subscript")),
        };
        match self.sigma.arity(&name) {
            None => return Err(ParseError::UnknownSymbol { pos, name }),
            Some(0) => {}
            Some(_) => return Err(ParseError::NotAConstant { pos, name }),
        }
        self.expect(Tok::RBracket, "`]`")?;
        Ok(name)
    }

    fn expr(&mut self) -> Result<RegExpr, ParseError> {
        let mut lhs = self.prod()?;
        while *self.peek() == Tok::Plus {
            self.bump();
            let rhs = self.prod()?;
            lhs = RegExpr::sum(lhs, rhs);
        }
        Ok(lhs)
    }

    fn prod(&mut self) -> Result<RegExpr, ParseError> {
        let mut lhs = self.post()?;
        while *self.peek() == Tok::Dot {
            self.bump();
            let c = self.subscript()?;
            let rhs = self.post()?;
            // no reduction here: a literal 0 operand is reported as an inner zero
            lhs = RegExpr::Product(Box::new(lhs), c, Box::new(rhs));
        }
        Ok(lhs)
    }

    fn post(&mut self) -> Result<RegExpr, ParseError> {
        let mut e = self.atom()?;
        while *self.peek() == Tok::Star {
            self.bump();
            let c = self.subscript()?;
            e = RegExpr::closure(e, c);
        }
        Ok(e)
    }

    fn atom(&mut self) -> Result<RegExpr, ParseError> {
        let (tok, pos) = self.bump();
        match tok {
            Tok::Zero => {
                self.zeros.push(pos);
                Ok(RegExpr::Zero)
            }
            Tok::LParen => {
                let e = self.expr()?;
                self.expect(Tok::RParen, "`)`")?;
                Ok(e)
            }
            Tok::Name(name, mark) => {
                let arity = self
                    .sigma
                    .arity(&name)
                    .ok_or_else(|| ParseError::UnknownSymbol {
                        pos,
                        name: name.clone(),
                    })?;
                let mut args = Vec::new();
                if *self.peek() == Tok::LParen {
                    self.bump();
                    args.push(self.expr()?);
                    while *self.peek() == Tok::Comma {
                        self.bump();
                        args.push(self.expr()?);
                    }
                    self.expect(Tok::RParen, "`)` or `,`")?;
                }
                if args.len() != arity {
                    return Err(ParseError::ArityMismatch {
                        pos,
                        name,
                        expected: arity,
                        found: args.len(),
                    });
                }
                if arity == 0 {
                    if mark.is_some() {
                        return Err(syntax(pos, "constants cannot be marked"));
                    }
                    Ok(RegExpr::Const(name))
                } else {
                    Ok(RegExpr::Apply {
                        symbol: Letter { name, mark },
                        args,
                    })
                }
            }
            _ => Err(syntax(pos, "expected an expression")),
        }
    }
}

/// Parses an expression against `sigma`.
pub fn parse_expr(text: &str, sigma: &RankedAlphabet) -> Result<RegExpr, ParseError> {
    let mut p = Parser {
        toks: tokenize(text)?,
        at: 0,
        sigma,
        zeros: Vec::new(),
    };
    let e = p.expr()?;
    if *p.peek() != Tok::End {
        return Err(syntax(p.pos(), "unexpected trailing input"));
    }
    if !e.is_zero() {
        if let Some(&pos) = p.zeros.first() {
            return Err(ParseError::InnerZero { pos });
        }
    }
    Ok(e)
}

/// Parses a tree literal such as `g(f(b),a)` against `sigma`.
pub fn parse_tree(text: &str, sigma: &RankedAlphabet) -> Result<Tree, ParseError> {
    fn tree(p: &mut Parser<'_>) -> Result<Tree, ParseError> {
        let (tok, pos) = p.bump();
        let (name, mark) = match tok {
            Tok::Name(name, mark) => (name, mark),
            _ => return Err(syntax(pos, "expected a symbol")),
        };
        let arity = p.sigma.arity(&name).ok_or_else(|| ParseError::UnknownSymbol {
            pos,
            name: name.clone(),
        })?;
        let mut children = Vec::new();
        if *p.peek() == Tok::LParen {
            p.bump();
            children.push(tree(p)?);
            while *p.peek() == Tok::Comma {
                p.bump();
                children.push(tree(p)?);
            }
            p.expect(Tok::RParen, "`)` or `,`")?;
        }
        if children.len() != arity {
            return Err(ParseError::ArityMismatch {
                pos,
                name,
                expected: arity,
                found: children.len(),
            });
        }
        Ok(Tree {
            label: Letter { name, mark },
            children,
        })
    }
    let mut p = Parser {
        toks: tokenize(text)?,
        at: 0,
        sigma,
        zeros: Vec::new(),
    };
    let t = tree(&mut p)?;
    if *p.peek() != Tok::End {
        return Err(syntax(p.pos(), "unexpected trailing input"));
    }
    Ok(t)
}
