//! Grammar, loosest binding first:
//!
//! ```text
//! formula := conj ("or" conj)*
//! conj    := unary ("and" unary)*
//! unary   := "not" unary | quant | atom
//! quant   := ("exists" | "exists>=" NUM | "forall") IDENT "." formula
//! atom    := "bot" | "top" | "E(" IDENT "," IDENT ")"
//!          | IDENT "=" IDENT | IDENT "!=" IDENT | "(" formula ")"
//! ```
//!
//! Identifiers match `[a-z][a-z0-9]*` and may not be keywords.

use super::Formula;
use crate::error::{Error, Result};

const KEYWORDS: [&str; 7] = ["bot", "top", "not", "and", "or", "exists", "forall"];

#[derive(Clone, Debug, PartialEq, Eq)]
enum Tok {
    Ident(String),
    Num(usize),
    Rel,
    LParen,
    RParen,
    Comma,
    Dot,
    Eq,
    Neq,
    Geq,
}

fn lex(text: &str) -> Result<Vec<(usize, Tok)>> {
    let bytes = text.as_bytes();
    let mut out = Vec::new();
    let mut i = 0;
    while i < bytes.len() {
        let c = bytes[i];
        let start = i;
        let tok = match c {
            b' ' | b'\t' | b'\r' | b'\n' => {
                i += 1;
                continue;
            }
            b'(' => Tok::LParen,
            b')' => Tok::RParen,
            b',' => Tok::Comma,
            b'.' => Tok::Dot,
            b'=' => Tok::Eq,
            b'E' => Tok::Rel,
            b'!' | b'>' => {
                if bytes.get(i + 1) != Some(&b'=') {
                    return Err(Error::Syntax {
                        pos: i,
                        msg: format!("expected `{}=`", c as char),
                    });
                }
                i += 1;
                if c == b'!' {
                    Tok::Neq
                } else {
                    Tok::Geq
                }
            }
            b'0'..=b'9' => {
                while i + 1 < bytes.len() && bytes[i + 1].is_ascii_digit() {
                    i += 1;
                }
                let n = text[start..=i].parse().map_err(|_| Error::Syntax {
                    pos: start,
                    msg: "number too large".into(),
                })?;
                Tok::Num(n)
            }
            b'a'..=b'z' => {
                while i + 1 < bytes.len() && (bytes[i + 1].is_ascii_lowercase() || bytes[i + 1].is_ascii_digit()) {
                    i += 1;
                }
                Tok::Ident(text[start..=i].to_string())
            }
            _ => {
                return Err(Error::Syntax {
                    pos: i,
                    msg: format!("unexpected character `{}`", text[i..].chars().next().unwrap_or('?')),
                })
            }
        };
        out.push((start, tok));
        i += 1;
    }
    Ok(out)
}

struct Parser {
    toks: Vec<(usize, Tok)>,
    at: usize,
    end: usize,
}

impl Parser {
    fn pos(&self) -> usize {
        self.toks.get(self.at).map_or(self.end, |t| t.0)
    }

    fn peek(&self) -> Option<&Tok> {
        self.toks.get(self.at).map(|t| &t.1)
    }

    fn err<T>(&self, msg: impl Into<String>) -> Result<T> {
        Err(Error::Syntax {
            pos: self.pos(),
            msg: msg.into(),
        })
    }

    fn keyword(&mut self, kw: &str) -> bool {
        if matches!(self.peek(), Some(Tok::Ident(s)) if s == kw) {
            self.at += 1;
            true
        } else {
            false
        }
    }

    fn expect(&mut self, tok: Tok, what: &str) -> Result<()> {
        if self.peek() == Some(&tok) {
            self.at += 1;
            Ok(())
        } else {
            self.err(format!("expected {what}"))
        }
    }

    fn variable(&mut self) -> Result<String> {
        match self.peek() {
            Some(Tok::Ident(s)) if !KEYWORDS.contains(&s.as_str()) => {
                let s = s.clone();
                self.at += 1;
                Ok(s)
            }
            _ => self.err("expected a variable"),
        }
    }

    fn formula(&mut self) -> Result<Formula> {
        let mut phi = self.conj()?;
        while self.keyword("or") {
            phi = Formula::or(phi, self.conj()?);
        }
        Ok(phi)
    }

    fn conj(&mut self) -> Result<Formula> {
        let mut phi = self.unary()?;
        while self.keyword("and") {
            phi = Formula::and(phi, self.unary()?);
        }
        Ok(phi)
    }

    fn unary(&mut self) -> Result<Formula> {
        if self.keyword("not") {
            return Ok(Formula::not(self.unary()?));
        }
        if self.keyword("forall") {
            let x = self.variable()?;
            self.expect(Tok::Dot, "`.`")?;
            return Ok(Formula::Forall(x, Box::new(self.formula()?)));
        }
        if self.keyword("exists") {
            let mut count = None;
            if self.peek() == Some(&Tok::Geq) {
                self.at += 1;
                match self.peek() {
                    Some(&Tok::Num(k)) if k >= 1 => {
                        self.at += 1;
                        count = Some(k);
                    }
                    _ => return self.err("expected a positive count"),
                }
            }
            let x = self.variable()?;
            self.expect(Tok::Dot, "`.`")?;
            let body = Box::new(self.formula()?);
            return Ok(match count {
                Some(k) => Formula::CountExists(k, x, body),
                None => Formula::Exists(x, body),
            });
        }
        self.atom()
    }

    fn atom(&mut self) -> Result<Formula> {
        if self.keyword("bot") {
            return Ok(Formula::Bottom);
        }
        if self.keyword("top") {
            return Ok(Formula::Top);
        }
        match self.peek() {
            Some(Tok::Rel) => {
                self.at += 1;
                self.expect(Tok::LParen, "`(`")?;
                let x = self.variable()?;
                self.expect(Tok::Comma, "`,`")?;
                let y = self.variable()?;
                self.expect(Tok::RParen, "`)`")?;
                Ok(Formula::Edge(x, y))
            }
            Some(Tok::LParen) => {
                self.at += 1;
                let phi = self.formula()?;
                self.expect(Tok::RParen, "`)`")?;
                Ok(phi)
            }
            Some(Tok::Ident(_)) => {
                let x = self.variable()?;
                let negated = match self.peek() {
                    Some(Tok::Eq) => false,
                    Some(Tok::Neq) => true,
                    _ => return self.err("expected `=` or `!=`"),
                };
                self.at += 1;
                let eq = Formula::Eq(x, self.variable()?);
                Ok(if negated { Formula::not(eq) } else { eq })
            }
            _ => self.err("expected a formula"),
        }
    }
}

pub fn parse_formula(text: &str) -> Result<Formula> {
    let mut p = Parser {
        toks: lex(text)?,
        at: 0,
        end: text.len(),
    };
    let phi = p.formula()?;
    if p.at < p.toks.len() {
        return p.err("unexpected trailing input");
    }
    Ok(phi)
}

/// One formula per line; blank lines and lines starting with `#` are skipped.
/// Error positions are byte offsets into the whole text.
pub fn parse_corpus(text: &str) -> Result<Vec<Formula>> {
    let mut out = Vec::new();
    let mut offset = 0;
    for line in text.split_inclusive('\n') {
        let body = line.trim_end_matches(['\n', '\r']);
        let trimmed = body.trim();
        if !trimmed.is_empty() && !trimmed.starts_with('#') {
            out.push(parse_formula(body).map_err(|e| match e {
                Error::Syntax { pos, msg } => Error::Syntax { pos: pos + offset, msg },
                e => e,
            })?);
        }
        offset += line.len();
    }
    Ok(out)
}
