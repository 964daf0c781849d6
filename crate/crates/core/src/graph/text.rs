//! Line format: `n u-v u-v ...`, edges rendered sorted with `u <= v`.

use std::fmt;

use super::Graph;
use crate::error::{Error, Result};

/// Parses the single-line graph format, e.g. `4 0-1 1-2 2-3 0-3` for `C4`.
pub fn parse_graph(text: &str) -> Result<Graph> {
    let mut tokens = tokenize(text);
    let Some((pos, first)) = tokens.next() else {
        return Err(Error::Syntax {
            pos: 0,
            msg: "expected vertex count".into(),
        });
    };
    let n: usize = parse_number(first, pos)?;
    let mut g = Graph::empty(n);
    for (pos, tok) in tokens {
        let Some((a, b)) = tok.split_once('-') else {
            return Err(Error::Syntax {
                pos,
                msg: format!("expected an edge `u-v`, found `{tok}`"),
            });
        };
        let u = parse_number(a, pos)?;
        let v = parse_number(b, pos + a.len() + 1)?;
        if u > v {
            return Err(Error::Syntax {
                pos,
                msg: format!("edge endpoints must satisfy u <= v, found `{tok}`"),
            });
        }
        g.try_add_edge(u, v)?;
    }
    Ok(g)
}

fn tokenize(text: &str) -> impl Iterator<Item = (usize, &str)> {
    let mut rest = text;
    let mut offset = 0;
    std::iter::from_fn(move || {
        let trimmed = rest.trim_start();
        offset += rest.len() - trimmed.len();
        if trimmed.is_empty() {
            return None;
        }
        let end = trimmed.find(char::is_whitespace).unwrap_or(trimmed.len());
        let tok = &trimmed[..end];
        let pos = offset;
        offset += end;
        rest = &trimmed[end..];
        Some((pos, tok))
    })
}

fn parse_number(s: &str, pos: usize) -> Result<usize> {
    if s.is_empty() || !s.bytes().all(|b| b.is_ascii_digit()) {
        return Err(Error::Syntax {
            pos,
            msg: format!("expected a decimal number, found `{s}`"),
        });
    }
    s.parse().map_err(|_| Error::Syntax {
        pos,
        msg: format!("number `{s}` out of range"),
    })
}

impl fmt::Display for Graph {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.n())?;
        for (u, v) in self.edges() {
            write!(f, " {u}-{v}")?;
        }
        Ok(())
    }
}
