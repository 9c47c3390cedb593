//! Graph-expression language.
//!
//! ```text
//! expr   := family | "blowup(" int "," expr ")" | "cone(" expr ")"
//!         | "cartesian(" expr "," expr ")" | "edges(" path ")"
//! family := name "(" int { "," int } ")"
//! ```
//!
//! Whitespace is ignored between tokens. Parameter bounds are checked while
//! parsing, and every error carries the byte offset where it was detected.

use std::fmt;

use crate::error::{Error, Result};
use crate::graph::{blow_up, cartesian_product, cone, parse_edge_list, Family, Graph};

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub enum GraphExpr {
    Family(Family),
    Blowup(usize, Box<GraphExpr>),
    Cone(Box<GraphExpr>),
    Cartesian(Box<GraphExpr>, Box<GraphExpr>),
    Edges(String),
}

impl GraphExpr {
    pub fn family(f: Family) -> GraphExpr {
        GraphExpr::Family(f)
    }

    pub fn blowup(n: usize, inner: GraphExpr) -> GraphExpr {
        GraphExpr::Blowup(n, Box::new(inner))
    }

    pub fn cone(inner: GraphExpr) -> GraphExpr {
        GraphExpr::Cone(Box::new(inner))
    }

    pub fn cartesian(a: GraphExpr, b: GraphExpr) -> GraphExpr {
        GraphExpr::Cartesian(Box::new(a), Box::new(b))
    }

    pub fn parse(text: &str) -> Result<GraphExpr> {
        let mut p = Parser { src: text, pos: 0 };
        let e = p.expr()?;
        p.skip_ws();
        if p.pos != text.len() {
            return Err(p.error("expected end of input"));
        }
        Ok(e)
    }

    /// Builds the graph. `edges(...)` reads the file from disk.
    pub fn build(&self) -> Result<Graph> {
        match self {
            GraphExpr::Family(f) => f.build(),
            GraphExpr::Blowup(n, inner) => blow_up(&inner.build()?, *n),
            GraphExpr::Cone(inner) => Ok(cone(&inner.build()?)),
            GraphExpr::Cartesian(a, b) => Ok(cartesian_product(&a.build()?, &b.build()?)),
            GraphExpr::Edges(path) => {
                let text = std::fs::read_to_string(path)
                    .map_err(|e| Error::Io(format!("{path}: {e}")))?;
                parse_edge_list(&text)
            }
        }
    }
}

impl fmt::Display for GraphExpr {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            GraphExpr::Family(fam) => write!(f, "{fam}"),
            GraphExpr::Blowup(n, inner) => write!(f, "blowup({n},{inner})"),
            GraphExpr::Cone(inner) => write!(f, "cone({inner})"),
            GraphExpr::Cartesian(a, b) => write!(f, "cartesian({a},{b})"),
            GraphExpr::Edges(path) => write!(f, "edges({path})"),
        }
    }
}

struct Parser<'a> {
    src: &'a str,
    pos: usize,
}

impl<'a> Parser<'a> {
    fn error(&self, message: impl Into<String>) -> Error {
        Error::Parse {
            offset: self.pos,
            message: message.into(),
        }
    }

    fn skip_ws(&mut self) {
        let rest = &self.src[self.pos..];
        self.pos += rest.len() - rest.trim_start().len();
    }

    fn peek(&mut self) -> Option<char> {
        self.skip_ws();
        self.src[self.pos..].chars().next()
    }

    fn expect(&mut self, c: char) -> Result<()> {
        if self.peek() == Some(c) {
            self.pos += c.len_utf8();
            Ok(())
        } else {
            Err(self.error(format!("expected `{c}`")))
        }
    }

    fn ident(&mut self) -> Result<(usize, &'a str)> {
        self.skip_ws();
        let start = self.pos;
        let len = self.src[start..]
            .find(|c: char| !(c.is_ascii_alphanumeric() || c == '_'))
            .unwrap_or(self.src.len() - start);
        if len == 0 {
            return Err(self.error("expected a constructor or family name"));
        }
        self.pos += len;
        Ok((start, &self.src[start..start + len]))
    }

    fn int(&mut self) -> Result<(usize, usize)> {
        self.skip_ws();
        let start = self.pos;
        let len = self.src[start..]
            .find(|c: char| !c.is_ascii_digit())
            .unwrap_or(self.src.len() - start);
        if len == 0 {
            return Err(self.error("expected an integer"));
        }
        self.pos += len;
        let value = self.src[start..start + len].parse().map_err(|_| Error::Parse {
            offset: start,
            message: "integer too large".into(),
        })?;
        Ok((start, value))
    }

    fn expr(&mut self) -> Result<GraphExpr> {
        let (start, name) = self.ident()?;
        self.expect('(')?;
        let e = match name {
            "blowup" => {
                let (at, n) = self.int()?;
                if n == 0 {
                    return Err(Error::Parameter(format!(
                        "blowup copies at byte {at}: n ≥ 1 required"
                    )));
                }
                self.expect(',')?;
                GraphExpr::blowup(n, self.expr()?)
            }
            "cone" => GraphExpr::cone(self.expr()?),
            "cartesian" => {
                let a = self.expr()?;
                self.expect(',')?;
                GraphExpr::cartesian(a, self.expr()?)
            }
            "edges" => {
                self.skip_ws();
                let rest = &self.src[self.pos..];
                let close = rest.find(')').ok_or_else(|| self.error("unterminated edges(...)"))?;
                let path = rest[..close].trim().trim_matches('"').to_string();
                if path.is_empty() {
                    return Err(self.error("expected a file path"));
                }
                self.pos += close;
                GraphExpr::Edges(path)
            }
            _ => {
                let mut params = vec![self.int()?.1];
                while self.peek() == Some(',') {
                    self.pos += 1;
                    params.push(self.int()?.1);
                }
                match Family::from_name(name, &params) {
                    Ok(f) => GraphExpr::Family(f),
                    Err(Error::Unsupported(msg)) => {
                        return Err(Error::Parse {
                            offset: start,
                            message: msg,
                        })
                    }
                    Err(e) => return Err(e),
                }
            }
        };
        self.expect(')')?;
        Ok(e)
    }
}
