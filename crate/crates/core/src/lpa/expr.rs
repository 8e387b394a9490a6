//! Expression grammar for elements:
//!
//! ```text
//! expr    := ['-'] term (('+' | '-') term)*
//! term    := factor (['.'] factor)*
//! factor  := primary '*'*
//! primary := name | `quoted name` | [ring literal] | '(' expr ')'
//! ```
//!
//! A name resolves to a vertex, then an arrow, then a ring value (`3`, `1/2`).
//! Names that are not plain identifiers, such as `(f·g)·h`, go in backticks.

use std::sync::Arc;

use super::{Element, LpaError};
use crate::digraph::Digraph;
use crate::ring::Ring;

#[derive(Debug, Clone, PartialEq)]
enum Token {
    Name(String),
    Literal(String),
    Plus,
    Minus,
    Star,
    Dot,
    Open,
    Close,
}

fn is_name_char(c: char) -> bool {
    c.is_alphanumeric() || matches!(c, '_' | '/' | '\'' | '·')
}

fn tokenize(text: &str) -> Result<Vec<(usize, Token)>, LpaError> {
    let mut tokens = Vec::new();
    let mut chars = text.char_indices().peekable();
    while let Some(&(pos, c)) = chars.peek() {
        let single = match c {
            '+' => Some(Token::Plus),
            '-' => Some(Token::Minus),
            '*' => Some(Token::Star),
            '.' => Some(Token::Dot),
            '(' => Some(Token::Open),
            ')' => Some(Token::Close),
            _ => None,
        };
        if let Some(t) = single {
            chars.next();
            tokens.push((pos, t));
            continue;
        }
        if c.is_whitespace() {
            chars.next();
            continue;
        }
        if c == '[' || c == '`' {
            let close = if c == '[' { ']' } else { '`' };
            chars.next();
            let mut body = String::new();
            loop {
                match chars.next() {
                    Some((_, ch)) if ch == close => break,
                    Some((_, ch)) => body.push(ch),
                    None => {
                        return Err(LpaError::Parse {
                            position: pos,
                            message: format!("missing closing {close:?}"),
                        })
                    }
                }
            }
            tokens.push((pos, if c == '[' { Token::Literal(body) } else { Token::Name(body) }));
            continue;
        }
        if is_name_char(c) {
            let mut name = String::new();
            while let Some(&(_, ch)) = chars.peek() {
                if !is_name_char(ch) {
                    break;
                }
                name.push(ch);
                chars.next();
            }
            tokens.push((pos, Token::Name(name)));
            continue;
        }
        return Err(LpaError::Parse {
            position: pos,
            message: format!("unexpected character {c:?}"),
        });
    }
    Ok(tokens)
}

struct Parser<'a> {
    graph: &'a Arc<Digraph>,
    ring: Ring,
    tokens: Vec<(usize, Token)>,
    at: usize,
    end: usize,
}

impl Parser<'_> {
    fn peek(&self) -> Option<&Token> {
        self.tokens.get(self.at).map(|(_, t)| t)
    }

    fn position(&self) -> usize {
        self.tokens.get(self.at).map_or(self.end, |(p, _)| *p)
    }

    fn error(&self, message: impl Into<String>) -> LpaError {
        LpaError::Parse {
            position: self.position(),
            message: message.into(),
        }
    }

    fn expr(&mut self) -> Result<Element, LpaError> {
        let negate = if self.peek() == Some(&Token::Minus) {
            self.at += 1;
            true
        } else {
            false
        };
        let mut acc = self.term()?;
        if negate {
            acc = acc.neg();
        }
        loop {
            match self.peek() {
                Some(Token::Plus) => {
                    self.at += 1;
                    acc = acc.add(&self.term()?)?;
                }
                Some(Token::Minus) => {
                    self.at += 1;
                    acc = acc.sub(&self.term()?)?;
                }
                _ => return Ok(acc),
            }
        }
    }

    fn term(&mut self) -> Result<Element, LpaError> {
        let mut acc = self.factor()?;
        loop {
            match self.peek() {
                Some(Token::Dot) => {
                    self.at += 1;
                    acc = acc.mul(&self.factor()?)?;
                }
                Some(Token::Name(_) | Token::Literal(_) | Token::Open) => {
                    acc = acc.mul(&self.factor()?)?;
                }
                _ => return Ok(acc),
            }
        }
    }

    fn factor(&mut self) -> Result<Element, LpaError> {
        let mut a = self.primary()?;
        while self.peek() == Some(&Token::Star) {
            self.at += 1;
            a = a.star();
        }
        Ok(a)
    }

    fn primary(&mut self) -> Result<Element, LpaError> {
        let token = self.peek().cloned().ok_or_else(|| self.error("unexpected end of expression"))?;
        match token {
            Token::Open => {
                self.at += 1;
                let inner = self.expr()?;
                if self.peek() != Some(&Token::Close) {
                    return Err(self.error("expected ')'"));
                }
                self.at += 1;
                Ok(inner)
            }
            Token::Literal(text) => {
                let value = self.ring.parse_value(&text).map_err(|e| self.error(e.to_string()))?;
                self.at += 1;
                Ok(Element::scalar(self.graph, value))
            }
            Token::Name(name) => {
                let g = self.graph;
                let element = if let Ok(v) = g.vertex_id(&name) {
                    Element::vertex(g, self.ring, v)
                } else if let Ok(e) = g.arrow_id(&name) {
                    Element::arrow(g, self.ring, e)
                } else if let Ok(value) = self.ring.parse_value(&name) {
                    Element::scalar(g, value)
                } else {
                    return Err(self.error(format!("{name:?} is neither a vertex, an arrow nor a number")));
                };
                self.at += 1;
                Ok(element)
            }
            other => Err(self.error(format!("unexpected {other:?}"))),
        }
    }
}

/// Parses an element expression over `graph` with coefficients in `ring`.
pub fn parse_element(graph: &Arc<Digraph>, ring: Ring, text: &str) -> Result<Element, LpaError> {
    let mut parser = Parser {
        graph,
        ring,
        tokens: tokenize(text)?,
        at: 0,
        end: text.len(),
    };
    let element = parser.expr()?;
    if parser.at != parser.tokens.len() {
        return Err(parser.error("trailing input"));
    }
    Ok(element)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::families;

    fn parse(g: &Arc<Digraph>, text: &str) -> String {
        parse_element(g, Ring::Rationals, text).unwrap().to_string()
    }

    #[test]
    fn atoms_and_products() {
        let g = Arc::new(families::toeplitz());
        assert_eq!(parse(&g, "e"), "e");
        assert_eq!(parse(&g, "e*"), "e*");
        assert_eq!(parse(&g, "e.f"), "e.f");
        assert_eq!(parse(&g, "e f"), "e.f");
        assert_eq!(parse(&g, "f* e*"), "f*.e*");
        assert_eq!(parse(&g, "(e f)*"), "f*.e*");
        assert_eq!(parse(&g, "e* f"), "0");
        assert_eq!(parse(&g, "1"), "v + w");
        assert_eq!(parse(&g, "-e + 1/2 f"), "-e + 1/2·f");
        assert_eq!(parse(&g, "2(e - e)"), "0");
    }

    #[test]
    fn literals_and_quoted_names() {
        let g = Arc::new(Digraph::parse("vertex a\nvertex b\narrow f·g a b\n").unwrap());
        assert_eq!(parse(&g, "`f·g`"), "f·g");
        assert_eq!(parse(&g, "f·g*"), "f·g*");
        let laurent = parse_element(&g, Ring::Laurent, "[x + x^-1] a").unwrap();
        assert_eq!(laurent.to_string(), "(x^-1 + x)·a");
    }

    #[test]
    fn errors_carry_positions() {
        let g = Arc::new(families::toeplitz());
        for bad in ["e +", "(e", "e )", "q", "e $", "[1"] {
            assert!(matches!(
                parse_element(&g, Ring::Rationals, bad),
                Err(LpaError::Parse { .. })
            ), "{bad}");
        }
    }
}
