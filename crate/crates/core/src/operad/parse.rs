//! Reading elements written as `c * tree + ...`, e.g. `-1 * mu_2(mu_0, 1)`.

use std::collections::BTreeMap;
use std::sync::Arc;

use super::element::OperadElement;
use super::generator::{Generator, Mode};
use super::tree::Tree;
use crate::error::{Error, Result};
use crate::rational::Rational;

/// Generators by name.
pub type GeneratorTable = BTreeMap<String, Arc<Generator>>;

pub fn table_of<'a>(gens: impl IntoIterator<Item = &'a Arc<Generator>>) -> GeneratorTable {
    gens.into_iter().map(|g| (g.name.clone(), g.clone())).collect()
}

#[derive(Debug, Clone, PartialEq)]
enum Tok {
    Num(String),
    Name(String),
    Plus,
    Minus,
    Star,
    Slash,
    LParen,
    RParen,
    Comma,
}

fn lex(s: &str) -> Result<Vec<Tok>> {
    let mut out = Vec::new();
    let chars: Vec<char> = s.chars().collect();
    let mut i = 0;
    while i < chars.len() {
        let c = chars[i];
        match c {
            ' ' | '\t' | '\n' | '\r' => i += 1,
            '+' => {
                out.push(Tok::Plus);
                i += 1
            }
            '-' => {
                out.push(Tok::Minus);
                i += 1
            }
            '*' => {
                out.push(Tok::Star);
                i += 1
            }
            '/' => {
                out.push(Tok::Slash);
                i += 1
            }
            '(' => {
                out.push(Tok::LParen);
                i += 1
            }
            ')' => {
                out.push(Tok::RParen);
                i += 1
            }
            ',' => {
                out.push(Tok::Comma);
                i += 1
            }
            d if d.is_ascii_digit() => {
                let start = i;
                while i < chars.len() && chars[i].is_ascii_digit() {
                    i += 1;
                }
                out.push(Tok::Num(chars[start..i].iter().collect()));
            }
            a if a.is_alphabetic() || a == '_' => {
                let start = i;
                while i < chars.len() && (chars[i].is_alphanumeric() || chars[i] == '_') {
                    i += 1;
                }
                out.push(Tok::Name(chars[start..i].iter().collect()));
            }
            other => return Err(Error::Parse(format!("unexpected character `{other}`"))),
        }
    }
    Ok(out)
}

struct Parser<'a> {
    toks: Vec<Tok>,
    pos: usize,
    table: &'a GeneratorTable,
}

impl Parser<'_> {
    fn peek(&self) -> Option<&Tok> {
        self.toks.get(self.pos)
    }

    fn peek_at(&self, k: usize) -> Option<&Tok> {
        self.toks.get(self.pos + k)
    }

    fn next(&mut self) -> Option<Tok> {
        let t = self.toks.get(self.pos).cloned();
        self.pos += 1;
        t
    }

    fn expect(&mut self, t: Tok) -> Result<()> {
        match self.next() {
            Some(ref got) if *got == t => Ok(()),
            got => Err(Error::Parse(format!("expected {t:?}, found {got:?}"))),
        }
    }

    fn is_coefficient_ahead(&self) -> bool {
        match (self.peek(), self.peek_at(1), self.peek_at(2), self.peek_at(3)) {
            (Some(Tok::Num(_)), Some(Tok::Star), _, _) => true,
            (Some(Tok::Num(_)), Some(Tok::Slash), Some(Tok::Num(_)), Some(Tok::Star)) => true,
            _ => false,
        }
    }

    fn coefficient(&mut self) -> Result<Rational> {
        let n = match self.next() {
            Some(Tok::Num(n)) => n,
            t => return Err(Error::Parse(format!("expected coefficient, found {t:?}"))),
        };
        let text = if self.peek() == Some(&Tok::Slash) {
            self.next();
            match self.next() {
                Some(Tok::Num(d)) => format!("{n}/{d}"),
                t => return Err(Error::Parse(format!("expected denominator, found {t:?}"))),
            }
        } else {
            n
        };
        self.expect(Tok::Star)?;
        text.parse()
    }

    fn tree(&mut self) -> Result<Tree> {
        match self.next() {
            Some(Tok::Num(n)) => {
                let l: usize = n.parse().map_err(|_| Error::Parse(format!("bad leaf `{n}`")))?;
                if l == 0 {
                    return Err(Error::Parse("leaf labels start at 1".into()));
                }
                Ok(Tree::Leaf(l))
            }
            Some(Tok::Name(name)) => {
                let g = self
                    .table
                    .get(&name)
                    .cloned()
                    .ok_or_else(|| Error::UnknownGenerator(name.clone()))?;
                let mut children = Vec::new();
                if self.peek() == Some(&Tok::LParen) {
                    self.next();
                    loop {
                        children.push(self.tree()?);
                        match self.next() {
                            Some(Tok::Comma) => continue,
                            Some(Tok::RParen) => break,
                            t => return Err(Error::Parse(format!("expected `,` or `)`, found {t:?}"))),
                        }
                    }
                }
                if children.len() != g.arity {
                    return Err(Error::MalformedTree(format!(
                        "`{name}` has arity {} but {} children",
                        g.arity,
                        children.len()
                    )));
                }
                Ok(Tree::Node(g, children))
            }
            t => Err(Error::Parse(format!("expected a tree, found {t:?}"))),
        }
    }
}

/// Parses an element; the zero element `0` gets arity 0 and degree 0.
pub fn parse_element(text: &str, table: &GeneratorTable, mode: Mode) -> Result<OperadElement> {
    let toks = lex(text)?;
    if toks.is_empty() {
        return Err(Error::Parse("empty expression".into()));
    }
    if toks == [Tok::Num("0".into())] {
        return Ok(OperadElement::zero(mode, 0, 0));
    }
    let mut p = Parser { toks, pos: 0, table };
    let mut acc: Option<OperadElement> = None;
    let mut first = true;
    while p.peek().is_some() {
        let mut sign = Rational::one();
        match p.peek() {
            Some(Tok::Plus) if !first => {
                p.next();
            }
            Some(Tok::Minus) => {
                p.next();
                sign = -sign;
            }
            _ if first => {}
            t => return Err(Error::Parse(format!("expected `+` or `-`, found {t:?}"))),
        }
        first = false;
        let c = if p.is_coefficient_ahead() {
            p.coefficient()?
        } else {
            Rational::one()
        };
        let t = p.tree()?;
        let term = OperadElement::from_tree(&t, sign * c, mode)?;
        acc = Some(match acc {
            None => term,
            Some(a) => a.add(&term)?,
        });
    }
    Ok(acc.expect("nonempty"))
}

/// Parses an element that must have the given arity and degree.
pub fn parse_element_as(
    text: &str,
    table: &GeneratorTable,
    mode: Mode,
    arity: usize,
    degree: i64,
) -> Result<OperadElement> {
    let e = parse_element(text, table, mode)?;
    if e.is_zero() && e.arity() == 0 && e.degree() == 0 {
        return Ok(OperadElement::zero(mode, arity, degree));
    }
    if e.arity() != arity {
        return Err(Error::ArityMismatch(arity, e.arity()));
    }
    if !e.is_zero() && e.degree() != degree {
        return Err(Error::DegreeMismatch(degree, e.degree()));
    }
    if e.is_zero() {
        return Ok(OperadElement::zero(mode, arity, degree));
    }
    Ok(e)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn table() -> GeneratorTable {
        let gens = [
            Generator::new("mu_0", 0, -1).shared(),
            Generator::new("mu_2", 2, -1).shared(),
            Generator::new("l_2", 2, -1).invariant().shared(),
            Generator::new("kappa", 0, -1).shared(),
        ];
        table_of(gens.iter())
    }

    #[test]
    fn round_trip() {
        let t = table();
        for s in ["-1 * mu_2(mu_0, 1)", "1 * mu_2(mu_2(1, 2), 3) - 3/2 * mu_2(1, mu_2(2, 3))", "1 * 1"] {
            let e = parse_element(s, &t, Mode::Nonsymmetric).unwrap();
            let printed = e.to_string();
            let again = parse_element(&printed, &t, Mode::Nonsymmetric).unwrap();
            assert_eq!(e, again);
        }
        let e = parse_element("-1 * mu_2(mu_0, 1)", &t, Mode::Nonsymmetric).unwrap();
        assert_eq!(e.to_string(), "-1 * mu_2(mu_0, 1)");
    }

    #[test]
    fn symmetric_input_is_canonicalized() {
        let t = table();
        let e = parse_element("l_2(2, 1)", &t, Mode::Symmetric).unwrap();
        assert_eq!(e.to_string(), "1 * l_2(1, 2)");
        let e = parse_element("l_2(mu_0, kappa)", &t, Mode::Symmetric).unwrap();
        assert_eq!(e.to_string(), "-1 * l_2(kappa, mu_0)");
    }

    #[test]
    fn errors() {
        let t = table();
        assert!(parse_element("nope(1)", &t, Mode::Nonsymmetric).is_err());
        assert!(parse_element("mu_2(1)", &t, Mode::Nonsymmetric).is_err());
        assert!(parse_element("mu_2(2, 1)", &t, Mode::Nonsymmetric).is_err());
        assert!(parse_element("mu_2(1, 2) mu_2(1, 2)", &t, Mode::Nonsymmetric).is_err());
        assert!(parse_element("", &t, Mode::Nonsymmetric).is_err());
        assert!(parse_element("mu_2(1, 2) + mu_0", &t, Mode::Nonsymmetric).is_err());
    }
}
