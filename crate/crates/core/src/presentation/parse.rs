use num_bigint::BigInt;
use num_rational::BigRational;

use super::{Poly, Presentation, Relation};
use crate::error::{Error, Result};
use crate::scalar::Gauss;

#[derive(Debug, Clone, PartialEq)]
enum Tok {
    Num(BigInt),
    Ident(String),
    I,
    Sym(char),
}

fn lex(s: &str) -> std::result::Result<Vec<Tok>, String> {
    let mut out = Vec::new();
    let chars: Vec<char> = s.chars().collect();
    let mut k = 0;
    while k < chars.len() {
        let c = chars[k];
        if c.is_whitespace() {
            k += 1;
        } else if c.is_ascii_digit() {
            let start = k;
            while k < chars.len() && chars[k].is_ascii_digit() {
                k += 1;
            }
            let digits: String = chars[start..k].iter().collect();
            out.push(Tok::Num(digits.parse().map_err(|e| format!("{e}"))?));
        } else if c.is_ascii_alphabetic() || c == '_' {
            let start = k;
            while k < chars.len() && (chars[k].is_ascii_alphanumeric() || chars[k] == '_') {
                k += 1;
            }
            let ident: String = chars[start..k].iter().collect();
            out.push(if ident == "i" { Tok::I } else { Tok::Ident(ident) });
        } else if "+-*/()[]{},=".contains(c) {
            out.push(Tok::Sym(c));
            k += 1;
        } else {
            return Err(format!("unexpected character `{c}`"));
        }
    }
    Ok(out)
}

struct Parser {
    toks: Vec<Tok>,
    pos: usize,
}

impl Parser {
    fn peek(&self) -> Option<&Tok> {
        self.toks.get(self.pos)
    }

    fn eat(&mut self, c: char) -> bool {
        if self.peek() == Some(&Tok::Sym(c)) {
            self.pos += 1;
            true
        } else {
            false
        }
    }

    fn expect(&mut self, c: char) -> std::result::Result<(), String> {
        if self.eat(c) {
            Ok(())
        } else {
            Err(format!("expected `{c}`, found {:?}", self.peek()))
        }
    }

    fn expr(&mut self) -> std::result::Result<Poly, String> {
        let mut acc = if self.eat('-') {
            self.term()?.scale(&Gauss::from(-1))
        } else {
            self.eat('+');
            self.term()?
        };
        loop {
            if self.eat('+') {
                acc = acc.add(&self.term()?);
            } else if self.eat('-') {
                acc = acc.sub(&self.term()?);
            } else {
                return Ok(acc);
            }
        }
    }

    fn term(&mut self) -> std::result::Result<Poly, String> {
        let mut acc = self.factor()?;
        while self.eat('*') {
            acc = acc.mul(&self.factor()?);
        }
        Ok(acc)
    }

    fn factor(&mut self) -> std::result::Result<Poly, String> {
        let tok = self.peek().cloned().ok_or("unexpected end of expression")?;
        self.pos += 1;
        match tok {
            Tok::Num(n) => {
                let value = if self.eat('/') {
                    match self.peek().cloned() {
                        Some(Tok::Num(d)) if d != BigInt::from(0) => {
                            self.pos += 1;
                            BigRational::new(n, d)
                        }
                        other => return Err(format!("bad denominator {other:?}")),
                    }
                } else {
                    BigRational::from_integer(n)
                };
                Ok(Poly::constant(Gauss::real(value)))
            }
            Tok::I => Ok(Poly::constant(Gauss::i())),
            Tok::Ident(name) => Ok(Poly::symbol(&name)),
            Tok::Sym('(') => {
                let e = self.expr()?;
                self.expect(')')?;
                Ok(e)
            }
            Tok::Sym(open @ ('[' | '{')) => {
                let a = self.expr()?;
                self.expect(',')?;
                let b = self.expr()?;
                if open == '[' {
                    self.expect(']')?;
                    Ok(a.commutator(&b))
                } else {
                    self.expect('}')?;
                    Ok(a.anticommutator(&b))
                }
            }
            other => Err(format!("unexpected token {other:?}")),
        }
    }
}

/// Parses `expr` or `lhs = rhs` (returned as `lhs − rhs`).
pub fn parse_expression(src: &str) -> Result<Poly> {
    parse_expr_inner(src).map_err(|msg| Error::Parse { line: 0, msg })
}

fn parse_expr_inner(src: &str) -> std::result::Result<Poly, String> {
    let mut p = Parser {
        toks: lex(src)?,
        pos: 0,
    };
    let lhs = p.expr()?;
    let poly = if p.eat('=') { lhs.sub(&p.expr()?) } else { lhs };
    if p.pos != p.toks.len() {
        return Err(format!("trailing input at {:?}", p.peek()));
    }
    Ok(poly)
}

fn is_ident(s: &str) -> bool {
    let mut chars = s.chars();
    matches!(chars.next(), Some(c) if c.is_ascii_alphabetic() || c == '_')
        && chars.all(|c| c.is_ascii_alphanumeric() || c == '_')
        && s != "i"
}

/// Parses the text format described in the module docs. Every symbol used in
/// a relation must be declared.
pub fn parse_presentation(text: &str) -> Result<Presentation> {
    let mut pres = Presentation {
        name: String::new(),
        generators: vec![],
        centrals: vec![],
        params: vec![],
        relations: vec![],
    };
    for (n, raw) in text.lines().enumerate() {
        let line_no = n + 1;
        let err = |msg: String| Error::Parse { line: line_no, msg };
        let line = raw.split('#').next().unwrap_or("").trim();
        if line.is_empty() {
            continue;
        }
        let (key, rest) = line.split_once(char::is_whitespace).unwrap_or((line, ""));
        let rest = rest.trim();
        match key {
            "presentation" => pres.name = rest.to_string(),
            "generators" | "centrals" | "params" => {
                let list: Vec<String> = rest.split_whitespace().map(str::to_string).collect();
                if let Some(bad) = list.iter().find(|s| !is_ident(s)) {
                    return Err(err(format!("invalid symbol name `{bad}`")));
                }
                match key {
                    "generators" => pres.generators.extend(list),
                    "centrals" => pres.centrals.extend(list),
                    _ => pres.params.extend(list),
                }
            }
            "relation" => {
                let body = rest
                    .strip_prefix('"')
                    .ok_or_else(|| err("relation tag must be quoted".into()))?;
                let (tag, expr) = body
                    .split_once('"')
                    .ok_or_else(|| err("unterminated relation tag".into()))?;
                let poly = parse_expr_inner(expr).map_err(err)?;
                pres.relations.push(Relation {
                    tag: tag.to_string(),
                    display: expr.trim().to_string(),
                    poly,
                });
            }
            other => return Err(err(format!("unknown directive `{other}`"))),
        }
    }
    if pres.name.is_empty() {
        return Err(Error::Parse {
            line: 0,
            msg: "missing `presentation <name>` line".into(),
        });
    }
    let mut seen = std::collections::BTreeSet::new();
    for s in pres.generators.iter().chain(&pres.centrals).chain(&pres.params) {
        if !seen.insert(s) {
            return Err(Error::Parse {
                line: 0,
                msg: format!("symbol `{s}` declared twice"),
            });
        }
    }
    for r in &pres.relations {
        if let Some(bad) = r.poly.symbols().find(|s| pres.kind_of(s).is_none()) {
            return Err(Error::UndeclaredSymbol(bad.clone()));
        }
    }
    Ok(pres)
}
