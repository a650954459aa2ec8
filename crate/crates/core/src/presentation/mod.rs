//! Algebra presentations as data, and a verifier for concrete realizations.
//!
//! A presentation is a list of generators, central elements, scalar
//! parameters and relations. Relations are stored fully expanded as sums of
//! words with Gaussian-rational coefficients and are asserted to vanish.
//!
//! # Text format
//!
//! ```text
//! # comment
//! presentation osp12
//! generators A0 Ap Am P
//! centrals C
//! params mu
//! relation "{Ap,Am}" {Ap,Am} = 2*A0
//! relation "[A0,Ap]" [A0,Ap] - Ap
//! ```
//!
//! Expressions use `+ - *`, parentheses, integers and fractions `p/q`, `i`
//! for the imaginary unit, `[x,y] = xy − yx` and `{x,y} = xy + yx`.
//! Multiplication is explicit. `lhs = rhs` means `lhs − rhs = 0`. The
//! canonical form printed by [`Presentation::to_text`] writes every relation
//! expanded as `relation "tag" <sum> = 0`; parsing it back and printing again
//! reproduces it exactly.

mod builtin;
mod parse;
mod verify;

use std::collections::BTreeMap;
use std::fmt::Write as _;

use crate::scalar::Gauss;

pub use builtin::{builtin_presentation, o_n, o_n_generator, BUILTIN_NAMES};
pub use parse::{parse_expression, parse_presentation};
pub use verify::{check_identities, verify, CheckOptions, RealizationMap};

/// A product of symbols, leftmost applied last.
pub type Word = Vec<String>;

/// Noncommutative polynomial: word → coefficient, no zero coefficients.
#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct Poly {
    terms: BTreeMap<Word, Gauss>,
}

impl Poly {
    pub fn zero() -> Self {
        Poly::default()
    }

    pub fn constant(c: Gauss) -> Self {
        Self::term(c, Vec::new())
    }

    pub fn symbol(name: &str) -> Self {
        Self::term(Gauss::from(1), vec![name.to_string()])
    }

    pub fn term(c: Gauss, word: Word) -> Self {
        let mut p = Poly::zero();
        p.add_term(word, c);
        p
    }

    fn add_term(&mut self, word: Word, c: Gauss) {
        if c.is_zero() {
            return;
        }
        match self.terms.get_mut(&word) {
            Some(slot) => {
                *slot = &*slot + &c;
                if slot.is_zero() {
                    self.terms.remove(&word);
                }
            }
            None => {
                self.terms.insert(word, c);
            }
        }
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Word, &Gauss)> {
        self.terms.iter()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn add(&self, other: &Poly) -> Poly {
        let mut out = self.clone();
        for (w, c) in &other.terms {
            out.add_term(w.clone(), c.clone());
        }
        out
    }

    pub fn sub(&self, other: &Poly) -> Poly {
        self.add(&other.scale(&Gauss::from(-1)))
    }

    pub fn scale(&self, s: &Gauss) -> Poly {
        let mut out = Poly::zero();
        for (w, c) in &self.terms {
            out.add_term(w.clone(), c * s);
        }
        out
    }

    pub fn mul(&self, other: &Poly) -> Poly {
        let mut out = Poly::zero();
        for (w1, c1) in &self.terms {
            for (w2, c2) in &other.terms {
                let mut w = w1.clone();
                w.extend(w2.iter().cloned());
                out.add_term(w, c1 * c2);
            }
        }
        out
    }

    pub fn commutator(&self, other: &Poly) -> Poly {
        self.mul(other).sub(&other.mul(self))
    }

    pub fn anticommutator(&self, other: &Poly) -> Poly {
        self.mul(other).add(&other.mul(self))
    }

    pub fn symbols(&self) -> impl Iterator<Item = &String> {
        self.terms.keys().flat_map(|w| w.iter())
    }

    pub fn max_word_len(&self) -> usize {
        self.terms.keys().map(Vec::len).max().unwrap_or(0)
    }

    /// Canonical text: terms in word order, explicit `*`, `0` when empty.
    pub fn to_text(&self) -> String {
        if self.terms.is_empty() {
            return "0".into();
        }
        let mut out = String::new();
        for (k, (word, c)) in self.terms.iter().enumerate() {
            let (negative, magnitude) = split_sign(c);
            match (k, negative) {
                (0, true) => out.push('-'),
                (0, false) => {}
                (_, true) => out.push_str(" - "),
                (_, false) => out.push_str(" + "),
            }
            let unit = magnitude == Gauss::from(1);
            if word.is_empty() {
                let _ = write!(out, "{magnitude}");
            } else {
                if !unit {
                    let _ = write!(out, "{magnitude}*");
                }
                out.push_str(&word.join("*"));
            }
        }
        out
    }
}

/// Pulls an overall sign out of real or purely imaginary coefficients.
fn split_sign(c: &Gauss) -> (bool, Gauss) {
    if (c.im.is_zero() && c.re.is_negative()) || (c.re.is_zero() && c.im.is_negative()) {
        (true, -c)
    } else {
        (false, c.clone())
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct Relation {
    /// Short stable identifier used in reports.
    pub tag: String,
    /// The relation as written before expansion.
    pub display: String,
    /// Expanded `lhs − rhs`.
    pub poly: Poly,
}

#[derive(Debug, Clone, PartialEq)]
pub struct Presentation {
    pub name: String,
    pub generators: Vec<String>,
    /// Elements asserted to commute with every generator.
    pub centrals: Vec<String>,
    /// Scalar symbols, substituted by numbers at realization time.
    pub params: Vec<String>,
    pub relations: Vec<Relation>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum SymbolKind {
    Generator,
    Central,
    Param,
}

impl Presentation {
    pub fn kind_of(&self, symbol: &str) -> Option<SymbolKind> {
        if self.generators.iter().any(|g| g == symbol) {
            Some(SymbolKind::Generator)
        } else if self.centrals.iter().any(|g| g == symbol) {
            Some(SymbolKind::Central)
        } else if self.params.iter().any(|g| g == symbol) {
            Some(SymbolKind::Param)
        } else {
            None
        }
    }

    pub fn relation(&self, tag: &str) -> Option<&Relation> {
        self.relations.iter().find(|r| r.tag == tag)
    }

    /// Canonical text form; see the module docs.
    pub fn to_text(&self) -> String {
        let mut out = format!("presentation {}\n", self.name);
        for (key, list) in [
            ("generators", &self.generators),
            ("centrals", &self.centrals),
            ("params", &self.params),
        ] {
            if !list.is_empty() {
                let _ = writeln!(out, "{key} {}", list.join(" "));
            }
        }
        for r in &self.relations {
            let _ = writeln!(out, "relation \"{}\" {} = 0", r.tag, r.poly.to_text());
        }
        out
    }
}

impl std::fmt::Display for Poly {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(&self.to_text())
    }
}
