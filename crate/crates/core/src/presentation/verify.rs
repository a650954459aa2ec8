use std::collections::BTreeMap;
use std::sync::Arc;
use std::time::Instant;

use rayon::prelude::*;

use super::{parse_expression, Poly, Presentation, Relation, SymbolKind};
use crate::error::{Error, Result};
use crate::operator::{verdict_for, Operator, SparseVec};
use crate::report::{CheckKind, RelationReport, RelationResult, Verdict};
use crate::scalar::{Gauss, Scalar};
use crate::space::GradedSpace;

/// Settings shared by every check of a suite.
#[derive(Debug, Clone, Copy, Default, PartialEq, Eq)]
pub struct CheckOptions {
    /// Overrides the per-relation sound budget.
    pub budget: Option<u32>,
    /// Record wall times in reports.
    pub timing: bool,
}

/// Assignment of operators to the generators and centrals of a presentation,
/// and of numbers to its parameters.
pub struct RealizationMap<'p, S> {
    presentation: &'p Presentation,
    operators: BTreeMap<String, Operator<S>>,
    params: BTreeMap<String, S>,
    budget: Option<u32>,
    timing: bool,
}

impl<'p, S: Scalar> RealizationMap<'p, S> {
    pub fn new(presentation: &'p Presentation) -> Self {
        RealizationMap {
            presentation,
            operators: BTreeMap::new(),
            params: BTreeMap::new(),
            budget: None,
            timing: false,
        }
    }

    pub fn presentation(&self) -> &Presentation {
        self.presentation
    }

    pub fn assign(&mut self, symbol: &str, op: Operator<S>) -> Result<&mut Self> {
        match self.presentation.kind_of(symbol) {
            Some(SymbolKind::Generator | SymbolKind::Central) => {
                self.operators.insert(symbol.to_string(), op);
                Ok(self)
            }
            _ => Err(Error::UndeclaredSymbol(symbol.to_string())),
        }
    }

    pub fn set_param(&mut self, symbol: &str, value: &Gauss) -> Result<&mut Self> {
        match self.presentation.kind_of(symbol) {
            Some(SymbolKind::Param) => {
                self.params.insert(symbol.to_string(), S::from_gauss(value));
                Ok(self)
            }
            _ => Err(Error::UndeclaredSymbol(symbol.to_string())),
        }
    }

    /// Fixed budget for every check instead of the per-relation sound one.
    pub fn with_budget(&mut self, budget: Option<u32>) -> &mut Self {
        self.budget = budget;
        self
    }

    pub fn with_timing(&mut self, timing: bool) -> &mut Self {
        self.timing = timing;
        self
    }

    pub fn with_options(&mut self, opts: &CheckOptions) -> &mut Self {
        self.budget = opts.budget;
        self.timing = opts.timing;
        self
    }

    pub fn operator(&self, symbol: &str) -> Option<&Operator<S>> {
        self.operators.get(symbol)
    }
}

enum Letter<'a, S> {
    Op(&'a Operator<S>),
    Scalar(&'a S),
}

struct Check {
    tag: String,
    display: String,
    kind: CheckKind,
    poly: Poly,
}

/// Checks every relation of the presentation, then `[c, g] = 0` for every
/// central `c` and generator `g`. Results follow the presentation's order.
pub fn verify<S: Scalar>(map: &RealizationMap<'_, S>) -> Result<RelationReport> {
    let pres = map.presentation;
    for s in pres.generators.iter().chain(&pres.centrals) {
        if !map.operators.contains_key(s) {
            return Err(Error::MissingSymbol(s.clone()));
        }
    }
    if let Some(p) = pres.params.iter().find(|p| !map.params.contains_key(*p)) {
        return Err(Error::MissingSymbol(p.clone()));
    }
    let space: Arc<GradedSpace> = match map.operators.values().next() {
        Some(op) => op.space().clone(),
        None => return Err(Error::MissingSymbol("<no operators>".into())),
    };
    if map.operators.values().any(|op| **op.space() != *space) {
        return Err(Error::SpaceMismatch);
    }

    let mut checks: Vec<Check> = pres
        .relations
        .iter()
        .map(|r| Check {
            tag: format!("{}:{}", pres.name, r.tag),
            display: r.display.clone(),
            kind: CheckKind::Relation,
            poly: r.poly.clone(),
        })
        .collect();
    for c in &pres.centrals {
        for g in &pres.generators {
            checks.push(Check {
                tag: format!("{}:central:[{c},{g}]", pres.name),
                display: format!("[{c},{g}] = 0"),
                kind: CheckKind::Centrality,
                poly: Poly::symbol(c).commutator(&Poly::symbol(g)),
            });
        }
    }

    let start = Instant::now();
    let results: Vec<RelationResult> = checks.par_iter().map(|c| run_check(map, &space, c)).collect();
    let mut report = RelationReport::new(&pres.name, S::NAME, space.dim(), space.cutoff());
    for r in results {
        report.push(r);
    }
    if map.timing {
        report.seconds = Some(start.elapsed().as_secs_f64());
    }
    Ok(report)
}

/// Checks standalone operator identities `lhs = rhs` over named operators.
/// Each identity is written in the presentation expression syntax.
pub fn check_identities<S: Scalar>(
    name: &str,
    symbols: &[(&str, &Operator<S>)],
    identities: &[(&str, &str)],
    opts: &CheckOptions,
) -> Result<RelationReport> {
    let relations = identities
        .iter()
        .map(|(tag, expr)| {
            Ok(Relation {
                tag: tag.to_string(),
                display: expr.to_string(),
                poly: parse_expression(expr)?,
            })
        })
        .collect::<Result<Vec<_>>>()?;
    let pres = Presentation {
        name: name.to_string(),
        generators: symbols.iter().map(|(s, _)| s.to_string()).collect(),
        centrals: vec![],
        params: vec![],
        relations,
    };
    for r in &pres.relations {
        if let Some(bad) = r.poly.symbols().find(|s| pres.kind_of(s).is_none()) {
            return Err(Error::UndeclaredSymbol(bad.clone()));
        }
    }
    let mut map = RealizationMap::new(&pres);
    for (s, op) in symbols {
        map.assign(s, (*op).clone())?;
    }
    map.with_options(opts);
    let mut report = verify(&map)?;
    for r in &mut report.results {
        r.kind = CheckKind::Identity;
    }
    Ok(report)
}

fn letters<'a, S: Scalar>(map: &'a RealizationMap<'_, S>, word: &[String]) -> Vec<Letter<'a, S>> {
    word.iter()
        .map(|s| match map.operators.get(s) {
            Some(op) => Letter::Op(op),
            None => Letter::Scalar(&map.params[s]),
        })
        .collect()
}

/// Sound budget of a word: the largest grade excursion met while applying it
/// right to left.
fn word_reach<S: Scalar>(letters: &[Letter<'_, S>]) -> i32 {
    let (mut raise, mut reach) = (0i32, 0i32);
    for l in letters.iter().rev() {
        if let Letter::Op(op) = l {
            reach = reach.max(raise + op.reach());
            raise += op.raise();
        }
    }
    reach
}

fn run_check<S: Scalar>(map: &RealizationMap<'_, S>, space: &Arc<GradedSpace>, check: &Check) -> RelationResult {
    let start = Instant::now();
    let terms: Vec<(S, Vec<Letter<'_, S>>)> = check
        .poly
        .terms()
        .map(|(w, c)| (S::from_gauss(c), letters(map, w)))
        .collect();
    let required = terms.iter().map(|(_, l)| word_reach(l)).max().unwrap_or(0).max(0) as u32;
    let budget = map.budget.unwrap_or(required);
    let (verdict, columns) = match space.window(budget) {
        None => (Verdict::Vacuous, 0),
        Some(window) => {
            let cols: Vec<SparseVec<S>> = window.iter().map(|&c| evaluate_column(&terms, c)).collect();
            let mut v = verdict_for(cols.iter().map(Vec::as_slice));
            if check.kind == CheckKind::Centrality && !v.passes(S::tolerance()) {
                v = Verdict::CentralityViolation { max_abs: v.max_abs() };
            }
            (v, window.len())
        }
    };
    let passed = verdict.passes(S::tolerance()) && budget >= required;
    RelationResult {
        tag: check.tag.clone(),
        display: check.display.clone(),
        kind: check.kind,
        verdict,
        budget,
        required_budget: required,
        window_columns: columns,
        informational: false,
        passed,
        seconds: map.timing.then(|| start.elapsed().as_secs_f64()),
    }
}

fn evaluate_column<S: Scalar>(terms: &[(S, Vec<Letter<'_, S>>)], column: usize) -> SparseVec<S> {
    let mut acc: BTreeMap<usize, S> = BTreeMap::new();
    for (coef, letters) in terms {
        let mut v: SparseVec<S> = vec![(column, coef.clone())];
        for l in letters.iter().rev() {
            if v.is_empty() {
                break;
            }
            v = match l {
                Letter::Op(op) => op.apply(&v),
                Letter::Scalar(s) => v.into_iter().map(|(r, x)| (r, x.times(s))).collect(),
            };
        }
        for (r, x) in v {
            match acc.get_mut(&r) {
                Some(slot) => slot.accumulate(&x),
                None => {
                    acc.insert(r, x);
                }
            }
        }
    }
    acc.into_iter().filter(|(_, x)| !x.is_zero()).collect()
}
