//! Sparse operators on a [`GradedSpace`] with grade-change bookkeeping.

use std::sync::Arc;

use rayon::prelude::*;

use crate::error::{Error, Result};
use crate::report::Verdict;
use crate::scalar::Scalar;
use crate::space::GradedSpace;

/// Sparse column: strictly increasing row indices, no stored zeros.
pub type SparseVec<S> = Vec<(usize, S)>;

/// Column-major sparse matrix with three grade bounds:
///
/// * `raise`: every nonzero `(r, c)` has `grade(r) - grade(c) <= raise`;
/// * `lower`: every nonzero `(r, c)` has `grade(c) - grade(r) <= lower`;
/// * `reach`: no intermediate state met while evaluating the (truncated)
///   product that built this operator exceeds `grade(c) + reach`.
///
/// `reach` is what makes truncation harmless: on columns with
/// `grade(c) + reach <= cutoff` the truncated matrix equals the restriction of
/// the untruncated operator.
#[derive(Clone, Debug)]
pub struct Operator<S> {
    space: Arc<GradedSpace>,
    cols: Vec<SparseVec<S>>,
    raise: i32,
    lower: i32,
    reach: i32,
}

/// Result of [`Operator::is_zero_on_window`].
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct WindowCheck {
    pub verdict: Verdict,
    pub budget: u32,
    pub columns: usize,
}

impl<S: Scalar> Operator<S> {
    pub fn zero(space: &Arc<GradedSpace>) -> Self {
        Operator {
            space: space.clone(),
            cols: vec![Vec::new(); space.dim()],
            raise: 0,
            lower: 0,
            reach: 0,
        }
    }

    pub fn identity(space: &Arc<GradedSpace>) -> Self {
        Self::scalar(space, S::one())
    }

    pub fn scalar(space: &Arc<GradedSpace>, value: S) -> Self {
        if value.is_zero() {
            return Self::zero(space);
        }
        let cols = (0..space.dim()).map(|c| vec![(c, value.clone())]).collect();
        Operator {
            space: space.clone(),
            cols,
            raise: 0,
            lower: 0,
            reach: 0,
        }
    }

    pub fn diagonal(space: &Arc<GradedSpace>, f: impl Fn(usize) -> S) -> Self {
        let cols = (0..space.dim())
            .map(|c| {
                let v = f(c);
                if v.is_zero() {
                    Vec::new()
                } else {
                    vec![(c, v)]
                }
            })
            .collect();
        Operator {
            space: space.clone(),
            cols,
            raise: 0,
            lower: 0,
            reach: 0,
        }
    }

    /// Builds an elementary operator from its action on basis states. Bounds
    /// are read off the entries; `reach` is `max(raise, 0)`, which is only
    /// correct for single-step actions such as ladder operators.
    pub fn from_action(space: &Arc<GradedSpace>, f: impl Fn(usize) -> Vec<(usize, S)>) -> Self {
        let cols: Vec<SparseVec<S>> = (0..space.dim()).map(|c| normalize(f(c))).collect();
        let (raise, lower) = measure(space, &cols);
        Operator {
            space: space.clone(),
            cols,
            raise,
            lower,
            reach: raise.max(0),
        }
    }

    pub fn space(&self) -> &Arc<GradedSpace> {
        &self.space
    }

    pub fn raise(&self) -> i32 {
        self.raise
    }

    pub fn lower(&self) -> i32 {
        self.lower
    }

    pub fn reach(&self) -> i32 {
        self.reach
    }

    pub fn dim(&self) -> usize {
        self.cols.len()
    }

    pub fn column(&self, c: usize) -> &[(usize, S)] {
        &self.cols[c]
    }

    pub fn nnz(&self) -> usize {
        self.cols.iter().map(Vec::len).sum()
    }

    pub fn entry(&self, r: usize, c: usize) -> Option<&S> {
        let col = &self.cols[c];
        col.binary_search_by_key(&r, |e| e.0).ok().map(|k| &col[k].1)
    }

    pub fn entry_or_zero(&self, r: usize, c: usize) -> S {
        self.entry(r, c).cloned().unwrap_or_else(S::zero)
    }

    pub fn is_zero(&self) -> bool {
        self.cols.iter().all(Vec::is_empty)
    }

    /// `(raise, lower)` recomputed from the stored entries.
    pub fn measured_bounds(&self) -> (i32, i32) {
        measure(&self.space, &self.cols)
    }

    /// Widens the declared bounds (never narrows them).
    pub fn with_bounds(mut self, raise: i32, lower: i32, reach: i32) -> Self {
        self.raise = self.raise.max(raise);
        self.lower = self.lower.max(lower);
        self.reach = self.reach.max(reach).max(self.raise);
        self
    }

    fn check_space(&self, other: &Self) -> Result<()> {
        if Arc::ptr_eq(&self.space, &other.space) || *self.space == *other.space {
            Ok(())
        } else {
            Err(Error::SpaceMismatch)
        }
    }

    /// Matrix product `self · other` (apply `other` first).
    pub fn compose(&self, other: &Self) -> Result<Self> {
        self.check_space(other)?;
        let cols = other.cols.par_iter().map(|col| self.apply(col)).collect();
        Ok(Operator {
            space: self.space.clone(),
            cols,
            raise: self.raise + other.raise,
            lower: self.lower + other.lower,
            reach: other.reach.max(other.raise + self.reach),
        })
    }

    /// Applies the operator to a sparse vector.
    pub fn apply(&self, v: &[(usize, S)]) -> SparseVec<S> {
        if let [(k, x)] = v {
            return self.cols[*k]
                .iter()
                .map(|(r, a)| (*r, a.times(x)))
                .filter(|e| !e.1.is_zero())
                .collect();
        }
        let mut terms: Vec<(usize, S)> = Vec::new();
        for (k, x) in v {
            terms.extend(self.cols[*k].iter().map(|(r, a)| (*r, a.times(x))));
        }
        normalize(terms)
    }

    fn combine(&self, other: &Self, sign: bool) -> Result<Self> {
        self.check_space(other)?;
        let cols = self
            .cols
            .par_iter()
            .zip(other.cols.par_iter())
            .map(|(a, b)| merge(a, b, sign))
            .collect();
        Ok(Operator {
            space: self.space.clone(),
            cols,
            raise: self.raise.max(other.raise),
            lower: self.lower.max(other.lower),
            reach: self.reach.max(other.reach),
        })
    }

    pub fn add(&self, other: &Self) -> Result<Self> {
        self.combine(other, false)
    }

    pub fn sub(&self, other: &Self) -> Result<Self> {
        self.combine(other, true)
    }

    pub fn scale(&self, s: &S) -> Self {
        let cols = self
            .cols
            .iter()
            .map(|col| {
                col.iter()
                    .map(|(r, x)| (*r, x.times(s)))
                    .filter(|e| !e.1.is_zero())
                    .collect()
            })
            .collect();
        Operator {
            space: self.space.clone(),
            cols,
            raise: self.raise,
            lower: self.lower,
            reach: self.reach,
        }
    }

    /// `self + s·I`.
    pub fn shift(&self, s: &S) -> Self {
        self.add(&Self::scalar(&self.space, s.clone())).expect("same space")
    }

    /// `ab − ba`
    pub fn commutator(&self, other: &Self) -> Result<Self> {
        self.compose(other)?.sub(&other.compose(self)?)
    }

    /// `ab + ba`
    pub fn anticommutator(&self, other: &Self) -> Result<Self> {
        self.compose(other)?.add(&other.compose(self)?)
    }

    /// Tests whether the operator vanishes on all basis columns of grade
    /// `<= cutoff − budget`.
    pub fn is_zero_on_window(&self, budget: u32) -> WindowCheck {
        let Some(window) = self.space.window(budget) else {
            return WindowCheck {
                verdict: Verdict::Vacuous,
                budget,
                columns: 0,
            };
        };
        let cols: Vec<&[(usize, S)]> = window.iter().map(|&c| self.column(c)).collect();
        WindowCheck {
            verdict: verdict_for(cols.into_iter()),
            budget,
            columns: window.len(),
        }
    }

    /// Budget needed for [`Operator::is_zero_on_window`] to be sound.
    pub fn required_budget(&self) -> u32 {
        self.reach.max(0) as u32
    }
}

/// Exact backends report `ExactZero` or a nonzero residual; float backends
/// always report the residual.
pub(crate) fn verdict_for<'a, S: Scalar>(cols: impl Iterator<Item = &'a [(usize, S)]>) -> Verdict {
    let max_abs = cols.flat_map(|c| c.iter()).map(|(_, s)| s.abs()).fold(0.0f64, f64::max);
    if S::EXACT && max_abs == 0.0 {
        Verdict::ExactZero
    } else {
        Verdict::Residual { max_abs }
    }
}

fn normalize<S: Scalar>(mut v: Vec<(usize, S)>) -> SparseVec<S> {
    v.sort_by_key(|e| e.0); // stable, keeps summation order deterministic
    let mut out: SparseVec<S> = Vec::with_capacity(v.len());
    for (r, x) in v {
        match out.last_mut() {
            Some((lr, lx)) if *lr == r => lx.accumulate(&x),
            _ => out.push((r, x)),
        }
    }
    out.retain(|e| !e.1.is_zero());
    out
}

fn merge<S: Scalar>(a: &[(usize, S)], b: &[(usize, S)], negate_b: bool) -> SparseVec<S> {
    let mut out = Vec::with_capacity(a.len() + b.len());
    let (mut i, mut j) = (0, 0);
    let rhs = |x: &S| if negate_b { x.negated() } else { x.clone() };
    while i < a.len() || j < b.len() {
        let take_a = j >= b.len() || (i < a.len() && a[i].0 < b[j].0);
        let take_b = i >= a.len() || (j < b.len() && b[j].0 < a[i].0);
        if take_a {
            out.push(a[i].clone());
            i += 1;
        } else if take_b {
            out.push((b[j].0, rhs(&b[j].1)));
            j += 1;
        } else {
            let s = if negate_b {
                a[i].1.minus(&b[j].1)
            } else {
                a[i].1.plus(&b[j].1)
            };
            if !s.is_zero() {
                out.push((a[i].0, s));
            }
            i += 1;
            j += 1;
        }
    }
    out
}

/// Tight bounds from the entries; may be negative (a pure lowering operator
/// has `raise == -1`). An empty operator gets `(0, 0)`.
fn measure<S>(space: &GradedSpace, cols: &[SparseVec<S>]) -> (i32, i32) {
    let mut bounds: Option<(i32, i32)> = None;
    for (c, col) in cols.iter().enumerate() {
        let gc = space.grade(c) as i32;
        for (r, _) in col {
            let d = space.grade(*r) as i32 - gc;
            let (raise, lower) = bounds.get_or_insert((d, -d));
            *raise = (*raise).max(d);
            *lower = (*lower).max(-d);
        }
    }
    bounds.unwrap_or((0, 0))
}
