//! Serializable check results.

use serde::{Deserialize, Serialize};

/// Outcome of testing one operator expression for vanishing on a safe window.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(tag = "status", rename_all = "SCREAMING_SNAKE_CASE")]
pub enum Verdict {
    /// Every admissible entry is exactly zero (exact backend).
    ExactZero,
    /// Largest admissible entry modulus. Exact backend: nonzero means failure.
    Residual { max_abs: f64 },
    /// No admissible column; nothing was checked.
    Vacuous,
    /// A declared central element failed to commute with a generator.
    CentralityViolation { max_abs: f64 },
}

impl Verdict {
    pub fn passes(&self, tolerance: f64) -> bool {
        match *self {
            Verdict::ExactZero => true,
            Verdict::Residual { max_abs } => max_abs <= tolerance,
            Verdict::Vacuous | Verdict::CentralityViolation { .. } => false,
        }
    }

    pub fn max_abs(&self) -> f64 {
        match *self {
            Verdict::ExactZero | Verdict::Vacuous => 0.0,
            Verdict::Residual { max_abs } | Verdict::CentralityViolation { max_abs } => max_abs,
        }
    }

    pub fn label(&self) -> &'static str {
        match self {
            Verdict::ExactZero => "EXACT_ZERO",
            Verdict::Residual { .. } => "RESIDUAL",
            Verdict::Vacuous => "VACUOUS",
            Verdict::CentralityViolation { .. } => "CENTRALITY_VIOLATION",
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum CheckKind {
    /// A defining relation of a presentation.
    Relation,
    /// `[central, generator] = 0`, appended automatically.
    Centrality,
    /// A standalone operator identity.
    Identity,
    /// A deliberately wrong identity; passes only when it does not vanish.
    Control,
}

/// Residual a negative control must exceed; well above float noise.
pub const CONTROL_FLOOR: f64 = 1e-6;

/// One checked relation or identity.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct RelationResult {
    pub tag: String,
    /// Human-readable form of what was checked.
    pub display: String,
    pub kind: CheckKind,
    #[serde(flatten)]
    pub verdict: Verdict,
    /// Budget used to select admissible columns.
    pub budget: u32,
    /// Smallest budget that is sound for this expression.
    pub required_budget: u32,
    pub window_columns: usize,
    /// Reported but excluded from pass/fail.
    pub informational: bool,
    pub passed: bool,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub seconds: Option<f64>,
}

/// Verdicts for every relation of one presentation under one realization, in
/// the presentation's relation order followed by the centrality audit.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct RelationReport {
    pub name: String,
    pub backend: String,
    pub dimension: usize,
    pub cutoff: u32,
    pub results: Vec<RelationResult>,
    pub passed: bool,
    /// Free-form annotations (derived identifications, warnings).
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub notes: Vec<String>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub seconds: Option<f64>,
}

impl RelationReport {
    pub fn new(name: impl Into<String>, backend: &str, dimension: usize, cutoff: u32) -> Self {
        RelationReport {
            name: name.into(),
            backend: backend.to_string(),
            dimension,
            cutoff,
            results: Vec::new(),
            passed: true,
            notes: Vec::new(),
            seconds: None,
        }
    }

    pub fn push(&mut self, result: RelationResult) {
        if !result.informational && !result.passed {
            self.passed = false;
        }
        self.results.push(result);
    }

    pub fn extend(&mut self, other: RelationReport) {
        for r in other.results {
            self.push(r);
        }
        self.notes.extend(other.notes);
    }

    /// Marks every result informational; the report then always passes.
    pub fn informational(mut self) -> Self {
        for r in &mut self.results {
            r.informational = true;
        }
        self.passed = true;
        self
    }

    /// Turns every result into a negative control: it passes when the
    /// verdict is a residual above [`CONTROL_FLOOR`].
    pub fn negative_control(mut self) -> Self {
        self.passed = true;
        for r in &mut self.results {
            r.kind = CheckKind::Control;
            r.informational = false;
            r.passed = matches!(r.verdict, Verdict::Residual { max_abs } if max_abs > CONTROL_FLOOR);
            self.passed &= r.passed;
        }
        self
    }

    pub fn get(&self, tag: &str) -> Option<&RelationResult> {
        self.results.iter().find(|r| r.tag == tag)
    }

    pub fn all_exact_zero(&self) -> bool {
        self.results
            .iter()
            .filter(|r| !r.informational && r.kind != CheckKind::Control)
            .all(|r| r.verdict == Verdict::ExactZero)
    }

    /// Drops timing fields so reports compare byte-for-byte.
    pub fn strip_timing(&mut self) {
        self.seconds = None;
        for r in &mut self.results {
            r.seconds = None;
        }
    }
}
