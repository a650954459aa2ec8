//! Exact verification of the centrally extended dual −1 Hahn algebra in its
//! commutant and osp(1|2) Clebsch–Gordan realizations.

pub mod cg;
pub mod dunkl;
pub mod error;
pub mod howe;
pub mod operator;
pub mod oscillators;
pub mod osp;
pub mod presentation;
pub mod rational;
pub mod report;
pub mod scalar;
pub mod space;
pub mod spinor;
pub mod suite;

pub use cg::{solve_cg, CgResult};
pub use error::{Error, Result};
pub use num_rational::BigRational;
pub use operator::{Operator, SparseVec, WindowCheck};
pub use oscillators::Basis;
pub use presentation::{builtin_presentation, check_identities, verify, CheckOptions, Presentation, RealizationMap};
pub use rational::Rat;
pub use report::{CheckKind, RelationReport, RelationResult, Verdict};
pub use scalar::{parse_rational, Gauss, Scalar, C64};
pub use space::GradedSpace;
pub use suite::{run_suite, run_suites, Backend, Suite, SuiteConfig, SuiteOutcome};
