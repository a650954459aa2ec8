//! Named verification suites bundling the checks of each module.

use std::fmt;
use std::str::FromStr;
use std::time::Instant;

use num_bigint::BigInt;
use num_rational::BigRational;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::cg::{solve_cg, CgResult, CG_TOLERANCE};
use crate::dunkl::{build_sd2, check_sd2, identify_dual_hahn_with};
use crate::error::{Error, Result};
use crate::howe::{
    build_howe, check_casimir_correspondence, check_commuting_actions, check_dictionary, check_howe_osp12,
    check_kappa_bridge, check_squared_casimir,
};
use crate::oscillators::Basis;
use crate::osp::{
    build_irrep, build_tensor_from, check_coproduct_casimir, check_coproduct_osp12, check_irrep,
    check_kappa_algebra_with,
};
use crate::presentation::CheckOptions;
use crate::report::{CheckKind, RelationReport, RelationResult, Verdict};
use crate::scalar::{Scalar, C64};
use crate::spinor::{
    build_commutant, build_spinor_model, check_commutant_closure_with, check_commutant_property, check_o_n,
    identify_commutant_dual_hahn, AngularMomentum,
};
use crate::Gauss;

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Suite {
    Sd2,
    Commutant,
    Osp,
    Cg,
    Howe,
}

impl Suite {
    pub const ALL: [Suite; 5] = [Suite::Sd2, Suite::Commutant, Suite::Osp, Suite::Cg, Suite::Howe];

    pub fn name(self) -> &'static str {
        match self {
            Suite::Sd2 => "sd2",
            Suite::Commutant => "commutant",
            Suite::Osp => "osp",
            Suite::Cg => "cg",
            Suite::Howe => "howe",
        }
    }
}

impl fmt::Display for Suite {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Suite {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        Suite::ALL
            .into_iter()
            .find(|x| x.name() == s)
            .ok_or_else(|| Error::InvalidParameter(format!("unknown suite `{s}`")))
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Backend {
    Exact,
    Float,
}

#[derive(Debug, Clone, PartialEq)]
pub struct SuiteConfig {
    pub cutoff: u32,
    pub mu1: BigRational,
    pub mu2: BigRational,
    pub eps1: i8,
    pub eps2: i8,
    pub partition: (usize, usize),
    pub backend: Backend,
    pub budget: Option<u32>,
    pub timing: bool,
    /// Highest coupled irrep solved by the `cg` suite.
    pub j_max: u32,
    /// Seed for the sampled coproduct checks of the `osp` suite.
    pub seed: u64,
    /// Number of sampled `(μ₁, ε₁, μ₂, ε₂)` for the `osp` suite.
    pub samples: u32,
}

impl Default for SuiteConfig {
    fn default() -> Self {
        SuiteConfig {
            cutoff: 4,
            mu1: BigRational::new(BigInt::from(1), BigInt::from(3)),
            mu2: BigRational::new(BigInt::from(1), BigInt::from(5)),
            eps1: 1,
            eps2: 1,
            partition: (2, 2),
            backend: Backend::Exact,
            budget: None,
            timing: false,
            j_max: 4,
            seed: 0,
            samples: 2,
        }
    }
}

impl SuiteConfig {
    fn options(&self) -> CheckOptions {
        CheckOptions {
            budget: self.budget,
            timing: self.timing,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SuiteOutcome {
    pub suite: Suite,
    pub passed: bool,
    pub reports: Vec<RelationReport>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub cg: Option<CgResult>,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub notes: Vec<String>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub seconds: Option<f64>,
}

impl SuiteOutcome {
    fn new(suite: Suite) -> Self {
        SuiteOutcome {
            suite,
            passed: true,
            reports: Vec::new(),
            cg: None,
            notes: Vec::new(),
            seconds: None,
        }
    }

    fn push(&mut self, report: RelationReport) {
        self.passed &= report.passed;
        self.reports.push(report);
    }

    fn push_info(&mut self, report: RelationReport) {
        self.reports.push(report.informational());
    }

    pub fn results(&self) -> impl Iterator<Item = &RelationResult> {
        self.reports.iter().flat_map(|r| &r.results)
    }

    pub fn find(&self, tag: &str) -> Option<&RelationResult> {
        self.results().find(|r| r.tag == tag)
    }
}

fn basis(cfg: &SuiteConfig) -> Basis {
    match cfg.backend {
        Backend::Exact => Basis::Analytic,
        Backend::Float => Basis::Orthonormal,
    }
}

fn run_sd2<S: Scalar>(cfg: &SuiteConfig, out: &mut SuiteOutcome) -> Result<()> {
    let opts = cfg.options();
    let r = build_sd2::<S>(&cfg.mu1, &cfg.mu2, cfg.cutoff, basis(cfg))?;
    out.push(check_sd2(&r, &opts)?);
    out.push(identify_dual_hahn_with(&r, "dual_m1_hahn", false, &opts)?);
    let mut mirrored = identify_dual_hahn_with(&r, "dual_m1_hahn", true, &opts)?;
    mirrored.name = "dual_m1_hahn[mirrored]".into();
    for x in &mut mirrored.results {
        x.tag = x.tag.replacen("dual_m1_hahn:", "dual_m1_hahn[mirrored]:", 1);
    }
    out.push_info(mirrored);
    out.push_info(identify_dual_hahn_with(&r, "dual_m1_hahn_variant", false, &opts)?);
    Ok(())
}

fn run_commutant<S: Scalar>(cfg: &SuiteConfig, out: &mut SuiteOutcome) -> Result<()> {
    let opts = cfg.options();
    let (m, mp) = cfg.partition;
    let model = build_spinor_model::<S>(m, mp, cfg.cutoff)?;
    let gens = build_commutant(&model)?;
    for which in [AngularMomentum::Orbital, AngularMomentum::Spin, AngularMomentum::Total] {
        out.push(check_o_n(&model, which, &opts)?);
    }
    out.push(check_commutant_property(&model, &gens, &opts)?);
    if model.partition == (2, 2) {
        out.push(check_commutant_closure_with(&model, &gens, "commutant_closure", &opts)?);
        out.push_info(check_commutant_closure_with(
            &model,
            &gens,
            "commutant_closure_variant",
            &opts,
        )?);
        out.push(identify_commutant_dual_hahn(&model, &gens, &opts)?);
    } else {
        out.notes.push(format!(
            "closure relations skipped: partition {:?} is not (2,2)",
            model.partition
        ));
    }
    Ok(())
}

fn sample_rational(rng: &mut ChaCha8Rng) -> BigRational {
    let d: i64 = rng.random_range(1..=7);
    let n: i64 = rng.random_range(0..=2 * d);
    BigRational::new(BigInt::from(n), BigInt::from(d))
}

fn run_osp<S: Scalar>(cfg: &SuiteConfig, out: &mut SuiteOutcome) -> Result<()> {
    let opts = cfg.options();
    for (mu, eps) in [(&cfg.mu1, cfg.eps1), (&cfg.mu2, cfg.eps2)] {
        out.push(check_irrep(&build_irrep::<S>(mu, eps, cfg.cutoff, basis(cfg))?, &opts)?);
    }
    let t = build_tensor_from::<S>(&cfg.mu1, cfg.eps1, &cfg.mu2, cfg.eps2, cfg.cutoff, basis(cfg))?;
    out.push(check_coproduct_casimir(&t, &opts)?);
    out.push(check_coproduct_osp12(&t, &opts)?);
    out.push(check_kappa_algebra_with(&t, "cg_kappa", &opts)?);
    out.push_info(check_kappa_algebra_with(&t, "cg_kappa_variant", &opts)?);
    let mut rng = ChaCha8Rng::seed_from_u64(cfg.seed);
    for _ in 0..cfg.samples {
        let (m1, m2) = (sample_rational(&mut rng), sample_rational(&mut rng));
        let e1 = if rng.random_bool(0.5) { 1 } else { -1 };
        let e2 = if rng.random_bool(0.5) { 1 } else { -1 };
        let st = build_tensor_from::<S>(&m1, e1, &m2, e2, cfg.cutoff.min(5), basis(cfg))?;
        let mut r = check_coproduct_casimir(&st, &opts)?;
        r.name = format!("coproduct[mu1={m1},eps1={e1},mu2={m2},eps2={e2}]");
        out.push(r);
    }
    Ok(())
}

fn residual_result(tag: &str, display: &str, value: f64, tolerance: f64, columns: usize) -> RelationResult {
    RelationResult {
        tag: tag.into(),
        display: display.into(),
        kind: CheckKind::Identity,
        verdict: Verdict::Residual { max_abs: value },
        budget: 0,
        required_budget: 0,
        window_columns: columns,
        informational: false,
        passed: value <= tolerance,
        seconds: None,
    }
}

fn run_cg(cfg: &SuiteConfig, out: &mut SuiteOutcome) -> Result<()> {
    let t = build_tensor_from::<C64>(&cfg.mu1, cfg.eps1, &cfg.mu2, cfg.eps2, cfg.cutoff, Basis::Orthonormal)?;
    let j_max = cfg.j_max.min(cfg.cutoff);
    let cg = solve_cg(&t, j_max)?;
    let n = cg.vectors.len();
    let res = &cg.residuals;
    let mut report = RelationReport::new("cg", C64::NAME, t.space.dim(), cfg.cutoff);
    for (tag, display, value) in [
        ("cg:orthonormality", "max |<v,w> - delta|", res.orthonormality),
        ("cg:lowering", "max |DAm v| over lowest vectors", res.lowering),
        ("cg:casimir", "max |DQ v + eps12*mu12 v|", res.casimir),
        ("cg:parity", "max |DP v - eps12*(-1)^n12 v|", res.parity),
        ("cg:A0", "max |DA0 v - (n12 + mu12 + 1/2) v|", res.a0),
        ("cg:imaginary", "max |Im coefficient|", res.imaginary),
    ] {
        report.push(residual_result(tag, display, value, CG_TOLERANCE, n));
    }
    #[cfg(feature = "oracle")]
    {
        use crate::cg::oracle;
        use crate::osp::{coupled_eps, coupled_mu};
        use num_traits::ToPrimitive;
        report.push(residual_result(
            "cg:oracle",
            "max coefficient deviation from the eigenvectors of DQ",
            oracle::max_deviation(&t, &cg),
            1e-8,
            n,
        ));
        let mut worst: f64 = 0.0;
        for g in 0..=cfg.cutoff {
            let got = oracle::casimir_spectrum(&t, g);
            let mut want: Vec<f64> = (0..=g)
                .map(|j| {
                    let mu = coupled_mu(&cfg.mu1, &cfg.mu2, j).to_f64().unwrap_or(f64::NAN);
                    -(coupled_eps(cfg.eps1, cfg.eps2, j) as f64) * mu
                })
                .collect();
            want.sort_by(f64::total_cmp);
            worst = got.iter().zip(&want).map(|(a, b)| (a - b).abs()).fold(worst, f64::max);
            if got.len() != want.len() {
                worst = f64::INFINITY;
            }
        }
        report.push(residual_result(
            "cg:spectrum",
            "DQ spectrum per grade vs -eps12(j)*mu12(j), j <= g",
            worst,
            1e-8,
            n,
        ));
    }
    if cfg.backend == Backend::Exact {
        out.notes.push("cg runs in floating point regardless of backend".into());
    }
    out.push(report);
    out.cg = Some(cg);
    Ok(())
}

fn run_howe<S: Scalar>(cfg: &SuiteConfig, out: &mut SuiteOutcome) -> Result<()> {
    let opts = cfg.options();
    let (m, mp) = cfg.partition;
    let model = build_spinor_model::<S>(m, mp, cfg.cutoff)?;
    let gens = build_commutant(&model)?;
    let h = build_howe(&model, &gens)?;
    out.push(check_howe_osp12(&h, &opts)?);
    out.push(check_commuting_actions(&h, &opts)?);
    out.push(check_squared_casimir(&h, &opts)?);
    if model.partition == (2, 2) {
        out.push(check_dictionary(&h, &opts)?);
        out.push(check_casimir_correspondence(&h, &opts)?);
        out.push(check_kappa_bridge(&h, &opts)?);
    } else {
        out.notes.push(format!(
            "dictionary and Casimir correspondence skipped: partition {:?} is not (2,2)",
            model.partition
        ));
    }
    Ok(())
}

fn run_with<S: Scalar>(suite: Suite, cfg: &SuiteConfig, out: &mut SuiteOutcome) -> Result<()> {
    match suite {
        Suite::Sd2 => run_sd2::<S>(cfg, out),
        Suite::Commutant => run_commutant::<S>(cfg, out),
        Suite::Osp => run_osp::<S>(cfg, out),
        Suite::Cg => run_cg(cfg, out),
        Suite::Howe => run_howe::<S>(cfg, out),
    }
}

fn validate(cfg: &SuiteConfig) -> Result<()> {
    for (name, e) in [("eps1", cfg.eps1), ("eps2", cfg.eps2)] {
        if e != 1 && e != -1 {
            return Err(Error::InvalidParameter(format!("{name} must be +1 or -1, got {e}")));
        }
    }
    for (name, mu) in [("mu1", &cfg.mu1), ("mu2", &cfg.mu2)] {
        if mu < &BigRational::from_integer(BigInt::from(0)) {
            return Err(Error::InvalidParameter(format!(
                "{name} must be non-negative, got {mu}"
            )));
        }
    }
    Ok(())
}

pub fn run_suite(suite: Suite, cfg: &SuiteConfig) -> Result<SuiteOutcome> {
    validate(cfg)?;
    let start = Instant::now();
    let mut out = SuiteOutcome::new(suite);
    match cfg.backend {
        Backend::Exact => run_with::<Gauss>(suite, cfg, &mut out)?,
        Backend::Float => run_with::<C64>(suite, cfg, &mut out)?,
    }
    let thin = out
        .results()
        .filter(|r| !r.informational && r.kind != CheckKind::Control && r.verdict != Verdict::Vacuous)
        .filter(|r| r.budget >= cfg.cutoff && r.window_columns > 0)
        .count();
    if thin > 0 && suite != Suite::Cg {
        out.notes.push(format!(
            "{thin} checks only cover total grade 0; raise the cutoff for a stronger test"
        ));
    }
    if cfg.timing {
        out.seconds = Some(start.elapsed().as_secs_f64());
    }
    Ok(out)
}

/// Runs `suites` concurrently; results keep the order of `suites`.
pub fn run_suites(suites: &[Suite], cfg: &SuiteConfig) -> Result<Vec<SuiteOutcome>> {
    suites.par_iter().map(|&s| run_suite(s, cfg)).collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn names_round_trip() {
        for s in Suite::ALL {
            assert_eq!(s.name().parse::<Suite>().unwrap(), s);
        }
        assert!("bogus".parse::<Suite>().is_err());
    }

    #[test]
    fn osp_suite_small() {
        let cfg = SuiteConfig {
            cutoff: 5,
            ..Default::default()
        };
        let out = run_suite(Suite::Osp, &cfg).unwrap();
        assert!(out.passed, "{out:#?}");
        assert_eq!(out.reports.len(), 6 + cfg.samples as usize);
        assert!(out.reports[5].results.iter().all(|r| r.informational));
        let again = run_suite(Suite::Osp, &cfg).unwrap();
        assert_eq!(out, again);
    }

    #[test]
    fn invalid_config() {
        let cfg = SuiteConfig {
            eps1: 0,
            ..Default::default()
        };
        assert!(run_suite(Suite::Osp, &cfg).is_err());
        let cfg = SuiteConfig {
            mu1: BigRational::from_integer((-1).into()),
            ..Default::default()
        };
        assert!(run_suite(Suite::Sd2, &cfg).is_err());
    }

    #[test]
    fn vacuous_window_fails() {
        let cfg = SuiteConfig {
            cutoff: 1,
            budget: Some(2),
            ..Default::default()
        };
        let out = run_suite(Suite::Commutant, &cfg).unwrap();
        assert!(!out.passed);
        assert!(out.results().any(|r| r.verdict == Verdict::Vacuous));
        let thin = run_suite(
            Suite::Commutant,
            &SuiteConfig {
                cutoff: 1,
                ..Default::default()
            },
        )
        .unwrap();
        assert!(thin.notes.iter().any(|n| n.contains("total grade 0")));
    }
}
