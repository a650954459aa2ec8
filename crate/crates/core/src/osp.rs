//! osp(1|2) discrete-series representations, the P-twisted coproduct and the
//! Clebsch–Gordan algebra.

use std::sync::Arc;

use num_bigint::BigInt;
use num_rational::BigRational;

use crate::error::{Error, Result};
use crate::operator::Operator;
use crate::oscillators::{parabose_mode, Basis};
use crate::presentation::{builtin_presentation, check_identities, verify, CheckOptions, RealizationMap};
use crate::report::RelationReport;
use crate::scalar::{Gauss, Scalar};
use crate::space::GradedSpace;

/// `A₀, A₊, A₋, P` acting on one boson mode of a space.
#[derive(Clone)]
pub struct OspOps<S> {
    pub a0: Operator<S>,
    pub ap: Operator<S>,
    pub am: Operator<S>,
    pub p: Operator<S>,
}

impl<S: Scalar> OspOps<S> {
    /// sCasimir `A₊A₋ − A₀ + ½`.
    pub fn s_casimir(&self) -> Result<Operator<S>> {
        Ok(self
            .ap
            .compose(&self.am)?
            .sub(&self.a0)?
            .shift(&S::from_gauss(&Gauss::ratio(1, 2))))
    }

    /// Casimir `Q = S·P`.
    pub fn casimir(&self) -> Result<Operator<S>> {
        self.s_casimir()?.compose(&self.p)
    }

    fn symbols(&self) -> [(&'static str, &Operator<S>); 4] {
        [("A0", &self.a0), ("Ap", &self.ap), ("Am", &self.am), ("P", &self.p)]
    }
}

fn check_eps(eps: i8) -> Result<()> {
    if eps == 1 || eps == -1 {
        Ok(())
    } else {
        Err(Error::InvalidParameter(format!("epsilon must be +1 or -1, got {eps}")))
    }
}

/// Irrep `(μ, ε)` on boson mode `mode`: `A₀|n⟩ = (n + μ + ½)|n⟩`,
/// `P|n⟩ = ε(−1)ⁿ|n⟩` and the parabose ladder for `A±`.
pub fn osp_ops<S: Scalar>(
    space: &Arc<GradedSpace>,
    mode: usize,
    mu: &BigRational,
    eps: i8,
    basis: Basis,
) -> Result<OspOps<S>> {
    check_eps(eps)?;
    let (am, ap) = parabose_mode::<S>(space, mode, mu, basis)?;
    let half = BigRational::new(BigInt::from(1), BigInt::from(2));
    let a0 = Operator::diagonal(space, |c| {
        let n = BigRational::from_integer(BigInt::from(space.boson_occupation(c, mode)));
        S::from_rational(&(n + mu + &half))
    });
    let sign = S::from_i64(eps as i64);
    let p = Operator::diagonal(space, |c| {
        if space.boson_occupation(c, mode).is_multiple_of(2) {
            sign.clone()
        } else {
            sign.negated()
        }
    });
    Ok(OspOps { a0, ap, am, p })
}

pub struct Irrep<S> {
    pub mu: BigRational,
    pub eps: i8,
    pub basis: Basis,
    pub space: Arc<GradedSpace>,
    pub ops: OspOps<S>,
}

/// Truncated discrete-series irrep on `|0⟩, …, |cutoff⟩`.
pub fn build_irrep<S: Scalar>(mu: &BigRational, eps: i8, cutoff: u32, basis: Basis) -> Result<Irrep<S>> {
    let space = GradedSpace::new(1, cutoff, 0)?;
    let ops = osp_ops(&space, 0, mu, eps, basis)?;
    Ok(Irrep {
        mu: mu.clone(),
        eps,
        basis,
        space,
        ops,
    })
}

fn minus_eps_mu(mu: &BigRational, eps: i8) -> Gauss {
    Gauss::real(-(mu * BigRational::from_integer(BigInt::from(eps))))
}

/// osp(1|2) relations with sCasimir properties, plus `Q = −εμ`.
pub fn check_irrep<S: Scalar>(ir: &Irrep<S>, opts: &CheckOptions) -> Result<RelationReport> {
    let mut report = check_osp12(&ir.ops, opts)?;
    report.name = format!("osp12[mu={},eps={}]", ir.mu, ir.eps);
    let q = format!("(Ap*Am - A0 + 1/2)*P = {}", minus_eps_mu(&ir.mu, ir.eps));
    report.extend(check_identities("irrep", &ir.ops.symbols(), &[("Q", &q)], opts)?);
    Ok(report)
}

/// The `osp12` presentation for any realization of its generators.
pub fn check_osp12<S: Scalar>(ops: &OspOps<S>, opts: &CheckOptions) -> Result<RelationReport> {
    let pres = builtin_presentation("osp12")?;
    let mut map = RealizationMap::new(&pres);
    for (name, op) in ops.symbols() {
        map.assign(name, op.clone())?;
    }
    map.with_options(opts);
    verify(&map)
}

/// Two irreps on one space (boson mode 0 and 1) with coproduct images and
/// the Clebsch–Gordan algebra generators.
pub struct TensorRep<S> {
    pub space: Arc<GradedSpace>,
    pub basis: Basis,
    pub mu: [BigRational; 2],
    pub eps: [i8; 2],
    pub factor: [OspOps<S>; 2],
    /// `Q⁽¹⁾ = Q ⊗ 1`, `Q⁽²⁾ = 1 ⊗ Q`
    pub q: [Operator<S>; 2],
    /// `Δ(A₀), Δ(A±) = A± ⊗ P + 1 ⊗ A±, Δ(P) = P ⊗ P`
    pub delta: OspOps<S>,
    /// `Δ(Q) = (Δ(A₊)Δ(A₋) − Δ(A₀) + ½)Δ(P)`
    pub delta_q: Operator<S>,
    /// `½(A₀ ⊗ 1 − 1 ⊗ A₀)`
    pub kappa1: Operator<S>,
    /// `Δ(Q)Δ(P)`
    pub kappa2: Operator<S>,
    /// `[κ₁, κ₂]`
    pub kappa3: Operator<S>,
    /// `P ⊗ 1`
    pub p: Operator<S>,
}

pub fn build_tensor<S: Scalar>(ir1: &Irrep<S>, ir2: &Irrep<S>) -> Result<TensorRep<S>> {
    if ir1.basis != ir2.basis || ir1.space.cutoff() != ir2.space.cutoff() {
        return Err(Error::InvalidParameter("irreps must share cutoff and basis".into()));
    }
    build_tensor_from(&ir1.mu, ir1.eps, &ir2.mu, ir2.eps, ir1.space.cutoff(), ir1.basis)
}

pub fn build_tensor_from<S: Scalar>(
    mu1: &BigRational,
    eps1: i8,
    mu2: &BigRational,
    eps2: i8,
    cutoff: u32,
    basis: Basis,
) -> Result<TensorRep<S>> {
    let space = GradedSpace::new(2, cutoff, 0)?;
    let f1 = osp_ops::<S>(&space, 0, mu1, eps1, basis)?;
    let f2 = osp_ops::<S>(&space, 1, mu2, eps2, basis)?;
    let delta = OspOps {
        a0: f1.a0.add(&f2.a0)?,
        ap: f1.ap.compose(&f2.p)?.add(&f2.ap)?,
        am: f1.am.compose(&f2.p)?.add(&f2.am)?,
        p: f1.p.compose(&f2.p)?,
    };
    let delta_q = delta.casimir()?;
    let half = S::from_gauss(&Gauss::ratio(1, 2));
    let kappa1 = f1.a0.sub(&f2.a0)?.scale(&half);
    let kappa2 = delta_q.compose(&delta.p)?;
    let kappa3 = kappa1.commutator(&kappa2)?;
    let q = [f1.casimir()?, f2.casimir()?];
    Ok(TensorRep {
        p: f1.p.clone(),
        space,
        basis,
        mu: [mu1.clone(), mu2.clone()],
        eps: [eps1, eps2],
        factor: [f1, f2],
        q,
        delta,
        delta_q,
        kappa1,
        kappa2,
        kappa3,
    })
}

impl<S: Scalar> TensorRep<S> {
    fn symbols(&self) -> Vec<(&'static str, &Operator<S>)> {
        let [f1, f2] = &self.factor;
        vec![
            ("A01", &f1.a0),
            ("Ap1", &f1.ap),
            ("Am1", &f1.am),
            ("P1", &f1.p),
            ("A02", &f2.a0),
            ("Ap2", &f2.ap),
            ("Am2", &f2.am),
            ("P2", &f2.p),
            ("Q1", &self.q[0]),
            ("Q2", &self.q[1]),
            ("DA0", &self.delta.a0),
            ("DAp", &self.delta.ap),
            ("DAm", &self.delta.am),
            ("DP", &self.delta.p),
            ("DQ", &self.delta_q),
        ]
    }
}

/// Closed form of the coproduct Casimir.
pub const COPRODUCT_CASIMIR: &str = "(DAp*DAm - DA0 + 1/2)*DP = (Am1*Ap2 - Ap1*Am2)*P1 + Q1*P2 + Q2*P1 - 1/2*P1*P2";

/// Perturbed closed form with `P⁽²⁾` on the first term; must not vanish.
pub const COPRODUCT_CASIMIR_TRANSPOSED: &str =
    "(DAp*DAm - DA0 + 1/2)*DP = (Am1*Ap2 - Ap1*Am2)*P2 + Q1*P2 + Q2*P1 - 1/2*P1*P2";

/// Closed-form coproduct Casimir, `Δ(P)² = 1`, and `Δ(Q)` commuting with the
/// coproduct images, followed by the transposed-`P` negative control.
pub fn check_coproduct_casimir<S: Scalar>(t: &TensorRep<S>, opts: &CheckOptions) -> Result<RelationReport> {
    let ids = [
        ("closed-form", COPRODUCT_CASIMIR),
        ("DP*DP", "DP*DP = 1"),
        ("[DQ,DA0]", "[DQ,DA0] = 0"),
        ("[DQ,DAp]", "[DQ,DAp] = 0"),
        ("[DQ,DAm]", "[DQ,DAm] = 0"),
        ("[DQ,DP]", "[DQ,DP] = 0"),
    ];
    let mut report = check_identities("coproduct", &t.symbols(), &ids, opts)?;
    let control = check_identities(
        "control",
        &t.symbols(),
        &[("coproduct-transposed-P", COPRODUCT_CASIMIR_TRANSPOSED)],
        opts,
    )?;
    report.extend(control.negative_control());
    Ok(report)
}

/// [`check_osp12`] with report name and tags rewritten to `osp12[label]`.
pub fn check_osp12_labelled<S: Scalar>(ops: &OspOps<S>, label: &str, opts: &CheckOptions) -> Result<RelationReport> {
    let mut r = check_osp12(ops, opts)?;
    r.name = format!("osp12[{label}]");
    for x in &mut r.results {
        x.tag = x.tag.replacen("osp12:", &format!("osp12[{label}]:"), 1);
    }
    Ok(r)
}

/// The coproduct is a homomorphism: `Δ(A₀), Δ(A±), Δ(P)` satisfy `osp12`.
pub fn check_coproduct_osp12<S: Scalar>(t: &TensorRep<S>, opts: &CheckOptions) -> Result<RelationReport> {
    check_osp12_labelled(&t.delta, "coproduct", opts)
}

/// The κ-relations (`cg_kappa` or its sign variant) with centrals
/// `Q⁽¹⁾, Q⁽²⁾, P⁽¹²⁾, A₀⁽¹²⁾`.
pub fn check_kappa_algebra_with<S: Scalar>(
    t: &TensorRep<S>,
    presentation: &str,
    opts: &CheckOptions,
) -> Result<RelationReport> {
    let pres = builtin_presentation(presentation)?;
    let mut map = RealizationMap::new(&pres);
    for (name, op) in [
        ("kappa1", &t.kappa1),
        ("kappa2", &t.kappa2),
        ("kappa3", &t.kappa3),
        ("p", &t.p),
        ("Q1", &t.q[0]),
        ("Q2", &t.q[1]),
        ("P12", &t.delta.p),
        ("A0_12", &t.delta.a0),
    ] {
        map.assign(name, op.clone())?;
    }
    map.with_options(opts);
    verify(&map)
}

pub fn check_kappa_algebra<S: Scalar>(t: &TensorRep<S>, opts: &CheckOptions) -> Result<RelationReport> {
    check_kappa_algebra_with(t, "cg_kappa", opts)
}

/// `μ₁₂(j) = μ₁ + μ₂ + j + ½`
pub fn coupled_mu(mu1: &BigRational, mu2: &BigRational, j: u32) -> BigRational {
    mu1 + mu2 + BigRational::new(BigInt::from(2 * j as i64 + 1), BigInt::from(2))
}

/// `ε₁₂(j) = (−1)ʲ ε₁ ε₂`
pub fn coupled_eps(eps1: i8, eps2: i8, j: u32) -> i8 {
    if j.is_multiple_of(2) {
        eps1 * eps2
    } else {
        -eps1 * eps2
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::report::Verdict;
    use crate::scalar::C64;

    fn q(n: i64, d: i64) -> BigRational {
        BigRational::new(n.into(), d.into())
    }

    #[test]
    fn irrep_exact() {
        for (mu, eps) in [(q(1, 3), 1), (q(1, 5), -1), (q(0, 1), 1)] {
            let ir = build_irrep::<Gauss>(&mu, eps, 8, Basis::Analytic).unwrap();
            let r = check_irrep(&ir, &CheckOptions::default()).unwrap();
            assert!(r.passed && r.all_exact_zero(), "{r:#?}");
            assert!(r.results.iter().all(|x| x.budget <= 3));
        }
    }

    #[test]
    fn irrep_float_orthonormal() {
        let ir = build_irrep::<C64>(&q(1, 3), 1, 8, Basis::Orthonormal).unwrap();
        let r = check_irrep(&ir, &CheckOptions::default()).unwrap();
        assert!(r.passed, "{r:#?}");
    }

    #[test]
    fn anticommutator_diagonal() {
        let ir = build_irrep::<Gauss>(&q(1, 3), 1, 6, Basis::Analytic).unwrap();
        let a = ir.ops.ap.anticommutator(&ir.ops.am).unwrap();
        for n in 0..6i64 {
            // [n]_μ + [n+1]_μ = 2n + 2μ + 1
            assert_eq!(
                a.entry_or_zero(n as usize, n as usize),
                &Gauss::from(2 * n + 1) + &Gauss::ratio(2, 3)
            );
        }
    }

    #[test]
    fn tensor_exact() {
        let t = build_tensor_from::<Gauss>(&q(1, 3), 1, &q(1, 5), 1, 8, Basis::Analytic).unwrap();
        let opts = CheckOptions::default();
        let c = check_coproduct_casimir(&t, &opts).unwrap();
        assert!(c.passed && c.all_exact_zero(), "{c:#?}");
        let ctl = c.get("control:coproduct-transposed-P").unwrap();
        assert!(matches!(ctl.verdict, Verdict::Residual { max_abs } if max_abs > 0.0));
        assert!(check_coproduct_osp12(&t, &opts).unwrap().all_exact_zero());
        for c in t.space.window(0).unwrap() {
            let g = t.space.grade(c) as i64;
            assert_eq!(
                t.delta.a0.entry_or_zero(c, c),
                &(&Gauss::from(g + 1) + &Gauss::ratio(1, 3)) + &Gauss::ratio(1, 5)
            );
        }
    }

    #[test]
    fn kappa_exact_and_variant_fails() {
        let t = build_tensor_from::<Gauss>(&q(1, 3), 1, &q(1, 5), -1, 6, Basis::Analytic).unwrap();
        let opts = CheckOptions::default();
        let k = check_kappa_algebra(&t, &opts).unwrap();
        assert!(k.passed && k.all_exact_zero(), "{k:#?}");
        let variant = check_kappa_algebra_with(&t, "cg_kappa_variant", &opts).unwrap();
        assert!(!variant.passed);
    }

    #[test]
    fn degenerate_coproduct() {
        let t = build_tensor_from::<Gauss>(&q(0, 1), 1, &q(0, 1), 1, 6, Basis::Analytic).unwrap();
        assert!(check_coproduct_casimir(&t, &CheckOptions::default()).unwrap().passed);
    }

    #[test]
    fn coupled_labels() {
        assert_eq!(coupled_mu(&q(1, 3), &q(1, 5), 2), q(1, 3) + q(1, 5) + q(5, 2));
        assert_eq!(coupled_eps(1, -1, 1), 1);
        assert_eq!(coupled_eps(1, 1, 2), 1);
        assert!(build_irrep::<Gauss>(&q(1, 3), 0, 4, Basis::Analytic).is_err());
    }
}
