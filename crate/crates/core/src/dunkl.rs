//! Schwinger–Dunkl algebra sd(2) from two parabose oscillators and its
//! identification with the dual −1 Hahn algebra.

use std::sync::Arc;

use num_rational::BigRational;

use crate::error::Result;
use crate::operator::Operator;
use crate::oscillators::{build_parabose, Basis};
use crate::presentation::{builtin_presentation, verify, CheckOptions, RealizationMap};
use crate::report::RelationReport;
use crate::scalar::{Gauss, Scalar};
use crate::space::GradedSpace;

pub struct Sd2Realization<S> {
    pub space: Arc<GradedSpace>,
    pub mu1: BigRational,
    pub mu2: BigRational,
    pub j1: Operator<S>,
    pub j2: Operator<S>,
    pub j3: Operator<S>,
    pub r1: Operator<S>,
    pub r2: Operator<S>,
    /// `H₁ + H₂` with `H_i = ½{a_i†, a_i}`.
    pub h12: Operator<S>,
    /// `R₁R₂`
    pub r12: Operator<S>,
}

/// Builds `J₁ = ½(a₁†a₂ + a₁a₂†)`, `J₂ = (a₁†a₂ − a₁a₂†)/2i`, `J₃ = ½(H₁ − H₂)`
/// on two commuting parabose factors truncated at total grade `cutoff`.
pub fn build_sd2<S: Scalar>(
    mu1: &BigRational,
    mu2: &BigRational,
    cutoff: u32,
    basis: Basis,
) -> Result<Sd2Realization<S>> {
    if cutoff < 3 {
        return Err(crate::Error::InvalidParameter(format!(
            "sd2 needs cutoff >= 3, got {cutoff}"
        )));
    }
    let space = GradedSpace::new(2, cutoff, 0)?;
    let p = build_parabose::<S>(&space, &[mu1.clone(), mu2.clone()], basis)?;
    let half = S::from_gauss(&Gauss::ratio(1, 2));
    let h = |k: usize| -> Result<Operator<S>> { Ok(p.adag[k].anticommutator(&p.a[k])?.scale(&half)) };
    let (h1, h2) = (h(0)?, h(1)?);
    let hop = p.adag[0].compose(&p.a[1])?;
    let hop_back = p.a[0].compose(&p.adag[1])?;
    let j1 = hop.add(&hop_back)?.scale(&half);
    let j2 = hop
        .sub(&hop_back)?
        .scale(&S::from_gauss(&-(&Gauss::i() * &Gauss::ratio(1, 2))));
    let j3 = h1.sub(&h2)?.scale(&half);
    let r12 = p.reflection[0].compose(&p.reflection[1])?;
    Ok(Sd2Realization {
        h12: h1.add(&h2)?,
        space,
        mu1: mu1.clone(),
        mu2: mu2.clone(),
        j1,
        j2,
        j3,
        r1: p.reflection[0].clone(),
        r2: p.reflection[1].clone(),
        r12,
    })
}

/// Verifies the sd(2) relations with `H₁₂` and `R₁₂` as centrals.
pub fn check_sd2<S: Scalar>(r: &Sd2Realization<S>, opts: &CheckOptions) -> Result<RelationReport> {
    let pres = builtin_presentation("sd2")?;
    let mut map = RealizationMap::new(&pres);
    for (name, op) in [
        ("J1", &r.j1),
        ("J2", &r.j2),
        ("J3", &r.j3),
        ("R1", &r.r1),
        ("R2", &r.r2),
        ("H12", &r.h12),
        ("R12", &r.r12),
    ] {
        map.assign(name, op.clone())?;
    }
    map.set_param("mu1", &Gauss::real(r.mu1.clone()))?;
    map.set_param("mu2", &Gauss::real(r.mu2.clone()))?;
    map.with_options(opts);
    verify(&map)
}

/// Dual −1 Hahn generators built from an sd(2) realization.
pub struct HahnImage<S> {
    pub k1: Operator<S>,
    pub k2: Operator<S>,
    pub k3: Operator<S>,
    pub p: Operator<S>,
    pub nu: Operator<S>,
    pub sigma: Operator<S>,
    pub rho: Operator<S>,
}

/// `P = R₁`, `ν = μ₁ + μ₂R₁₂`, `ρ = 2H₁₂`, `σ = 2μ₁ρ`, and
/// `K₁ = −(J₃ + ρ/4)`, `K₂ = −2J₂ − νP − ½`, `K₃ = [K₁, K₂]`.
///
/// `mirrored` exchanges the roles of the two modes: `P = R₂`,
/// `ν = μ₂ + μ₁R₁₂`, `σ = 2μ₂ρ`, with `J₂, J₃` replaced by `−J₂, −J₃`.
pub fn hahn_image<S: Scalar>(r: &Sd2Realization<S>, mirrored: bool) -> Result<HahnImage<S>> {
    let q = |x: &BigRational| S::from_rational(x);
    let s = |n: i64, d: i64| S::from_gauss(&Gauss::ratio(n, d));
    let (p, m_a, m_b, sign) = if mirrored {
        (&r.r2, &r.mu2, &r.mu1, s(-1, 1))
    } else {
        (&r.r1, &r.mu1, &r.mu2, s(1, 1))
    };
    let j2 = r.j2.scale(&sign);
    let j3 = r.j3.scale(&sign);
    let nu = r.r12.scale(&q(m_b)).shift(&q(m_a));
    let rho = r.h12.scale(&s(2, 1));
    let sigma = rho.scale(&q(m_a).times(&s(2, 1)));
    let k1 = j3.add(&rho.scale(&s(1, 4)))?.scale(&s(-1, 1));
    let k2 = j2.scale(&s(-2, 1)).sub(&nu.compose(p)?)?.shift(&s(-1, 2));
    let k3 = k1.commutator(&k2)?;
    Ok(HahnImage {
        k1,
        k2,
        k3,
        p: p.clone(),
        nu,
        sigma,
        rho,
    })
}

/// Verifies `presentation` (a dual −1 Hahn variant) on the image of
/// [`hahn_image`], including the centrality audit of `ν, σ, ρ`.
pub fn identify_dual_hahn_with<S: Scalar>(
    r: &Sd2Realization<S>,
    presentation: &str,
    mirrored: bool,
    opts: &CheckOptions,
) -> Result<RelationReport> {
    let img = hahn_image(r, mirrored)?;
    let pres = builtin_presentation(presentation)?;
    let mut map = RealizationMap::new(&pres);
    for (name, op) in [
        ("K1", img.k1),
        ("K2", img.k2),
        ("K3", img.k3),
        ("P", img.p),
        ("nu", img.nu),
        ("sigma", img.sigma),
        ("rho", img.rho),
    ] {
        map.assign(name, op)?;
    }
    map.with_options(opts);
    let mut report = verify(&map)?;
    report.notes.push(if mirrored {
        "identification: P = R2, nu = mu2 + mu1*R12, rho = 2*H12, sigma = 2*mu2*rho, K1 = J3 - rho/4, K2 = 2*J2 - nu*P - 1/2, K3 = [K1,K2]".into()
    } else {
        "identification: P = R1, nu = mu1 + mu2*R12, rho = 2*H12, sigma = 2*mu1*rho, K1 = -(J3 + rho/4), K2 = -2*J2 - nu*P - 1/2, K3 = [K1,K2]".into()
    });
    Ok(report)
}

/// The stated identification against the gating `dual_m1_hahn` presentation.
pub fn identify_dual_hahn<S: Scalar>(r: &Sd2Realization<S>, opts: &CheckOptions) -> Result<RelationReport> {
    identify_dual_hahn_with(r, "dual_m1_hahn", false, opts)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::report::Verdict;

    fn q(n: i64, d: i64) -> BigRational {
        BigRational::new(n.into(), d.into())
    }

    fn exact(mu1: BigRational, mu2: BigRational, cutoff: u32) -> Sd2Realization<Gauss> {
        build_sd2(&mu1, &mu2, cutoff, Basis::Analytic).unwrap()
    }

    #[test]
    fn j3_spectrum() {
        let r = exact(q(1, 3), q(1, 5), 4);
        for c in r.space.window(1).unwrap() {
            let (n1, n2) = (
                r.space.boson_occupation(c, 0) as i64,
                r.space.boson_occupation(c, 1) as i64,
            );
            let expect = &Gauss::ratio(n1 - n2, 2) + &Gauss::ratio(1, 3 * 2) + -Gauss::ratio(1, 5 * 2);
            assert_eq!(r.j3.entry_or_zero(c, c), expect);
            assert_eq!(r.j3.column(c).len(), 1);
        }
    }

    #[test]
    fn schwinger_limit() {
        let r = exact(q(0, 1), q(0, 1), 4);
        let c = r.j1.commutator(&r.j2).unwrap().sub(&r.j3.scale(&Gauss::i())).unwrap();
        assert_eq!(c.is_zero_on_window(c.required_budget()).verdict, Verdict::ExactZero);
    }

    #[test]
    fn sd2_relations_exact() {
        let r = exact(q(1, 3), q(1, 5), 6);
        let rep = check_sd2(&r, &CheckOptions::default()).unwrap();
        assert!(rep.passed && rep.all_exact_zero(), "{rep:#?}");
        assert!(rep.get("sd2:[J3,R1]").is_some());
    }

    #[test]
    fn identification_exact() {
        let r = exact(q(1, 3), q(1, 5), 6);
        let opts = CheckOptions::default();
        let rep = identify_dual_hahn(&r, &opts).unwrap();
        assert!(rep.passed && rep.all_exact_zero(), "{rep:#?}");
        assert_eq!(rep.results.len(), 6 + 3 * 4);
        let mirrored = identify_dual_hahn_with(&r, "dual_m1_hahn", true, &opts).unwrap();
        assert!(mirrored.all_exact_zero());
        let variant = identify_dual_hahn_with(&r, "dual_m1_hahn_variant", false, &opts).unwrap();
        assert!(!variant.passed);
        let bad = variant.get("dual_m1_hahn_variant:[K2,K3]").unwrap();
        assert!(bad.verdict.max_abs() > 0.0);
    }

    #[test]
    fn k3_anticommutes_with_p_at_budget_5() {
        let r = exact(q(1, 3), q(1, 5), 6);
        let img = hahn_image(&r, false).unwrap();
        let a = img.k3.anticommutator(&img.p).unwrap();
        assert!(a.required_budget() <= 5);
        assert_eq!(a.is_zero_on_window(5).verdict, Verdict::ExactZero);
    }

    #[test]
    fn degenerate_parameters() {
        let r = exact(q(0, 1), q(0, 1), 3);
        let rep = identify_dual_hahn(&r, &CheckOptions::default()).unwrap();
        assert!(rep.all_exact_zero());
    }
}
