//! Three osp(1|2) copies inside the spinor model and their dual pairing with
//! the rotations `J_{μν}`.

use crate::error::{Error, Result};
use crate::operator::Operator;
use crate::oscillators::clifford_product;
use crate::osp::{check_osp12_labelled, OspOps};
use crate::presentation::{builtin_presentation, check_identities, verify, CheckOptions, RealizationMap};
use crate::report::RelationReport;
use crate::scalar::{Gauss, Scalar};
use crate::spinor::{CommutantGenerators, Pair, SpinorModel};

/// `𝒜₋^S = Σ a_μγ_μ`, `𝒜₊^S = Σ a_μ†γ_μ`, `𝒜₀^S = ½Σ{a_μ†, a_μ}`,
/// `𝒫^S` and `𝒬^S = (𝒜₊^S𝒜₋^S − 𝒜₀^S + ½)𝒫^S` for one index set.
pub struct OspCopy<S> {
    /// 0-based, ascending.
    pub modes: Vec<usize>,
    pub ops: OspOps<S>,
    pub q: Operator<S>,
}

impl<S> OspCopy<S> {
    /// 1-based digits, e.g. `"12"`.
    pub fn label(&self) -> String {
        self.modes.iter().map(|m| (m + 1).to_string()).collect()
    }
}

pub struct HoweRealization<'m, S> {
    pub model: &'m SpinorModel<S>,
    pub gens: &'m CommutantGenerators<S>,
    /// First block, second block, all modes.
    pub copies: [OspCopy<S>; 3],
}

fn build_copy<S: Scalar>(model: &SpinorModel<S>, modes: Vec<usize>) -> Result<OspCopy<S>> {
    let (b, f) = (&model.bosons, &model.fermions);
    let half = S::from_gauss(&Gauss::ratio(1, 2));
    let mut am = Operator::zero(&model.space);
    let mut ap = Operator::zero(&model.space);
    let mut a0 = Operator::zero(&model.space);
    for &m in &modes {
        am = am.add(&b.a[m].compose(&f.gamma[m])?)?;
        ap = ap.add(&b.adag[m].compose(&f.gamma[m])?)?;
        a0 = a0.add(&b.adag[m].anticommutator(&b.a[m])?.scale(&half))?;
    }
    let ops = OspOps {
        a0,
        ap,
        am,
        p: clifford_product(f, &modes)?,
    };
    let q = ops.casimir()?;
    Ok(OspCopy { modes, ops, q })
}

pub fn build_howe<'m, S: Scalar>(
    model: &'m SpinorModel<S>,
    gens: &'m CommutantGenerators<S>,
) -> Result<HoweRealization<'m, S>> {
    let copies = [
        build_copy(model, model.first_block().collect())?,
        build_copy(model, model.second_block().collect())?,
        build_copy(model, (0..model.modes()).collect())?,
    ];
    Ok(HoweRealization { model, gens, copies })
}

fn require_four_modes<S>(h: &HoweRealization<'_, S>) -> Result<()> {
    if h.model.partition != (2, 2) {
        return Err(Error::InvalidParameter(format!(
            "the dictionary is stated for partition (2,2), got {:?}",
            h.model.partition
        )));
    }
    Ok(())
}

fn j_name((a, b): Pair) -> String {
    format!("J{}{}", a + 1, b + 1)
}

impl<S: Scalar> HoweRealization<'_, S> {
    /// `A0_12, Ap_12, Am_12, P_12, Q_12`, … for every copy, then `H, K1, K2,
    /// K3, r, R` and every `J_{μν}`.
    fn symbols(&self) -> (Vec<String>, Vec<&Operator<S>>) {
        let mut names = Vec::new();
        let mut ops = Vec::new();
        for c in &self.copies {
            let l = c.label();
            for (n, op) in [
                ("A0", &c.ops.a0),
                ("Ap", &c.ops.ap),
                ("Am", &c.ops.am),
                ("P", &c.ops.p),
                ("Q", &c.q),
            ] {
                names.push(format!("{n}_{l}"));
                ops.push(op);
            }
        }
        let g = self.gens;
        for (n, op) in [
            ("H", &self.model.h),
            ("K1", &g.k1),
            ("K2", &g.k2),
            ("K3", &g.k3),
            ("r", &g.r),
            ("R", &g.big_r),
        ] {
            names.push(n.into());
            ops.push(op);
        }
        for (&p, j) in &self.model.j {
            names.push(j_name(p));
            ops.push(j);
        }
        (names, ops)
    }

    fn check(&self, name: &str, ids: &[(String, String)], opts: &CheckOptions) -> Result<RelationReport> {
        let (names, ops) = self.symbols();
        let symbols: Vec<(&str, &Operator<S>)> = names.iter().map(String::as_str).zip(ops).collect();
        let ids: Vec<(&str, &str)> = ids.iter().map(|(a, b)| (a.as_str(), b.as_str())).collect();
        check_identities(name, &symbols, &ids, opts)
    }
}

/// The `osp12` presentation for each of the three copies.
pub fn check_howe_osp12<S: Scalar>(h: &HoweRealization<'_, S>, opts: &CheckOptions) -> Result<RelationReport> {
    let mut report = RelationReport::new("osp12[howe]", S::NAME, h.model.space.dim(), h.model.space.cutoff());
    for c in &h.copies {
        report.extend(check_osp12_labelled(&c.ops, &c.label(), opts)?);
    }
    Ok(report)
}

/// The seven identities matching osp(1|2) data with the commutant.
pub fn check_dictionary<S: Scalar>(h: &HoweRealization<'_, S>, opts: &CheckOptions) -> Result<RelationReport> {
    require_four_modes(h)?;
    let ids = [
        ("A0_12+A0_34=H", "A0_12 + A0_34 = H"),
        ("A0_12-A0_34=2K1", "A0_12 - A0_34 = 2*K1"),
        ("P_12=r", "P_12 = r"),
        ("P_12*P_34=R", "P_12*P_34 = R"),
        ("Q_12=J12", "Q_12 = J12"),
        ("Q_34=J34", "Q_34 = J34"),
        ("Q_1234=K2*P_12*P_34", "Q_1234 = K2*P_12*P_34"),
    ];
    let ids: Vec<(String, String)> = ids.iter().map(|(a, b)| (a.to_string(), b.to_string())).collect();
    h.check("dictionary", &ids, opts)
}

/// `[J_{μν}, 𝒜•^S] = 0` for `μ, ν ∈ S` when `S` is a block, and for every
/// pair when `S` is all modes. The mixed-block commutator `[J₁₃, 𝒜₊^{12}]`
/// is appended as a negative control.
pub fn check_commuting_actions<S: Scalar>(h: &HoweRealization<'_, S>, opts: &CheckOptions) -> Result<RelationReport> {
    let mut ids = Vec::new();
    for c in &h.copies {
        let l = c.label();
        let pairs = h
            .model
            .j
            .keys()
            .filter(|(a, b)| c.modes.contains(a) && c.modes.contains(b));
        for &p in pairs {
            for x in ["Ap", "Am", "A0"] {
                let s = format!("[{},{x}_{l}]", j_name(p));
                ids.push((s.clone(), format!("{s} = 0")));
            }
        }
    }
    let mut report = h.check("commuting", &ids, opts)?;
    let first = &h.copies[0];
    let outside = h.model.second_block().next().expect("second block is nonempty");
    let pair = (first.modes[0], outside);
    let s = format!("[{},Ap_{}]", j_name(pair), first.label());
    let control = h.check("control", &[(s.clone(), format!("{s} = 0"))], opts)?;
    report.extend(control.negative_control());
    Ok(report)
}

/// `C^S = Σ_{μ<ν∈S} J_{μν}²` against `(𝒬^S)²`, with the `−¾` shift for all
/// four modes, followed by the unshifted four-mode negative control.
pub fn check_casimir_correspondence<S: Scalar>(
    h: &HoweRealization<'_, S>,
    opts: &CheckOptions,
) -> Result<RelationReport> {
    require_four_modes(h)?;
    let casimir = |modes: &[usize]| -> String {
        let terms: Vec<String> = h
            .model
            .j
            .keys()
            .filter(|(a, b)| modes.contains(a) && modes.contains(b))
            .map(|&p| format!("{0}*{0}", j_name(p)))
            .collect();
        terms.join(" + ")
    };
    let all = casimir(&h.copies[2].modes);
    let ids = vec![
        (
            "C_12".to_string(),
            format!("{} = Q_12*Q_12", casimir(&h.copies[0].modes)),
        ),
        (
            "C_34".to_string(),
            format!("{} = Q_34*Q_34", casimir(&h.copies[1].modes)),
        ),
        ("C_1234".to_string(), format!("{all} = Q_1234*Q_1234 - 3/4")),
    ];
    let mut report = h.check("casimir", &ids, opts)?;
    let control = h.check(
        "control",
        &[("C_1234-unshifted".to_string(), format!("{all} = Q_1234*Q_1234"))],
        opts,
    )?;
    report.extend(control.negative_control());
    Ok(report)
}

/// `(𝒬^S)²` commutes with every `J_{μν}` inside `S`.
pub fn check_squared_casimir<S: Scalar>(h: &HoweRealization<'_, S>, opts: &CheckOptions) -> Result<RelationReport> {
    let mut ids = Vec::new();
    for c in &h.copies {
        let l = c.label();
        for &p in h
            .model
            .j
            .keys()
            .filter(|(a, b)| c.modes.contains(a) && c.modes.contains(b))
        {
            ids.push((
                format!("[Q_{l}^2,{}]", j_name(p)),
                format!("[Q_{l}*Q_{l},{}] = 0", j_name(p)),
            ));
        }
    }
    h.check("squared_casimir", &ids, opts)
}

/// The κ-relations on the spinor space with `κ₁ = ½(𝒜₀^{12} − 𝒜₀^{34})`,
/// `κ₂ = 𝒬^{1234}𝒫^{12}𝒫^{34}`, `p = 𝒫^{12}` and centrals `𝒬^{12}, 𝒬^{34},
/// 𝒫^{12}𝒫^{34}, 𝒜₀^{1234}`.
pub fn check_kappa_bridge<S: Scalar>(h: &HoweRealization<'_, S>, opts: &CheckOptions) -> Result<RelationReport> {
    require_four_modes(h)?;
    let [c12, c34, all] = &h.copies;
    let half = S::from_gauss(&Gauss::ratio(1, 2));
    let p12 = c12.ops.p.compose(&c34.ops.p)?;
    let kappa1 = c12.ops.a0.sub(&c34.ops.a0)?.scale(&half);
    let kappa2 = all.q.compose(&p12)?;
    let kappa3 = kappa1.commutator(&kappa2)?;
    let pres = builtin_presentation("cg_kappa")?;
    let mut map = RealizationMap::new(&pres);
    for (name, op) in [
        ("kappa1", &kappa1),
        ("kappa2", &kappa2),
        ("kappa3", &kappa3),
        ("p", &c12.ops.p),
        ("Q1", &c12.q),
        ("Q2", &c34.q),
        ("P12", &p12),
        ("A0_12", &all.ops.a0),
    ] {
        map.assign(name, op.clone())?;
    }
    map.with_options(opts);
    let mut report = verify(&map)?;
    report.name = "cg_kappa[spinor]".into();
    for x in &mut report.results {
        x.tag = x.tag.replacen("cg_kappa:", "cg_kappa[spinor]:", 1);
    }
    Ok(report)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::report::{CheckKind, Verdict};
    use crate::spinor::{build_commutant, build_spinor_model};

    #[test]
    fn howe_suite_exact() {
        let m = build_spinor_model::<Gauss>(2, 2, 3).unwrap();
        let g = build_commutant(&m).unwrap();
        let h = build_howe(&m, &g).unwrap();
        let opts = CheckOptions::default();
        assert!(h.copies[2].ops.a0.sub(&m.h).unwrap().is_zero());

        let osp = check_howe_osp12(&h, &opts).unwrap();
        assert!(osp.passed && osp.all_exact_zero(), "{osp:#?}");
        assert_eq!(osp.results.len(), 30);

        let d = check_dictionary(&h, &opts).unwrap();
        assert!(d.passed && d.all_exact_zero(), "{d:#?}");
        assert_eq!(d.results.len(), 7);

        let c = check_commuting_actions(&h, &opts).unwrap();
        assert!(c.passed && c.all_exact_zero(), "{c:#?}");
        assert_eq!(c.results.iter().filter(|r| r.kind != CheckKind::Control).count(), 24);
        let ctl = c.get("control:[J13,Ap_12]").unwrap();
        assert!(matches!(ctl.verdict, Verdict::Residual { .. }));

        let k = check_casimir_correspondence(&h, &opts).unwrap();
        assert!(k.passed && k.all_exact_zero(), "{k:#?}");
        assert!(matches!(
            k.get("control:C_1234-unshifted").unwrap().verdict,
            Verdict::Residual { .. }
        ));

        assert!(check_squared_casimir(&h, &opts).unwrap().all_exact_zero());
        let bridge = check_kappa_bridge(&h, &opts).unwrap();
        assert!(bridge.passed && bridge.all_exact_zero(), "{bridge:#?}");
    }
}
