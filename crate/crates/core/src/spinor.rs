//! Spinorial oscillator model: total angular momenta `J_{μν}` built from
//! bosons and Clifford generators, and the commutant of the block rotations.

use std::collections::BTreeMap;
use std::sync::Arc;

use crate::error::{Error, Result};
use crate::operator::Operator;
use crate::oscillators::{build_bosons, build_fermions, clifford_product, Basis, BosonSet, FermionSet};
use crate::presentation::{
    builtin_presentation, check_identities, o_n, o_n_generator, verify, CheckOptions, RealizationMap,
};
use crate::report::RelationReport;
use crate::scalar::{Gauss, Scalar};
use crate::space::GradedSpace;

/// Index pair `(μ, ν)`, 0-based, `μ < ν`.
pub type Pair = (usize, usize);

pub struct SpinorModel<S> {
    pub partition: (usize, usize),
    pub space: Arc<GradedSpace>,
    pub bosons: BosonSet<S>,
    pub fermions: FermionSet<S>,
    /// `L_{μν} = a_μ†a_ν − a_μa_ν†`
    pub l: BTreeMap<Pair, Operator<S>>,
    /// `Σ_{μν} = ½γ_μγ_ν`
    pub sigma: BTreeMap<Pair, Operator<S>>,
    /// `J_{μν} = −i(L_{μν} + Σ_{μν})`
    pub j: BTreeMap<Pair, Operator<S>>,
    /// `H = ½Σ{a_i†, a_i}`
    pub h: Operator<S>,
}

impl<S> SpinorModel<S> {
    pub fn modes(&self) -> usize {
        self.partition.0 + self.partition.1
    }

    pub fn first_block(&self) -> std::ops::Range<usize> {
        0..self.partition.0
    }

    pub fn second_block(&self) -> std::ops::Range<usize> {
        self.partition.0..self.modes()
    }

    /// Pairs lying inside one block.
    pub fn block_pairs(&self) -> Vec<Pair> {
        let (m, n) = (self.partition.0, self.modes());
        self.j
            .keys()
            .copied()
            .filter(|&(a, b)| (b < m) || (a >= m && b < n))
            .collect()
    }
}

fn pairs(n: usize) -> Vec<Pair> {
    (0..n).flat_map(|a| (a + 1..n).map(move |b| (a, b))).collect()
}

/// Builds the model on `m + m'` bosons and as many fermions (analytic basis).
pub fn build_spinor_model<S: Scalar>(m: usize, mprime: usize, cutoff: u32) -> Result<SpinorModel<S>> {
    if m < 2 || mprime < 2 || m % 2 == 1 || mprime % 2 == 1 {
        return Err(Error::InvalidParameter(format!(
            "partition ({m},{mprime}) must have even blocks of size >= 2"
        )));
    }
    let n = m + mprime;
    let space = GradedSpace::new(n, cutoff, n)?;
    let bosons = build_bosons::<S>(&space, Basis::Analytic)?;
    let fermions = build_fermions::<S>(&space)?;
    let half = S::from_gauss(&Gauss::ratio(1, 2));
    let minus_i = S::from_gauss(&-Gauss::i());
    let (mut l, mut sigma, mut j) = (BTreeMap::new(), BTreeMap::new(), BTreeMap::new());
    for (a, b) in pairs(n) {
        let lo = bosons.adag[a]
            .compose(&bosons.a[b])?
            .sub(&bosons.a[a].compose(&bosons.adag[b])?)?;
        let so = fermions.gamma[a].compose(&fermions.gamma[b])?.scale(&half);
        j.insert((a, b), lo.add(&so)?.scale(&minus_i));
        l.insert((a, b), lo);
        sigma.insert((a, b), so);
    }
    let mut h = Operator::zero(&space);
    for k in 0..n {
        h = h.add(&bosons.adag[k].anticommutator(&bosons.a[k])?.scale(&half))?;
    }
    Ok(SpinorModel {
        partition: (m, mprime),
        space,
        bosons,
        fermions,
        l,
        sigma,
        j,
        h,
    })
}

pub struct CommutantGenerators<S> {
    pub k1: Operator<S>,
    pub k2: Operator<S>,
    pub k3: Operator<S>,
    pub r: Operator<S>,
    pub big_r: Operator<S>,
}

/// `𝒦₁ = ½(N_{block 1} − N_{block 2})`, `𝒦₂ = 2(Σ L_{μν}Σ_{μν} − (n−1)/4)`,
/// `𝒦₃ = [𝒦₁, 𝒦₂]`, `r = 𝒫^{block 1}`, `ℛ = 𝒫^{all}`. For four modes the
/// shift is `3/4`, `r = iγ₁γ₂` and `ℛ = −γ₁γ₂γ₃γ₄`.
pub fn build_commutant<S: Scalar>(model: &SpinorModel<S>) -> Result<CommutantGenerators<S>> {
    let n = model.modes();
    let b = &model.bosons;
    let mut k1 = Operator::zero(&model.space);
    for k in 0..n {
        let number = b.adag[k].compose(&b.a[k])?;
        k1 = if k < model.partition.0 {
            k1.add(&number)?
        } else {
            k1.sub(&number)?
        };
    }
    let k1 = k1.scale(&S::from_gauss(&Gauss::ratio(1, 2)));
    let mut k2 = Operator::zero(&model.space);
    for (p, l) in &model.l {
        k2 = k2.add(&l.compose(&model.sigma[p])?)?;
    }
    let k2 = k2
        .shift(&S::from_gauss(&Gauss::ratio(-(n as i64 - 1), 4)))
        .scale(&S::from_gauss(&Gauss::from(2)));
    let k3 = k1.commutator(&k2)?;
    let r = clifford_product(&model.fermions, &model.first_block().collect::<Vec<_>>())?;
    let big_r = clifford_product(&model.fermions, &(0..n).collect::<Vec<_>>())?;
    Ok(CommutantGenerators { k1, k2, k3, r, big_r })
}

/// Which `o(n)` realization to check.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum AngularMomentum {
    /// `−iL_{μν}`
    Orbital,
    /// `−iΣ_{μν}`
    Spin,
    /// `J_{μν}`
    Total,
}

impl AngularMomentum {
    pub fn label(self) -> &'static str {
        match self {
            AngularMomentum::Orbital => "-iL",
            AngularMomentum::Spin => "-iSigma",
            AngularMomentum::Total => "J",
        }
    }
}

/// Every `o(n)` structure relation for the chosen family of operators.
pub fn check_o_n<S: Scalar>(
    model: &SpinorModel<S>,
    which: AngularMomentum,
    opts: &CheckOptions,
) -> Result<RelationReport> {
    let mut pres = o_n(model.modes())?;
    pres.name = format!("{}[{}]", pres.name, which.label());
    let minus_i = S::from_gauss(&-Gauss::i());
    let mut map = RealizationMap::new(&pres);
    for (&(a, b), j) in &model.j {
        let op = match which {
            AngularMomentum::Orbital => model.l[&(a, b)].scale(&minus_i),
            AngularMomentum::Spin => model.sigma[&(a, b)].scale(&minus_i),
            AngularMomentum::Total => j.clone(),
        };
        map.assign(&o_n_generator(a + 1, b + 1), op)?;
    }
    map.with_options(opts);
    verify(&map)
}

fn j_name((a, b): Pair) -> String {
    format!("J{}{}", a + 1, b + 1)
}

/// `[X, Y] = 0` for `X ∈ {𝒦₁, 𝒦₂, 𝒦₃, r, ℛ}` and `Y ∈ {H} ∪ {J_{μν}}` with
/// `μ, ν` in the same block.
pub fn check_commutant_property<S: Scalar>(
    model: &SpinorModel<S>,
    gens: &CommutantGenerators<S>,
    opts: &CheckOptions,
) -> Result<RelationReport> {
    let block = model.block_pairs();
    let names: Vec<String> = block.iter().map(|&p| j_name(p)).collect();
    let mut symbols: Vec<(&str, &Operator<S>)> = vec![
        ("K1", &gens.k1),
        ("K2", &gens.k2),
        ("K3", &gens.k3),
        ("r", &gens.r),
        ("R", &gens.big_r),
        ("H", &model.h),
    ];
    for (name, p) in names.iter().zip(&block) {
        symbols.push((name, &model.j[p]));
    }
    let targets: Vec<&str> = std::iter::once("H").chain(names.iter().map(String::as_str)).collect();
    let identities: Vec<(String, String)> = ["K1", "K2", "K3", "r", "R"]
        .iter()
        .flat_map(|x| {
            targets
                .iter()
                .map(move |y| (format!("[{x},{y}]"), format!("[{x},{y}] = 0")))
        })
        .collect();
    let ids: Vec<(&str, &str)> = identities.iter().map(|(a, b)| (a.as_str(), b.as_str())).collect();
    check_identities("commutant", &symbols, &ids, opts)
}

fn require_four_modes<S>(model: &SpinorModel<S>) -> Result<()> {
    if model.partition != (2, 2) {
        return Err(Error::InvalidParameter(format!(
            "closure relations are stated for partition (2,2), got {:?}",
            model.partition
        )));
    }
    Ok(())
}

/// Closure relations of the commutant (`commutant_closure` or its sign
/// variant) with `H, J₁₂, J₃₄, ℛ` as centrals.
pub fn check_commutant_closure_with<S: Scalar>(
    model: &SpinorModel<S>,
    gens: &CommutantGenerators<S>,
    presentation: &str,
    opts: &CheckOptions,
) -> Result<RelationReport> {
    require_four_modes(model)?;
    let pres = builtin_presentation(presentation)?;
    let mut map = RealizationMap::new(&pres);
    for (name, op) in [
        ("K1", &gens.k1),
        ("K2", &gens.k2),
        ("K3", &gens.k3),
        ("r", &gens.r),
        ("H", &model.h),
        ("J12", &model.j[&(0, 1)]),
        ("J34", &model.j[&(2, 3)]),
        ("R", &gens.big_r),
    ] {
        map.assign(name, op.clone())?;
    }
    map.with_options(opts);
    verify(&map)
}

pub fn check_commutant_closure<S: Scalar>(
    model: &SpinorModel<S>,
    gens: &CommutantGenerators<S>,
    opts: &CheckOptions,
) -> Result<RelationReport> {
    check_commutant_closure_with(model, gens, "commutant_closure", opts)
}

/// Maps the commutant onto the dual −1 Hahn presentation with `K → 𝒦`,
/// `P → r` and the derived centrals `ν = −(J₁₂ + J₃₄ℛ)`,
/// `σ = 2H(J₁₂ − J₃₄ℛ)`, `ρ = 0`.
pub fn identify_commutant_dual_hahn<S: Scalar>(
    model: &SpinorModel<S>,
    gens: &CommutantGenerators<S>,
    opts: &CheckOptions,
) -> Result<RelationReport> {
    require_four_modes(model)?;
    let (j12, j34) = (&model.j[&(0, 1)], &model.j[&(2, 3)]);
    let j34r = j34.compose(&gens.big_r)?;
    let nu = j12.add(&j34r)?.scale(&S::from_gauss(&Gauss::from(-1)));
    let sigma = model
        .h
        .compose(&j12.sub(&j34r)?)?
        .scale(&S::from_gauss(&Gauss::from(2)));
    let pres = builtin_presentation("dual_m1_hahn")?;
    let mut map = RealizationMap::new(&pres);
    for (name, op) in [
        ("K1", gens.k1.clone()),
        ("K2", gens.k2.clone()),
        ("K3", gens.k3.clone()),
        ("P", gens.r.clone()),
        ("nu", nu),
        ("sigma", sigma),
        ("rho", Operator::zero(&model.space)),
    ] {
        map.assign(name, op)?;
    }
    map.with_options(opts);
    let mut report = verify(&map)?;
    report.name = "dual_m1_hahn[commutant]".into();
    report.notes.push(
        "derived identification: K -> commutant K, P = r, nu = -(J12 + J34*R), sigma = 2*H*(J12 - J34*R), rho = 0"
            .into(),
    );
    Ok(report)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::report::Verdict;

    #[test]
    fn dimension_and_guard() {
        let m = build_spinor_model::<Gauss>(2, 2, 2).unwrap();
        assert_eq!(m.space.dim(), 81 * 16);
        assert!(build_spinor_model::<Gauss>(3, 2, 2).is_err());
        assert!(build_spinor_model::<Gauss>(0, 2, 2).is_err());
    }

    #[test]
    fn generator_squares_and_ordering() {
        let m = build_spinor_model::<Gauss>(2, 2, 2).unwrap();
        let g = build_commutant(&m).unwrap();
        let id = Operator::identity(&m.space);
        assert!(g.r.compose(&g.r).unwrap().sub(&id).unwrap().is_zero());
        assert!(g.big_r.compose(&g.big_r).unwrap().sub(&id).unwrap().is_zero());
        for (p, l) in &m.l {
            assert!(l.commutator(&m.sigma[p]).unwrap().is_zero());
        }
        let k3 = g.k1.commutator(&g.k2).unwrap();
        assert!(k3.sub(&g.k3).unwrap().is_zero());
    }

    #[test]
    fn o4_spin_needs_no_window() {
        let m = build_spinor_model::<Gauss>(2, 2, 1).unwrap();
        let rep = check_o_n(&m, AngularMomentum::Spin, &CheckOptions::default()).unwrap();
        assert!(rep.all_exact_zero());
        assert!(rep.results.iter().all(|r| r.required_budget == 0));
    }

    #[test]
    fn closure_and_identification() {
        let m = build_spinor_model::<Gauss>(2, 2, 3).unwrap();
        let g = build_commutant(&m).unwrap();
        let opts = CheckOptions::default();
        let c = check_commutant_closure(&m, &g, &opts).unwrap();
        assert!(c.passed && c.all_exact_zero(), "{c:#?}");
        let variant = check_commutant_closure_with(&m, &g, "commutant_closure_variant", &opts).unwrap();
        assert!(matches!(
            variant.get("commutant_closure_variant:{K2,r}").unwrap().verdict,
            Verdict::Residual { .. }
        ));
        let h = identify_commutant_dual_hahn(&m, &g, &opts).unwrap();
        assert!(h.passed && h.all_exact_zero(), "{h:#?}");
    }

    #[test]
    fn generalized_partition_commutant() {
        let m = build_spinor_model::<Gauss>(2, 4, 2).unwrap();
        let g = build_commutant(&m).unwrap();
        let rep = check_commutant_property(&m, &g, &CheckOptions::default()).unwrap();
        assert_eq!(rep.results.len(), 5 * (1 + 1 + 6));
        assert!(rep.passed && rep.all_exact_zero());
        assert!(check_commutant_closure(&m, &g, &CheckOptions::default()).is_err());
    }
}
