//! Bosonic, fermionic and parabosonic ladder operators, and Clifford products.

use std::sync::Arc;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};

use crate::error::{Error, Result};
use crate::operator::Operator;
use crate::scalar::{Gauss, Scalar};
use crate::space::GradedSpace;

/// Scaling of the Fock basis vectors.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, serde::Serialize, serde::Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Basis {
    /// `a†|n⟩ = |n+1⟩`, `a|n⟩ = [n]|n−1⟩`: rational entries, not orthonormal.
    Analytic,
    /// `a†|n⟩ = √[n+1] |n+1⟩`: unitary conventions, needs square roots.
    Orthonormal,
}

/// `[n]_μ = n + μ(1 − (−1)ⁿ)`.
pub fn mu_number(n: u32, mu: &BigRational) -> BigRational {
    let n_q = BigRational::from_integer(BigInt::from(n));
    if n % 2 == 1 {
        n_q + mu * BigRational::from_integer(BigInt::from(2))
    } else {
        n_q
    }
}

pub struct BosonSet<S> {
    pub a: Vec<Operator<S>>,
    pub adag: Vec<Operator<S>>,
}

pub struct FermionSet<S> {
    pub b: Vec<Operator<S>>,
    pub bdag: Vec<Operator<S>>,
    /// `γ_i = b_i + b_i†`, normalized so that `{γ_i, γ_j} = 2δ_ij`.
    pub gamma: Vec<Operator<S>>,
}

pub struct ParaboseSet<S> {
    pub a: Vec<Operator<S>>,
    pub adag: Vec<Operator<S>>,
    /// Reflections `R_i|n_i⟩ = (−1)^{n_i}|n_i⟩`.
    pub reflection: Vec<Operator<S>>,
    pub mu: Vec<BigRational>,
}

impl<S> ParaboseSet<S> {
    /// Modes with `μ ≤ −1/2`, outside the unitary discrete series.
    pub fn nonunitary_modes(&self) -> Vec<usize> {
        let bound = BigRational::new((-1).into(), 2.into());
        self.mu
            .iter()
            .enumerate()
            .filter(|(_, m)| **m <= bound)
            .map(|(k, _)| k)
            .collect()
    }
}

fn coefficient<S: Scalar>(value: &BigRational, basis: Basis) -> Result<S> {
    match basis {
        Basis::Analytic => Ok(S::from_rational(value)),
        Basis::Orthonormal => S::sqrt_of(value).ok_or(Error::InexactBasis),
    }
}

/// Lowering and raising operators of one parabose mode with parameter `mu`.
pub fn parabose_mode<S: Scalar>(
    space: &Arc<GradedSpace>,
    mode: usize,
    mu: &BigRational,
    basis: Basis,
) -> Result<(Operator<S>, Operator<S>)> {
    if mode >= space.boson_modes() {
        return Err(Error::InvalidParameter(format!("boson mode {mode} out of range")));
    }
    let cutoff = space.cutoff();
    // [n]_μ for n = 0..=cutoff, converted once
    let lower_coef: Vec<S> = (0..=cutoff)
        .map(|n| coefficient(&mu_number(n, mu), basis))
        .collect::<Result<_>>()?;
    let raise_coef: Vec<S> = match basis {
        Basis::Analytic => vec![S::one(); cutoff as usize + 1],
        Basis::Orthonormal => (0..=cutoff)
            .map(|n| coefficient(&mu_number(n + 1, mu), basis))
            .collect::<Result<_>>()?,
    };
    let a = Operator::from_action(space, |c| {
        let n = space.boson_occupation(c, mode);
        if n == 0 {
            vec![]
        } else {
            vec![(space.with_boson(c, mode, n - 1), lower_coef[n as usize].clone())]
        }
    });
    let adag = Operator::from_action(space, |c| {
        let n = space.boson_occupation(c, mode);
        if n == cutoff {
            vec![]
        } else {
            vec![(space.with_boson(c, mode, n + 1), raise_coef[n as usize].clone())]
        }
    });
    Ok((a, adag))
}

/// `(−1)^{n_mode}`
pub fn reflection<S: Scalar>(space: &Arc<GradedSpace>, mode: usize) -> Operator<S> {
    Operator::diagonal(space, |c| {
        if space.boson_occupation(c, mode).is_multiple_of(2) {
            S::one()
        } else {
            S::one().negated()
        }
    })
}

pub fn build_bosons<S: Scalar>(space: &Arc<GradedSpace>, basis: Basis) -> Result<BosonSet<S>> {
    if space.boson_modes() == 0 {
        return Err(Error::InvalidParameter("space has no boson modes".into()));
    }
    let zero = BigRational::zero();
    let (a, adag) = (0..space.boson_modes())
        .map(|m| parabose_mode(space, m, &zero, basis))
        .collect::<Result<Vec<_>>>()?
        .into_iter()
        .unzip();
    Ok(BosonSet { a, adag })
}

/// Parabose modes realized by their graded action on each boson factor. Modes
/// are independent tensor factors: operators of distinct modes commute.
pub fn build_parabose<S: Scalar>(space: &Arc<GradedSpace>, mu: &[BigRational], basis: Basis) -> Result<ParaboseSet<S>> {
    if mu.len() != space.boson_modes() || mu.is_empty() {
        return Err(Error::InvalidParameter(format!(
            "need one μ per boson mode ({}), got {}",
            space.boson_modes(),
            mu.len()
        )));
    }
    let mut set = ParaboseSet {
        a: vec![],
        adag: vec![],
        reflection: vec![],
        mu: mu.to_vec(),
    };
    for (m, mu_m) in mu.iter().enumerate() {
        let (a, adag) = parabose_mode(space, m, mu_m, basis)?;
        set.a.push(a);
        set.adag.push(adag);
        set.reflection.push(reflection(space, m));
    }
    Ok(set)
}

/// Jordan–Wigner fermions: `b_i` carries the parity `(−1)^{Σ_{j<i} f_j}` of
/// the preceding modes, so distinct modes anticommute with entries in {0, ±1}.
pub fn build_fermions<S: Scalar>(space: &Arc<GradedSpace>) -> Result<FermionSet<S>> {
    let modes = space.fermion_modes();
    if modes == 0 {
        return Err(Error::InvalidParameter("space has no fermion modes".into()));
    }
    let sign = |c: usize, mode: usize| -> S {
        let parity = (0..mode).filter(|&j| space.fermion_occupied(c, j)).count();
        if parity % 2 == 0 {
            S::one()
        } else {
            S::one().negated()
        }
    };
    let mut set = FermionSet {
        b: vec![],
        bdag: vec![],
        gamma: vec![],
    };
    for m in 0..modes {
        let b = Operator::from_action(space, |c| {
            if space.fermion_occupied(c, m) {
                vec![(space.flip_fermion(c, m), sign(c, m))]
            } else {
                vec![]
            }
        });
        let bdag = Operator::from_action(space, |c| {
            if space.fermion_occupied(c, m) {
                vec![]
            } else {
                vec![(space.flip_fermion(c, m), sign(c, m))]
            }
        });
        set.gamma.push(b.add(&bdag)?);
        set.b.push(b);
        set.bdag.push(bdag);
    }
    Ok(set)
}

/// `e^{iπ|S|/4}` as a scalar. Odd sizes need `√2`, unavailable exactly.
pub fn spinor_phase<S: Scalar>(size: usize) -> Result<S> {
    let quarter_turns = [Gauss::from(1), Gauss::i(), Gauss::from(-1), -Gauss::i()];
    let even = S::from_gauss(&quarter_turns[(size / 2) % 4]);
    if size.is_multiple_of(2) {
        return Ok(even);
    }
    let half = BigRational::new(BigInt::one(), BigInt::from(2));
    let root = S::sqrt_of(&half).ok_or(Error::InexactBasis)?;
    let eighth = S::from_gauss(&Gauss::new(BigRational::one(), BigRational::one())).times(&root);
    Ok(even.times(&eighth))
}

/// `𝒫^S = e^{iπ|S|/4} ∏_{μ∈S} γ_μ` over strictly ascending (0-based) indices.
pub fn clifford_product<S: Scalar>(f: &FermionSet<S>, indices: &[usize]) -> Result<Operator<S>> {
    for w in indices.windows(2) {
        if w[0] == w[1] {
            return Err(Error::RepeatedIndex(w[0]));
        }
        if w[0] > w[1] {
            return Err(Error::InvalidParameter(format!("indices must ascend: {indices:?}")));
        }
    }
    if let Some(&bad) = indices.iter().find(|&&i| i >= f.gamma.len()) {
        return Err(Error::InvalidParameter(format!("fermion mode {bad} out of range")));
    }
    let space = f.gamma[0].space().clone();
    let mut out = Operator::scalar(&space, spinor_phase::<S>(indices.len())?);
    for &i in indices {
        out = out.compose(&f.gamma[i])?;
    }
    Ok(out)
}
