//! Floating-point Clebsch–Gordan coefficients of `(μ₁, ε₁) ⊗ (μ₂, ε₂)`.
//!
//! The lowest vector of each coupled irrep `j` spans the kernel of `Δ(A₋)` on
//! the total-grade-`j` block; higher vectors follow by `Δ(A₊)` and
//! normalization.

use std::io::Write;

use nalgebra::{DMatrix, DVector};
use num_traits::ToPrimitive;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::operator::Operator;
use crate::oscillators::Basis;
use crate::osp::{coupled_eps, coupled_mu, TensorRep};
use crate::scalar::C64;

/// Relative singular-value threshold for the kernel and the validation bound.
pub const CG_TOLERANCE: f64 = 1e-10;
/// Residuals above this abort the solve instead of being reported.
const GROSS: f64 = 1e-6;

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct CgCoefficient {
    pub n1: u32,
    pub n2: u32,
    pub value: f64,
}

/// `|μ₁₂(j), ε₁₂(j); n₁₂⟩` expanded in `|n₁⟩ ⊗ |n₂⟩`, nonzero entries only.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct CgVector {
    pub j: u32,
    pub n12: u32,
    pub mu12: f64,
    pub eps12: i8,
    pub coefficients: Vec<CgCoefficient>,
}

/// Largest absolute deviations observed while validating the table.
#[derive(Debug, Clone, Default, PartialEq, Serialize, Deserialize)]
pub struct CgResiduals {
    /// `max |⟨v, w⟩ − δ|` over all produced vectors
    pub orthonormality: f64,
    /// `‖Δ(A₋)v‖` for the lowest vectors
    pub lowering: f64,
    /// `‖Δ(Q)v + ε₁₂μ₁₂ v‖`
    pub casimir: f64,
    /// `‖Δ(P)v − ε₁₂(−1)^{n₁₂} v‖`
    pub parity: f64,
    /// `‖Δ(A₀)v − (n₁₂ + μ₁₂ + ½)v‖`
    pub a0: f64,
    /// Largest imaginary part discarded after phase fixing.
    pub imaginary: f64,
}

impl CgResiduals {
    pub fn max(&self) -> f64 {
        [
            self.orthonormality,
            self.lowering,
            self.casimir,
            self.parity,
            self.a0,
            self.imaginary,
        ]
        .into_iter()
        .fold(0.0, f64::max)
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct CgResult {
    pub mu1: String,
    pub mu2: String,
    pub eps1: i8,
    pub eps2: i8,
    pub cutoff: u32,
    pub j_max: u32,
    pub vectors: Vec<CgVector>,
    pub residuals: CgResiduals,
}

impl CgResult {
    pub fn passed(&self) -> bool {
        self.residuals.max() <= CG_TOLERANCE
    }

    pub fn vector(&self, j: u32, n12: u32) -> Option<&CgVector> {
        self.vectors.iter().find(|v| v.j == j && v.n12 == n12)
    }

    /// Coefficient `⟨n₁, n₂ | j; n₁₂⟩`, zero when absent.
    pub fn coefficient(&self, j: u32, n12: u32, n1: u32, n2: u32) -> f64 {
        self.vector(j, n12)
            .and_then(|v| v.coefficients.iter().find(|c| c.n1 == n1 && c.n2 == n2))
            .map_or(0.0, |c| c.value)
    }

    /// Writes `j,n12,n1,n2,coefficient` rows.
    pub fn write_csv<W: Write>(&self, out: W) -> Result<(), csv::Error> {
        let mut w = csv::Writer::from_writer(out);
        w.write_record(["j", "n12", "n1", "n2", "coefficient"])?;
        for v in &self.vectors {
            for c in &v.coefficients {
                w.serialize((v.j, v.n12, c.n1, c.n2, c.value))?;
            }
        }
        w.flush()?;
        Ok(())
    }
}

pub(crate) fn grade_block(t: &TensorRep<C64>, g: u32) -> Vec<usize> {
    let mut idx: Vec<usize> = (0..t.space.dim()).filter(|&c| t.space.grade(c) == g).collect();
    idx.sort_by_key(|&c| (t.space.boson_occupation(c, 0), t.space.boson_occupation(c, 1)));
    idx
}

fn apply(op: &Operator<C64>, v: &DVector<C64>) -> DVector<C64> {
    let mut out = DVector::zeros(v.len());
    for (c, x) in v.iter().enumerate() {
        if *x != C64::new(0.0, 0.0) {
            for (r, a) in op.column(c) {
                out[*r] += a * x;
            }
        }
    }
    out
}

/// Rotates `v` so that its first entry (in `(n₁, n₂)` order) above the
/// noise floor is real positive.
pub(crate) fn fix_phase(v: &mut DVector<C64>, order: &[usize]) {
    if let Some(&k) = order.iter().find(|&&k| v[k].norm() > 1e-12) {
        let phase = v[k].conj() / v[k].norm();
        *v *= phase;
    }
}

fn kernel_vector(t: &TensorRep<C64>, j: u32) -> Result<DVector<C64>> {
    let dim = t.space.dim();
    let cols = grade_block(t, j);
    let mut v = DVector::zeros(dim);
    if j == 0 {
        v[cols[0]] = C64::new(1.0, 0.0);
        return Ok(v);
    }
    let rows = grade_block(t, j - 1);
    let n = cols.len();
    // padded with a zero row so the SVD yields a full right basis
    let mut m = DMatrix::<C64>::zeros(n, n);
    for (jc, &c) in cols.iter().enumerate() {
        for (r, a) in t.delta.am.column(c) {
            if let Some(ir) = rows.iter().position(|x| x == r) {
                m[(ir, jc)] = *a;
            }
        }
    }
    let svd = m.svd(false, true);
    let scale = svd.singular_values.max().max(1.0);
    let small: Vec<usize> = (0..n)
        .filter(|&k| svd.singular_values[k] <= CG_TOLERANCE * scale)
        .collect();
    if small.len() != 1 {
        return Err(Error::KernelDimension {
            j: j as usize,
            dim: small.len(),
        });
    }
    let v_t = svd.v_t.expect("requested");
    for (jc, &c) in cols.iter().enumerate() {
        v[c] = v_t[(small[0], jc)].conj();
    }
    Ok(v)
}

/// Coupled vectors for `j ≤ j_max` and `n₁₂ ≤ cutoff − j`.
///
/// Requires the orthonormal basis and `j_max ≤ cutoff`.
pub fn solve_cg(t: &TensorRep<C64>, j_max: u32) -> Result<CgResult> {
    if t.basis != Basis::Orthonormal {
        return Err(Error::InvalidParameter(
            "the CG solver needs the orthonormal basis".into(),
        ));
    }
    let cutoff = t.space.cutoff();
    if j_max > cutoff {
        return Err(Error::InvalidParameter(format!(
            "j_max {j_max} exceeds cutoff {cutoff}"
        )));
    }
    let mut residuals = CgResiduals::default();
    let mut dense: Vec<DVector<C64>> = Vec::new();
    let mut vectors = Vec::new();
    for j in 0..=j_max {
        let mu12 = coupled_mu(&t.mu[0], &t.mu[1], j).to_f64().unwrap_or(f64::NAN);
        let eps12 = coupled_eps(t.eps[0], t.eps[1], j);
        let mut v = kernel_vector(t, j)?;
        residuals.lowering = residuals.lowering.max(apply(&t.delta.am, &v).norm());
        for n12 in 0..=(cutoff - j) {
            if n12 > 0 {
                v = apply(&t.delta.ap, &v);
                let norm = v.norm();
                if norm < CG_TOLERANCE {
                    return Err(Error::Degenerate {
                        j: j as usize,
                        n12: n12 as usize,
                        norm,
                    });
                }
                v /= C64::new(norm, 0.0);
            }
            let order = grade_block(t, j + n12);
            fix_phase(&mut v, &order);
            let parity = if n12 % 2 == 0 { eps12 } else { -eps12 } as f64;
            let checks = [
                (&t.delta_q, -(eps12 as f64) * mu12, &mut residuals.casimir, "Casimir"),
                (&t.delta.p, parity, &mut residuals.parity, "parity"),
                (&t.delta.a0, n12 as f64 + mu12 + 0.5, &mut residuals.a0, "A0"),
            ];
            for (op, lambda, slot, what) in checks {
                let r = (apply(op, &v) - &v * C64::new(lambda, 0.0)).norm();
                if r > GROSS {
                    return Err(Error::Validation {
                        j: j as usize,
                        n12: n12 as usize,
                        what: format!("{what} residual {r:e}"),
                    });
                }
                *slot = slot.max(r);
            }
            let coefficients = order
                .iter()
                .filter(|&&k| v[k].norm() > 1e-15)
                .map(|&k| {
                    residuals.imaginary = residuals.imaginary.max(v[k].im.abs());
                    CgCoefficient {
                        n1: t.space.boson_occupation(k, 0),
                        n2: t.space.boson_occupation(k, 1),
                        value: v[k].re,
                    }
                })
                .collect();
            vectors.push(CgVector {
                j,
                n12,
                mu12,
                eps12,
                coefficients,
            });
            dense.push(v.clone());
        }
    }
    for (a, x) in dense.iter().enumerate() {
        for (b, y) in dense.iter().enumerate().skip(a) {
            let target = if a == b { 1.0 } else { 0.0 };
            residuals.orthonormality = residuals.orthonormality.max((x.dotc(y) - target).norm());
        }
    }
    Ok(CgResult {
        mu1: t.mu[0].to_string(),
        mu2: t.mu[1].to_string(),
        eps1: t.eps[0],
        eps2: t.eps[1],
        cutoff,
        j_max,
        vectors,
        residuals,
    })
}

/// Brute-force eigen-decomposition of `Δ(Q)` on each total-grade block.
#[cfg(any(test, feature = "oracle"))]
pub mod oracle {
    use super::*;

    /// Spectrum of `Δ(Q)` on the grade-`g` block, ascending.
    pub fn casimir_spectrum(t: &TensorRep<C64>, g: u32) -> Vec<f64> {
        let (values, _) = block_eigen(t, g);
        let mut v: Vec<f64> = values.iter().copied().collect();
        v.sort_by(f64::total_cmp);
        v
    }

    fn block_eigen(t: &TensorRep<C64>, g: u32) -> (DVector<f64>, DMatrix<C64>) {
        let idx = grade_block(t, g);
        let n = idx.len();
        let mut m = DMatrix::<C64>::zeros(n, n);
        for (jc, &c) in idx.iter().enumerate() {
            for (r, a) in t.delta_q.column(c) {
                if let Some(ir) = idx.iter().position(|x| x == r) {
                    m[(ir, jc)] = *a;
                }
            }
        }
        let e = m.symmetric_eigen();
        (e.eigenvalues, e.eigenvectors)
    }

    /// Largest coefficient difference between `cg` and the eigenvectors of
    /// `Δ(Q)` matched by eigenvalue, over grades `≤ cutoff`.
    pub fn max_deviation(t: &TensorRep<C64>, cg: &CgResult) -> f64 {
        let mut worst: f64 = 0.0;
        for g in 0..=t.space.cutoff() {
            let idx = grade_block(t, g);
            let (values, vecs) = block_eigen(t, g);
            for v in cg.vectors.iter().filter(|v| v.j + v.n12 == g) {
                let target = -(v.eps12 as f64) * v.mu12;
                let k = (0..values.len())
                    .min_by(|&a, &b| (values[a] - target).abs().total_cmp(&(values[b] - target).abs()))
                    .expect("nonempty block");
                let mut w = DVector::<C64>::zeros(t.space.dim());
                for (i, &c) in idx.iter().enumerate() {
                    w[c] = vecs[(i, k)];
                }
                fix_phase(&mut w, &idx);
                for &c in &idx {
                    let n1 = t.space.boson_occupation(c, 0);
                    let n2 = t.space.boson_occupation(c, 1);
                    worst = worst.max((w[c] - C64::new(cg.coefficient(v.j, v.n12, n1, n2), 0.0)).norm());
                }
            }
        }
        worst
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::osp::build_tensor_from;
    use num_rational::BigRational;

    fn q(n: i64, d: i64) -> BigRational {
        BigRational::new(n.into(), d.into())
    }

    fn tensor(eps2: i8, cutoff: u32) -> TensorRep<C64> {
        build_tensor_from(&q(1, 3), 1, &q(1, 5), eps2, cutoff, Basis::Orthonormal).unwrap()
    }

    #[test]
    fn table_validates() {
        let t = tensor(1, 10);
        let cg = solve_cg(&t, 3).unwrap();
        assert!(cg.passed(), "{:?}", cg.residuals);
        assert_eq!(cg.vectors.len(), 11 + 10 + 9 + 8);
        assert!((cg.coefficient(0, 0, 0, 0) - 1.0).abs() < 1e-12);
    }

    #[test]
    fn lowest_j1_closed_form() {
        // Δ(A₋)(x|1,0⟩ + y|0,1⟩) = (x ε₂ √(2μ₁+1) + y √(2μ₂+1))|0,0⟩
        let t = tensor(1, 6);
        let cg = solve_cg(&t, 1).unwrap();
        let (a, b) = ((2.0f64 / 3.0 + 1.0).sqrt(), (2.0f64 / 5.0 + 1.0).sqrt());
        let n = (a * a + b * b).sqrt();
        assert!((cg.coefficient(1, 0, 0, 1) - a / n).abs() < 1e-12);
        assert!((cg.coefficient(1, 0, 1, 0) + b / n).abs() < 1e-12);
    }

    #[test]
    fn agrees_with_oracle() {
        for eps2 in [1, -1] {
            let t = tensor(eps2, 8);
            let cg = solve_cg(&t, 8).unwrap();
            assert!(cg.passed());
            assert!(oracle::max_deviation(&t, &cg) < 1e-9);
            for g in 0..=8u32 {
                let mut expect: Vec<f64> = (0..=g)
                    .map(|j| {
                        let mu = coupled_mu(&t.mu[0], &t.mu[1], j).to_f64().unwrap();
                        -(coupled_eps(1, eps2, j) as f64) * mu
                    })
                    .collect();
                expect.sort_by(f64::total_cmp);
                let got = oracle::casimir_spectrum(&t, g);
                assert_eq!(got.len(), expect.len());
                for (x, y) in got.iter().zip(&expect) {
                    assert!((x - y).abs() < 1e-9, "g={g}: {got:?} vs {expect:?}");
                }
            }
        }
    }

    #[test]
    fn csv_shape() {
        let cg = solve_cg(&tensor(1, 4), 1).unwrap();
        let mut buf = Vec::new();
        cg.write_csv(&mut buf).unwrap();
        let text = String::from_utf8(buf).unwrap();
        assert!(text.starts_with("j,n12,n1,n2,coefficient\n0,0,0,0,1"));
    }

    #[test]
    fn rejects_bad_input() {
        assert!(solve_cg(&tensor(1, 4), 5).is_err());
        let t = build_tensor_from::<C64>(&q(1, 3), 1, &q(1, 5), 1, 4, Basis::Analytic).unwrap();
        assert!(solve_cg(&t, 1).is_err());
    }
}
