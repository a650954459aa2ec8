//! Truncated Fock spaces built from bosonic and fermionic modes.

use std::sync::Arc;

use crate::error::{Error, Result};

/// Environment variable overriding [`DEFAULT_MAX_DIM`].
pub const MAX_DIM_ENV: &str = "HAHN_MAX_DIM";
pub const DEFAULT_MAX_DIM: usize = 4_000_000;

/// Dimension limit honoured by [`GradedSpace::new`].
pub fn max_dimension() -> usize {
    std::env::var(MAX_DIM_ENV)
        .ok()
        .and_then(|v| v.trim().parse().ok())
        .unwrap_or(DEFAULT_MAX_DIM)
}

/// Tensor product of `boson_modes` truncated oscillators (occupations
/// `0..=cutoff`) with `fermion_modes` two-level modes.
///
/// Basis ordering is lexicographic in `(bosons, fermions)`, boson-major:
/// the index of `(n_1..n_B, f_1..f_F)` is
/// `((n_1·(N+1) + n_2)·(N+1) + …)·2^F + (f_1 f_2 … f_F)₂`, so mode 1 is the
/// most significant digit in both blocks.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GradedSpace {
    boson_modes: usize,
    cutoff: u32,
    fermion_modes: usize,
    dim: usize,
    grades: Vec<u32>,
}

impl GradedSpace {
    pub fn new(boson_modes: usize, cutoff: u32, fermion_modes: usize) -> Result<Arc<Self>> {
        Self::with_limit(boson_modes, cutoff, fermion_modes, max_dimension())
    }

    pub fn with_limit(boson_modes: usize, cutoff: u32, fermion_modes: usize, limit: usize) -> Result<Arc<Self>> {
        if cutoff < 1 {
            return Err(Error::InvalidParameter(format!("cutoff must be >= 1, got {cutoff}")));
        }
        let required = (cutoff as u128 + 1)
            .checked_pow(boson_modes as u32)
            .and_then(|b| b.checked_mul(1u128 << fermion_modes.min(100)))
            .unwrap_or(u128::MAX);
        if required > limit as u128 {
            // one complex entry per basis state plus sparse overhead, ~40 bytes
            return Err(Error::DimensionLimit {
                required,
                limit,
                bytes: required.saturating_mul(40),
            });
        }
        let dim = required as usize;
        let fermion_states = 1usize << fermion_modes;
        let base = cutoff as usize + 1;
        let grades = (0..dim)
            .map(|idx| {
                let mut b = idx / fermion_states;
                let mut g = 0u32;
                for _ in 0..boson_modes {
                    g += (b % base) as u32;
                    b /= base;
                }
                g
            })
            .collect();
        Ok(Arc::new(GradedSpace {
            boson_modes,
            cutoff,
            fermion_modes,
            dim,
            grades,
        }))
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn boson_modes(&self) -> usize {
        self.boson_modes
    }

    pub fn fermion_modes(&self) -> usize {
        self.fermion_modes
    }

    pub fn cutoff(&self) -> u32 {
        self.cutoff
    }

    /// Total boson occupation of a basis state.
    pub fn grade(&self, idx: usize) -> u32 {
        self.grades[idx]
    }

    pub fn grades(&self) -> &[u32] {
        &self.grades
    }

    pub fn index(&self, bosons: &[u32], fermions: &[bool]) -> usize {
        debug_assert_eq!(bosons.len(), self.boson_modes);
        debug_assert_eq!(fermions.len(), self.fermion_modes);
        let base = self.cutoff as usize + 1;
        let b = bosons.iter().fold(0usize, |acc, &n| acc * base + n as usize);
        let f = fermions.iter().fold(0usize, |acc, &x| acc * 2 + x as usize);
        (b << self.fermion_modes) | f
    }

    pub fn occupations(&self, idx: usize) -> (Vec<u32>, Vec<bool>) {
        let base = self.cutoff as usize + 1;
        let f = idx & ((1usize << self.fermion_modes) - 1);
        let mut b = idx >> self.fermion_modes;
        let mut bosons = vec![0u32; self.boson_modes];
        for slot in bosons.iter_mut().rev() {
            *slot = (b % base) as u32;
            b /= base;
        }
        let fermions = (0..self.fermion_modes)
            .map(|k| (f >> (self.fermion_modes - 1 - k)) & 1 == 1)
            .collect();
        (bosons, fermions)
    }

    /// Occupation of boson `mode` in state `idx`.
    pub fn boson_occupation(&self, idx: usize, mode: usize) -> u32 {
        let base = self.cutoff as usize + 1;
        let b = idx >> self.fermion_modes;
        let shift = self.boson_modes - 1 - mode;
        ((b / base.pow(shift as u32)) % base) as u32
    }

    /// Index of the state with boson `mode` moved to occupation `n`.
    pub fn with_boson(&self, idx: usize, mode: usize, n: u32) -> usize {
        let base = self.cutoff as usize + 1;
        let stride = base.pow((self.boson_modes - 1 - mode) as u32) << self.fermion_modes;
        let old = self.boson_occupation(idx, mode) as usize;
        idx - old * stride + n as usize * stride
    }

    pub fn fermion_occupied(&self, idx: usize, mode: usize) -> bool {
        (idx >> (self.fermion_modes - 1 - mode)) & 1 == 1
    }

    pub fn flip_fermion(&self, idx: usize, mode: usize) -> usize {
        idx ^ (1 << (self.fermion_modes - 1 - mode))
    }

    /// Basis states whose grade leaves room for `budget` raising steps.
    /// `None` when the window is empty.
    pub fn window(&self, budget: u32) -> Option<Vec<usize>> {
        if self.boson_modes == 0 {
            return Some((0..self.dim).collect());
        }
        let top = self.cutoff.checked_sub(budget)?;
        Some((0..self.dim).filter(|&i| self.grades[i] <= top).collect())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn dimensions() {
        assert_eq!(GradedSpace::new(1, 2, 0).unwrap().dim(), 3);
        assert_eq!(GradedSpace::new(4, 4, 4).unwrap().dim(), 10000);
        assert_eq!(GradedSpace::new(0, 1, 4).unwrap().dim(), 16);
    }

    #[test]
    fn dimension_guard() {
        match GradedSpace::with_limit(4, 9, 4, 1000) {
            Err(Error::DimensionLimit { required, .. }) => assert_eq!(required, 160_000),
            other => panic!("unexpected {other:?}"),
        }
        assert!(GradedSpace::new(1, 0, 0).is_err());
    }

    #[test]
    fn index_roundtrip_and_order() {
        let s = GradedSpace::new(2, 2, 2).unwrap();
        for idx in 0..s.dim() {
            let (b, f) = s.occupations(idx);
            assert_eq!(s.index(&b, &f), idx);
            assert_eq!(s.grade(idx), b.iter().sum::<u32>());
            for (m, &n) in b.iter().enumerate() {
                assert_eq!(s.boson_occupation(idx, m), n);
            }
        }
        // boson-major, mode 1 most significant
        assert_eq!(s.occupations(1), (vec![0, 0], vec![false, true]));
        assert_eq!(s.occupations(4), (vec![0, 1], vec![false, false]));
        assert_eq!(s.occupations(12), (vec![1, 0], vec![false, false]));
    }

    #[test]
    fn window_bounds() {
        let s = GradedSpace::new(1, 3, 0).unwrap();
        assert_eq!(s.window(1).unwrap(), vec![0, 1, 2]);
        assert_eq!(s.window(3).unwrap(), vec![0]);
        assert!(s.window(4).is_none());
        let f = GradedSpace::new(0, 1, 3).unwrap();
        assert_eq!(f.window(7).unwrap().len(), 8);
    }
}
