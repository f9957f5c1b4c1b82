//! Density operators on up to [`MAX_QUBITS`](crate::MAX_QUBITS) qubits.

use alloc::vec::Vec;

use nalgebra::{DMatrix, Matrix4, SymmetricEigen};
use num_traits::Zero;

#[allow(unused_imports)]
use num_traits::Float;

use crate::error::{Error, Result};
use crate::local::LocalOperator;
use crate::register::{check_qubits, pair_masks, qubit_mask, QubitRegister};
use crate::{c64, C64};

/// Eigenvalues in `[-EIGEN_CLAMP, 0)` are treated as numerical noise.
pub const EIGEN_CLAMP: f64 = 1e-10;
/// Hermiticity tolerance on construction.
pub const HERMITIAN_TOL: f64 = 1e-12;

#[derive(Debug, Clone, PartialEq)]
pub struct DensityOperator {
    qubits: usize,
    matrix: DMatrix<C64>,
}

/// Eigen-decomposition of a Hermitian matrix. Eigenvalues come back in
/// ascending order with eigenvectors as matching columns.
pub(crate) fn hermitian_eigen(m: &DMatrix<C64>) -> (Vec<f64>, DMatrix<C64>) {
    let eig = SymmetricEigen::new(m.clone());
    let mut order: Vec<usize> = (0..eig.eigenvalues.len()).collect();
    order.sort_by(|&a, &b| eig.eigenvalues[a].total_cmp(&eig.eigenvalues[b]));
    let values = order.iter().map(|&k| eig.eigenvalues[k]).collect();
    let vectors = DMatrix::from_fn(m.nrows(), m.ncols(), |r, c| eig.eigenvectors[(r, order[c])]);
    (values, vectors)
}

/// Clamps tiny negative eigenvalues to zero, rejecting genuinely negative ones.
pub(crate) fn clamp_spectrum(values: &mut [f64]) -> Result<()> {
    for v in values.iter_mut() {
        if *v < -EIGEN_CLAMP {
            return Err(Error::NotPositive { min_eigenvalue: *v });
        }
        if *v < 0.0 {
            *v = 0.0;
        }
    }
    Ok(())
}

/// Square root of a positive semidefinite Hermitian matrix.
pub(crate) fn psd_sqrt(m: &DMatrix<C64>) -> Result<DMatrix<C64>> {
    let (mut values, vectors) = hermitian_eigen(m);
    clamp_spectrum(&mut values)?;
    let d = m.nrows();
    let scaled = DMatrix::from_fn(d, d, |r, c| vectors[(r, c)] * values[c].sqrt());
    Ok(&scaled * vectors.adjoint())
}

impl DensityOperator {
    /// Wraps a matrix after checking shape and Hermiticity; the stored matrix
    /// is symmetrized to remove rounding asymmetry.
    pub fn from_matrix(qubits: usize, matrix: DMatrix<C64>) -> Result<Self> {
        check_qubits(qubits)?;
        let d = 1 << qubits;
        if matrix.nrows() != d || matrix.ncols() != d {
            return Err(Error::DimensionMismatch { expected: d, found: matrix.nrows() });
        }
        let dev = (&matrix - matrix.adjoint()).iter().map(|z| z.norm()).fold(0.0, f64::max);
        if dev > HERMITIAN_TOL {
            return Err(Error::NotHermitian { deviation: dev });
        }
        let matrix = (&matrix + matrix.adjoint()) * c64(0.5, 0.0);
        Ok(Self { qubits, matrix })
    }

    pub fn from_pure(state: &QubitRegister) -> Self {
        Self { qubits: state.qubits(), matrix: state.outer() }
    }

    pub fn maximally_mixed(qubits: usize) -> Result<Self> {
        check_qubits(qubits)?;
        let d = 1 << qubits;
        Ok(Self { qubits, matrix: DMatrix::identity(d, d) * c64(1.0 / d as f64, 0.0) })
    }

    /// Convex combination `Σ w_k ρ_k` (weights are not renormalized).
    pub fn mixture(parts: &[(f64, DensityOperator)]) -> Result<Self> {
        let first = &parts.first().ok_or(Error::InvalidConfig("empty mixture"))?.1;
        let d = first.dim();
        let mut matrix = DMatrix::zeros(d, d);
        for (w, rho) in parts {
            if rho.qubits != first.qubits {
                return Err(Error::DimensionMismatch { expected: first.qubits, found: rho.qubits });
            }
            matrix += &rho.matrix * c64(*w, 0.0);
        }
        Ok(Self { qubits: first.qubits, matrix })
    }

    pub fn qubits(&self) -> usize {
        self.qubits
    }

    pub fn dim(&self) -> usize {
        self.matrix.nrows()
    }

    pub fn matrix(&self) -> &DMatrix<C64> {
        &self.matrix
    }

    pub fn entry(&self, row: usize, col: usize) -> C64 {
        self.matrix[(row, col)]
    }

    pub fn trace(&self) -> f64 {
        self.matrix.trace().re
    }

    pub fn normalized(&self) -> Result<Self> {
        let t = self.trace();
        if !t.is_finite() || t <= 0.0 {
            return Err(Error::ZeroNorm);
        }
        Ok(Self { qubits: self.qubits, matrix: &self.matrix * c64(1.0 / t, 0.0) })
    }

    pub fn tensor(&self, other: &DensityOperator) -> Result<Self> {
        let n = self.qubits + other.qubits;
        check_qubits(n)?;
        Ok(Self { qubits: n, matrix: self.matrix.kronecker(&other.matrix) })
    }

    /// Reduced operator on the qubits in `keep` (1-based, kept in ascending order).
    pub fn partial_trace(&self, keep: &[usize]) -> Result<Self> {
        if keep.is_empty() {
            return Err(Error::EmptyKeepSet);
        }
        let n = self.qubits;
        let mut kept: Vec<usize> = keep.to_vec();
        kept.sort_unstable();
        kept.dedup();
        let keep_masks = kept.iter().map(|&q| qubit_mask(n, q)).collect::<Result<Vec<_>>>()?;
        let keep_all: usize = keep_masks.iter().sum();
        let traced_masks: Vec<usize> = (1..=n).map(|q| 1 << (n - q)).filter(|m| keep_all & m == 0).collect();

        let spread = |bits: usize, masks: &[usize]| -> usize {
            let k = masks.len();
            masks.iter().enumerate().filter(|(i, _)| bits & (1 << (k - 1 - i)) != 0).map(|(_, m)| m).sum()
        };
        let dk = 1 << kept.len();
        let dt = 1 << traced_masks.len();
        let outer: Vec<usize> = (0..dk).map(|b| spread(b, &keep_masks)).collect();
        let inner: Vec<usize> = (0..dt).map(|b| spread(b, &traced_masks)).collect();
        let matrix =
            DMatrix::from_fn(dk, dk, |r, c| inner.iter().map(|&t| self.matrix[(outer[r] | t, outer[c] | t)]).sum());
        Ok(Self { qubits: kept.len(), matrix })
    }

    /// `U ρ U†` with `U` acting on qubit `target`.
    pub fn apply_local(&self, op: &LocalOperator, target: usize) -> Result<Self> {
        let mask = qubit_mask(self.qubits, target)?;
        let u = op.matrix();
        let d = self.dim();
        let mut m = self.matrix.clone();
        for c in 0..d {
            for i0 in (0..d).filter(|i| i & mask == 0) {
                let (a0, a1) = (m[(i0, c)], m[(i0 | mask, c)]);
                m[(i0, c)] = u[(0, 0)] * a0 + u[(0, 1)] * a1;
                m[(i0 | mask, c)] = u[(1, 0)] * a0 + u[(1, 1)] * a1;
            }
        }
        for r in 0..d {
            for j0 in (0..d).filter(|j| j & mask == 0) {
                let (a0, a1) = (m[(r, j0)], m[(r, j0 | mask)]);
                m[(r, j0)] = a0 * u[(0, 0)].conj() + a1 * u[(0, 1)].conj();
                m[(r, j0 | mask)] = a0 * u[(1, 0)].conj() + a1 * u[(1, 1)].conj();
            }
        }
        Ok(Self { qubits: self.qubits, matrix: m })
    }

    /// `E ρ E†` with the 4x4 operator on the ordered pair `targets`. The
    /// result is not renormalized.
    pub fn apply_two_qubit(&self, op: &Matrix4<C64>, targets: (usize, usize)) -> Result<Self> {
        let (m1, m2) = pair_masks(self.qubits, targets)?;
        let d = self.dim();
        let groups: Vec<[usize; 4]> =
            (0..d).filter(|i| i & (m1 | m2) == 0).map(|b| [b, b | m2, b | m1, b | m1 | m2]).collect();
        let mut left = DMatrix::<C64>::zeros(d, d);
        for c in 0..d {
            for idx in &groups {
                for (r, &i) in idx.iter().enumerate() {
                    left[(i, c)] = (0..4).map(|k| op[(r, k)] * self.matrix[(idx[k], c)]).sum();
                }
            }
        }
        let mut out = DMatrix::<C64>::zeros(d, d);
        for r in 0..d {
            for idx in &groups {
                for (c, &j) in idx.iter().enumerate() {
                    out[(r, j)] = (0..4).map(|k| left[(r, idx[k])] * op[(c, k)].conj()).sum();
                }
            }
        }
        Ok(Self { qubits: self.qubits, matrix: out })
    }

    /// Eigenvalues in ascending order, small negatives clamped to zero.
    pub fn eigenvalues(&self) -> Result<Vec<f64>> {
        let (mut values, _) = hermitian_eigen(&self.matrix);
        clamp_spectrum(&mut values)?;
        Ok(values)
    }

    /// `⟨ψ|ρ|ψ⟩`.
    pub fn expectation(&self, state: &QubitRegister) -> Result<f64> {
        if state.qubits() != self.qubits {
            return Err(Error::DimensionMismatch { expected: self.qubits, found: state.qubits() });
        }
        let a = state.amplitudes();
        let mut acc = C64::zero();
        for (r, ar) in a.iter().enumerate() {
            for (c, ac) in a.iter().enumerate() {
                acc += ar.conj() * self.matrix[(r, c)] * ac;
            }
        }
        Ok(acc.re)
    }

    /// Uhlmann fidelity `(Tr √(√ρ σ √ρ))²`.
    pub fn fidelity(&self, other: &DensityOperator) -> Result<f64> {
        if other.qubits != self.qubits {
            return Err(Error::DimensionMismatch { expected: self.qubits, found: other.qubits });
        }
        let s = psd_sqrt(&self.matrix)?;
        let inner = &s * &other.matrix * &s;
        let inner = (&inner + inner.adjoint()) * c64(0.5, 0.0);
        let (mut values, _) = hermitian_eigen(&inner);
        clamp_spectrum(&mut values)?;
        let root: f64 = values.iter().map(|v| v.sqrt()).sum();
        Ok((root * root).clamp(0.0, 1.0))
    }

    /// Largest elementwise modulus of `self - other`.
    pub fn max_abs_diff(&self, other: &DensityOperator) -> Result<f64> {
        if other.qubits != self.qubits {
            return Err(Error::DimensionMismatch { expected: self.qubits, found: other.qubits });
        }
        Ok((&self.matrix - &other.matrix).iter().map(|z| z.norm()).fold(0.0, f64::max))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn psi_plus() -> QubitRegister {
        QubitRegister::superposition(&[("HV", 1.0), ("VH", 1.0)]).unwrap()
    }

    fn cluster() -> QubitRegister {
        QubitRegister::superposition(&[("HHHH", 1.0), ("HHVV", 1.0), ("VVHH", 1.0), ("VVVV", -1.0)]).unwrap()
    }

    #[test]
    fn bell_reduction_is_maximally_mixed() {
        let rho = DensityOperator::from_pure(&psi_plus()).partial_trace(&[1]).unwrap();
        let half = DensityOperator::maximally_mixed(1).unwrap();
        assert!(rho.max_abs_diff(&half).unwrap() < 1e-15);
    }

    #[test]
    fn product_reduction() {
        let h = QubitRegister::basis("H").unwrap();
        let plus = QubitRegister::from_real(1, &[1.0, 1.0]).unwrap();
        let rho = DensityOperator::from_pure(&h.tensor(&plus).unwrap());
        let red = rho.partial_trace(&[1]).unwrap();
        assert!(red.max_abs_diff(&DensityOperator::from_pure(&h)).unwrap() < 1e-15);
    }

    #[test]
    fn cluster_middle_pair_is_maximally_mixed() {
        // Direct 16x16 computation: every pair (q2, q3) appears once in C4 with
        // weight 1/4 and distinct (q1, q4) partners, so the reduction is 1/4.
        let rho = DensityOperator::from_pure(&cluster()).partial_trace(&[2, 3]).unwrap();
        let quarter = DensityOperator::maximally_mixed(2).unwrap();
        assert!(rho.max_abs_diff(&quarter).unwrap() < 1e-15);
    }

    #[test]
    fn keep_everything_is_identity() {
        let rho = DensityOperator::from_pure(&cluster());
        assert_eq!(rho.partial_trace(&[4, 1, 3, 2]).unwrap(), rho);
        assert_eq!(rho.partial_trace(&[]), Err(Error::EmptyKeepSet));
        assert!(rho.partial_trace(&[5]).is_err());
    }

    #[test]
    fn local_matches_pure_route() {
        let s = cluster();
        let op = LocalOperator::product(&[LocalOperator::hadamard(), LocalOperator::phase()]);
        let via_rho = DensityOperator::from_pure(&s).apply_local(&op, 3).unwrap();
        let via_pure = DensityOperator::from_pure(&s.apply_local(&op, 3).unwrap());
        assert!(via_rho.max_abs_diff(&via_pure).unwrap() < 1e-15);
    }

    #[test]
    fn rejects_non_hermitian() {
        let mut m = DMatrix::<C64>::identity(2, 2);
        m[(0, 1)] = c64(0.1, 0.0);
        assert!(matches!(DensityOperator::from_matrix(1, m), Err(Error::NotHermitian { .. })));
    }

    #[test]
    fn eigenvalue_clamp() {
        let mut m = DMatrix::<C64>::zeros(2, 2);
        m[(0, 0)] = c64(1.0, 0.0);
        m[(1, 1)] = c64(-5e-11, 0.0);
        let rho = DensityOperator::from_matrix(1, m.clone()).unwrap();
        assert_eq!(rho.eigenvalues().unwrap(), [0.0, 1.0]);
        m[(1, 1)] = c64(-1e-6, 0.0);
        let rho = DensityOperator::from_matrix(1, m).unwrap();
        assert!(matches!(rho.eigenvalues(), Err(Error::NotPositive { .. })));
    }

    #[test]
    fn uhlmann_fidelity_reduces_to_overlap() {
        let a = DensityOperator::from_pure(&psi_plus());
        let b = QubitRegister::basis("HV").unwrap();
        let f = a.fidelity(&DensityOperator::from_pure(&b)).unwrap();
        assert!((f - 0.5).abs() < 1e-9);
        assert!((a.expectation(&b).unwrap() - 0.5).abs() < 1e-15);
    }
}
