//! Pure states of a few polarization qubits.
//!
//! Amplitudes are stored densely. Qubit 1 is the most significant bit of the
//! basis index and `H ↦ 0`, `V ↦ 1`, so `|HV⟩` sits at index `0b01`.

use alloc::vec;
use alloc::vec::Vec;

use nalgebra::{DMatrix, Matrix4};
use num_traits::Zero;

#[allow(unused_imports)]
use num_traits::Float;

use crate::error::{Error, Result};
use crate::local::LocalOperator;
use crate::{c64, C64, MAX_QUBITS};

/// Normalization tolerance for registers.
pub const NORM_TOL: f64 = 1e-12;

#[derive(Debug, Clone, PartialEq)]
pub struct QubitRegister {
    qubits: usize,
    amplitudes: Vec<C64>,
}

pub(crate) fn check_qubits(n: usize) -> Result<()> {
    if n == 0 || n > MAX_QUBITS {
        Err(Error::Capacity { requested: n })
    } else {
        Ok(())
    }
}

/// Bit mask of a 1-based qubit index in an `n`-qubit basis index.
pub(crate) fn qubit_mask(n: usize, qubit: usize) -> Result<usize> {
    if qubit == 0 || qubit > n {
        return Err(Error::QubitOutOfRange { index: qubit, qubits: n });
    }
    Ok(1 << (n - qubit))
}

pub(crate) fn pair_masks(n: usize, targets: (usize, usize)) -> Result<(usize, usize)> {
    let m1 = qubit_mask(n, targets.0)?;
    let m2 = qubit_mask(n, targets.1)?;
    if m1 == m2 {
        return Err(Error::DuplicateTarget { index: targets.0 });
    }
    Ok((m1, m2))
}

impl QubitRegister {
    /// Wraps raw amplitudes without normalizing them.
    pub fn from_amplitudes(qubits: usize, amplitudes: Vec<C64>) -> Result<Self> {
        check_qubits(qubits)?;
        if amplitudes.len() != 1 << qubits {
            return Err(Error::DimensionMismatch { expected: 1 << qubits, found: amplitudes.len() });
        }
        Ok(Self { qubits, amplitudes })
    }

    /// Wraps amplitudes and rescales them to unit norm.
    pub fn normalized_from(qubits: usize, amplitudes: Vec<C64>) -> Result<Self> {
        Self::from_amplitudes(qubits, amplitudes)?.normalized()
    }

    /// Builds a register from a real amplitude list.
    pub fn from_real(qubits: usize, amplitudes: &[f64]) -> Result<Self> {
        Self::normalized_from(qubits, amplitudes.iter().map(|&a| c64(a, 0.0)).collect())
    }

    /// Computational basis state from a label such as `"HVVH"`.
    pub fn basis(label: &str) -> Result<Self> {
        let n = label.chars().count();
        check_qubits(n)?;
        let mut index = 0usize;
        for ch in label.chars() {
            index <<= 1;
            match ch {
                'H' | 'h' | '0' => {}
                'V' | 'v' | '1' => index |= 1,
                _ => return Err(Error::UnknownName { kind: "basis label", name: label.into() }),
            }
        }
        let mut amplitudes = vec![C64::zero(); 1 << n];
        amplitudes[index] = c64(1.0, 0.0);
        Ok(Self { qubits: n, amplitudes })
    }

    /// Sum of basis kets with coefficients, e.g. `[("HH", 1.0), ("VV", -1.0)]`, normalized.
    pub fn superposition(terms: &[(&str, f64)]) -> Result<Self> {
        let first = terms.first().ok_or(Error::ZeroNorm)?;
        let mut acc = Self::basis(first.0)?.scaled(c64(first.1, 0.0));
        for &(label, coeff) in &terms[1..] {
            let b = Self::basis(label)?;
            if b.qubits != acc.qubits {
                return Err(Error::DimensionMismatch { expected: acc.qubits, found: b.qubits });
            }
            for (a, x) in acc.amplitudes.iter_mut().zip(&b.amplitudes) {
                *a += x * coeff;
            }
        }
        acc.normalized()
    }

    pub fn qubits(&self) -> usize {
        self.qubits
    }

    pub fn dim(&self) -> usize {
        self.amplitudes.len()
    }

    pub fn amplitudes(&self) -> &[C64] {
        &self.amplitudes
    }

    pub fn into_amplitudes(self) -> Vec<C64> {
        self.amplitudes
    }

    pub fn norm_sqr(&self) -> f64 {
        self.amplitudes.iter().map(|a| a.norm_sqr()).sum()
    }

    pub fn is_normalized(&self) -> bool {
        (self.norm_sqr() - 1.0).abs() <= NORM_TOL
    }

    pub fn normalized(mut self) -> Result<Self> {
        let norm = self.norm_sqr().sqrt();
        if !norm.is_finite() || norm <= 0.0 {
            return Err(Error::ZeroNorm);
        }
        for a in &mut self.amplitudes {
            *a /= norm;
        }
        Ok(self)
    }

    pub fn scaled(mut self, factor: C64) -> Self {
        for a in &mut self.amplitudes {
            *a *= factor;
        }
        self
    }

    /// Kronecker product `self ⊗ other`; `self` supplies the leading qubits.
    pub fn tensor(&self, other: &QubitRegister) -> Result<Self> {
        let n = self.qubits + other.qubits;
        check_qubits(n)?;
        let amplitudes = self.amplitudes.iter().flat_map(|a| other.amplitudes.iter().map(move |b| a * b)).collect();
        Ok(Self { qubits: n, amplitudes })
    }

    /// `⟨self|other⟩`.
    pub fn inner(&self, other: &QubitRegister) -> Result<C64> {
        if self.qubits != other.qubits {
            return Err(Error::DimensionMismatch { expected: self.qubits, found: other.qubits });
        }
        Ok(self.amplitudes.iter().zip(&other.amplitudes).map(|(a, b)| a.conj() * b).sum())
    }

    /// `|⟨a|b⟩|²`, blind to global phase. Inputs are assumed normalized.
    pub fn fidelity(&self, other: &QubitRegister) -> Result<f64> {
        Ok(self.inner(other)?.norm_sqr().clamp(0.0, 1.0))
    }

    /// Applies a single-qubit operator to qubit `target` (1-based).
    pub fn apply_local(&self, op: &LocalOperator, target: usize) -> Result<Self> {
        let mask = qubit_mask(self.qubits, target)?;
        let m = op.matrix();
        let mut out = self.amplitudes.clone();
        for i0 in (0..self.dim()).filter(|i| i & mask == 0) {
            let i1 = i0 | mask;
            let (a0, a1) = (self.amplitudes[i0], self.amplitudes[i1]);
            out[i0] = m[(0, 0)] * a0 + m[(0, 1)] * a1;
            out[i1] = m[(1, 0)] * a0 + m[(1, 1)] * a1;
        }
        Ok(Self { qubits: self.qubits, amplitudes: out })
    }

    /// Applies one local operator per qubit, `ops[0]` to qubit 1.
    pub fn apply_locals(&self, ops: &[LocalOperator]) -> Result<Self> {
        if ops.len() != self.qubits {
            return Err(Error::DimensionMismatch { expected: self.qubits, found: ops.len() });
        }
        ops.iter().enumerate().try_fold(self.clone(), |s, (i, op)| s.apply_local(op, i + 1))
    }

    /// Applies a 4x4 operator on the ordered qubit pair `targets`; the first
    /// target is the more significant qubit of the operator's basis.
    pub fn apply_two_qubit(&self, op: &Matrix4<C64>, targets: (usize, usize)) -> Result<Self> {
        let (m1, m2) = pair_masks(self.qubits, targets)?;
        let mut out = self.amplitudes.clone();
        for base in (0..self.dim()).filter(|i| i & (m1 | m2) == 0) {
            let idx = [base, base | m2, base | m1, base | m1 | m2];
            let v: [C64; 4] = core::array::from_fn(|k| self.amplitudes[idx[k]]);
            for (r, &i) in idx.iter().enumerate() {
                out[i] = (0..4).map(|c| op[(r, c)] * v[c]).sum();
            }
        }
        Ok(Self { qubits: self.qubits, amplitudes: out })
    }

    /// Reorders qubits: qubit `k` of the result is qubit `order[k-1]` of `self`.
    pub fn permute(&self, order: &[usize]) -> Result<Self> {
        let n = self.qubits;
        if order.len() != n {
            return Err(Error::DimensionMismatch { expected: n, found: order.len() });
        }
        let masks = order.iter().map(|&q| qubit_mask(n, q)).collect::<Result<Vec<_>>>()?;
        let mut seen = 0usize;
        for (&q, &m) in order.iter().zip(&masks) {
            if seen & m != 0 {
                return Err(Error::DuplicateTarget { index: q });
            }
            seen |= m;
        }
        let mut out = vec![C64::zero(); self.dim()];
        for (j, slot) in out.iter_mut().enumerate() {
            let mut src = 0usize;
            for (k, &m) in masks.iter().enumerate() {
                if j & (1 << (n - 1 - k)) != 0 {
                    src |= m;
                }
            }
            *slot = self.amplitudes[src];
        }
        Ok(Self { qubits: n, amplitudes: out })
    }

    /// Outer product `|ψ⟩⟨ψ|` as a dense matrix.
    pub fn outer(&self) -> DMatrix<C64> {
        let d = self.dim();
        DMatrix::from_fn(d, d, |i, j| self.amplitudes[i] * self.amplitudes[j].conj())
    }
}
