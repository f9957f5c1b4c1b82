//! Entanglement and correlation measures for two-qubit states.
//!
//! Entropies are in bits. Discord is computed over rank-one projective
//! measurements on the measured qubit: a 64×128 Bloch-sphere grid followed by
//! a Nelder–Mead polish in the two Bloch angles.

use alloc::vec::Vec;
use core::f64::consts::PI;

use nalgebra::{DMatrix, Matrix2};

#[allow(unused_imports)]
use num_traits::Float;

use crate::density::{clamp_spectrum, hermitian_eigen, DensityOperator, EIGEN_CLAMP};
use crate::error::{Error, Result};
use crate::optimize::nelder_mead;
use crate::{c64, C64};

/// Grid resolution in the polar angle (inclusive of both poles).
pub const GRID_THETA: usize = 64;
/// Grid resolution in the azimuth over `[0, 2π)`.
pub const GRID_PHI: usize = 128;
/// Angle tolerance of the local polish.
pub const ANGLE_TOL: f64 = 1e-6;
const MAX_POLISH_ITER: usize = 4000;
/// Slack for clamping a slightly negative discord to zero.
pub const DISCORD_CLAMP: f64 = 1e-9;

/// Subsystem of a two-qubit state: `A` is qubit 1, `B` is qubit 2.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
#[cfg_attr(feature = "serde", derive(serde::Serialize, serde::Deserialize))]
pub enum Side {
    A,
    B,
}

/// Projective measurement `{|v⟩⟨v|, 1 − |v⟩⟨v|}` with
/// `|v⟩ = cos(θ/2)|H⟩ + e^{iφ} sin(θ/2)|V⟩`.
#[derive(Debug, Clone, Copy, PartialEq)]
#[cfg_attr(feature = "serde", derive(serde::Serialize, serde::Deserialize))]
pub struct MeasurementBasis {
    pub theta: f64,
    pub phi: f64,
}

impl MeasurementBasis {
    /// Folds arbitrary angles onto one representative of the same
    /// measurement. Outcomes are unordered, so the antipodal Bloch vector
    /// describes the same basis; the representative has `θ ∈ [0, π/2]` and
    /// `φ ∈ [0, 2π)`.
    pub fn canonical(theta: f64, phi: f64) -> Self {
        let mut t = wrap(theta, 2.0 * PI);
        let mut p = phi;
        if t > PI {
            t = 2.0 * PI - t;
            p += PI;
        }
        if t > PI / 2.0 {
            t = PI - t;
            p += PI;
        }
        Self { theta: t, phi: wrap(p, 2.0 * PI) }
    }

    /// The two outcome vectors `|v⟩` and `|v⊥⟩`.
    pub fn vectors(&self) -> [[C64; 2]; 2] {
        let (s, c) = (self.theta / 2.0).sin_cos();
        let e = C64::from_polar(1.0, self.phi);
        [[c64(c, 0.0), e * s], [-e.conj() * s, c64(c, 0.0)]]
    }

    pub fn projectors(&self) -> [Matrix2<C64>; 2] {
        self.vectors()
            .map(|v| Matrix2::new(v[0] * v[0].conj(), v[0] * v[1].conj(), v[1] * v[0].conj(), v[1] * v[1].conj()))
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
#[cfg_attr(feature = "serde", derive(serde::Serialize, serde::Deserialize))]
pub struct DiscordResult {
    pub measured: Side,
    /// `I − J`, clamped at zero within [`DISCORD_CLAMP`].
    pub value: f64,
    pub basis: MeasurementBasis,
    pub mutual_information: f64,
    pub classical_correlation: f64,
    /// Minimal average conditional entropy of the unmeasured qubit.
    pub conditional_entropy: f64,
    /// False when the polish hit its iteration cap; `value` is then the best found.
    pub converged: bool,
}

/// `x mod m` in `[0, m)`.
fn wrap(x: f64, m: f64) -> f64 {
    let r = x % m;
    let r = if r < 0.0 { r + m } else { r };
    if r >= m {
        0.0
    } else {
        r
    }
}

fn xlog2x(x: f64) -> f64 {
    if x <= 0.0 {
        0.0
    } else {
        x * x.log2()
    }
}

fn require_two_qubits(rho: &DensityOperator) -> Result<()> {
    if rho.qubits() != 2 {
        return Err(Error::DimensionMismatch { expected: 2, found: rho.qubits() });
    }
    Ok(())
}

/// `S(ρ) = −Tr ρ log₂ ρ`.
pub fn von_neumann_entropy(rho: &DensityOperator) -> Result<f64> {
    Ok(rho.eigenvalues()?.into_iter().map(|l| -xlog2x(l)).sum::<f64>().max(0.0))
}

/// Wootters concurrence `max(0, λ₁ − λ₂ − λ₃ − λ₄)`.
///
/// The `λᵢ` are the singular values of `τ = Wᵀ (σy⊗σy) W` for a factor
/// `ρ = W W†` built from the eigenpairs of `ρ`. Eigenvalues below
/// [`EIGEN_CLAMP`] are dropped, which keeps pure states exact.
pub fn concurrence(rho: &DensityOperator) -> Result<f64> {
    require_two_qubits(rho)?;
    let (mut values, vectors) = hermitian_eigen(rho.matrix());
    clamp_spectrum(&mut values)?;
    let kept: Vec<usize> = (0..4).filter(|&k| values[k] > EIGEN_CLAMP).collect();
    if kept.is_empty() {
        return Ok(0.0);
    }
    let w = DMatrix::from_fn(4, kept.len(), |r, c| vectors[(r, kept[c])] * values[kept[c]].sqrt());
    // σy ⊗ σy is real: antidiagonal (−1, 1, 1, −1).
    let flip_sign = [-1.0, 1.0, 1.0, -1.0];
    let yw = DMatrix::from_fn(4, kept.len(), |r, c| w[(3 - r, c)] * flip_sign[r]);
    let tau = w.transpose() * yw;
    let mut lambdas = [0.0; 4];
    for (l, s) in lambdas.iter_mut().zip(tau.singular_values().iter()) {
        *l = *s;
    }
    lambdas.sort_by(|a, b| b.total_cmp(a));
    Ok((lambdas[0] - lambdas[1] - lambdas[2] - lambdas[3]).max(0.0))
}

/// `I(A,B) = S(ρ_A) + S(ρ_B) − S(ρ_AB)`.
pub fn mutual_information(rho: &DensityOperator) -> Result<f64> {
    require_two_qubits(rho)?;
    let sa = von_neumann_entropy(&rho.partial_trace(&[1])?)?;
    let sb = von_neumann_entropy(&rho.partial_trace(&[2])?)?;
    Ok(sa + sb - von_neumann_entropy(rho)?)
}

/// `p S(M/p)` for an unnormalized 2x2 Hermitian block `M` with trace `p`.
fn weighted_entropy(m: &Matrix2<C64>) -> f64 {
    let (a, d) = (m[(0, 0)].re, m[(1, 1)].re);
    let p = a + d;
    if p <= EIGEN_CLAMP {
        return 0.0;
    }
    let disc = ((a - d) * (a - d) + 4.0 * m[(0, 1)].norm_sqr()).sqrt();
    let (l1, l2) = ((p + disc) / 2.0, (p - disc) / 2.0);
    xlog2x(p) - xlog2x(l1) - xlog2x(l2)
}

/// Conditional block `(1⊗⟨v|) ρ (1⊗|v⟩)` (or with the roles swapped).
fn conditional_block(rho: &DMatrix<C64>, measured: Side, v: &[C64; 2]) -> Matrix2<C64> {
    let idx = |keep: usize, meas: usize| match measured {
        Side::B => 2 * keep + meas,
        Side::A => 2 * meas + keep,
    };
    Matrix2::from_fn(|i, j| {
        let mut acc = c64(0.0, 0.0);
        for k in 0..2 {
            for l in 0..2 {
                acc += v[k].conj() * rho[(idx(i, k), idx(j, l))] * v[l];
            }
        }
        acc
    })
}

/// `Σ_b p_b S(ρ_{·|b})` for the given measurement on `measured`.
pub fn average_conditional_entropy(rho: &DensityOperator, measured: Side, basis: &MeasurementBasis) -> Result<f64> {
    require_two_qubits(rho)?;
    Ok(conditional_entropy_raw(rho.matrix(), measured, basis))
}

fn conditional_entropy_raw(rho: &DMatrix<C64>, measured: Side, basis: &MeasurementBasis) -> f64 {
    basis.vectors().iter().map(|v| weighted_entropy(&conditional_block(rho, measured, v))).sum()
}

/// Quantum discord with respect to projective measurements on `measured`:
/// `measured = B` gives `δ(A|B)`.
pub fn discord(rho: &DensityOperator, measured: Side) -> Result<DiscordResult> {
    require_two_qubits(rho)?;
    let mutual = mutual_information(rho)?;
    let unmeasured = match measured {
        Side::B => 1,
        Side::A => 2,
    };
    let s_unmeasured = von_neumann_entropy(&rho.partial_trace(&[unmeasured])?)?;
    let m = rho.matrix();
    let cost = |[t, p]: [f64; 2]| conditional_entropy_raw(m, measured, &MeasurementBasis { theta: t, phi: p });

    let dt = PI / (GRID_THETA - 1) as f64;
    let dp = 2.0 * PI / GRID_PHI as f64;
    let mut best = ([0.0, 0.0], f64::INFINITY);
    for i in 0..GRID_THETA {
        for j in 0..GRID_PHI {
            let x = [i as f64 * dt, j as f64 * dp];
            let v = cost(x);
            // Strict comparison: the lowest grid index wins ties.
            if v < best.1 {
                best = (x, v);
            }
        }
    }

    let polished = nelder_mead(cost, best.0, [dt / 2.0, dp / 2.0], ANGLE_TOL, MAX_POLISH_ITER);
    let (point, cond) = if polished.value <= best.1 { (polished.point, polished.value) } else { best };
    let classical = s_unmeasured - cond;
    let mut value = mutual - classical;
    if value < 0.0 && value > -DISCORD_CLAMP {
        value = 0.0;
    }
    Ok(DiscordResult {
        measured,
        value,
        basis: MeasurementBasis::canonical(point[0], point[1]),
        mutual_information: mutual,
        classical_correlation: classical,
        conditional_entropy: cond,
        converged: polished.converged,
    })
}
