//! The conversion gate's Kraus operator and its action on registers.
//!
//! With wave-plate angles `θ₁, θ₂` and `αₗ = cos²2θₗ`, `βₗ = sin²2θₗ`,
//! `μ₁ = cos2θ₁ cos2θ₂`, `μ₂ = sin2θ₁ sin2θ₂`, the post-selected operator in
//! the basis `|HH⟩, |HV⟩, |VH⟩, |VV⟩` is
//!
//! ```text
//! E₀ = (α₁-β₁)|HH⟩⟨HH| + (α₂-β₂)|VV⟩⟨VV|
//!    + μ₁|HV⟩⟨HV| - μ₂|VH⟩⟨HV| + μ₁|VH⟩⟨VH| - μ₂|HV⟩⟨VH|
//! ```
//!
//! and a successful run maps `ρ ↦ E₀ρE₀†/p_s` with `p_s = Tr(E₀ρE₀†)`.

mod preset;

use alloc::vec::Vec;

use nalgebra::{DMatrix, Matrix4};

#[allow(unused_imports)]
use num_traits::Float;

use crate::density::{hermitian_eigen, DensityOperator};
use crate::error::{Error, Result};
use crate::register::QubitRegister;
use crate::{c64, C64};

pub use preset::{AngleSetting, Conversion, Preset};

/// Success probabilities below this are reported as impossible conversions.
pub const MIN_SUCCESS_PROBABILITY: f64 = 1e-14;

/// Index of a two-qubit basis ket in `|HH⟩, |HV⟩, |VH⟩, |VV⟩` order.
pub const HH: usize = 0;
pub const HV: usize = 1;
pub const VH: usize = 2;
pub const VV: usize = 3;

/// Wave-plate angle pair in radians.
#[derive(Debug, Clone, Copy, PartialEq)]
#[cfg_attr(feature = "serde", derive(serde::Serialize, serde::Deserialize))]
pub struct GateParams {
    pub theta1: f64,
    pub theta2: f64,
}

/// Scalar coefficients of the Kraus operator derived from a [`GateParams`].
#[derive(Debug, Clone, Copy, PartialEq)]
#[cfg_attr(feature = "serde", derive(serde::Serialize, serde::Deserialize))]
pub struct KrausCoefficients {
    pub alpha1: f64,
    pub beta1: f64,
    pub alpha2: f64,
    pub beta2: f64,
    pub mu1: f64,
    pub mu2: f64,
}

impl GateParams {
    pub const fn new(theta1: f64, theta2: f64) -> Self {
        Self { theta1, theta2 }
    }

    pub fn from_degrees(theta1: f64, theta2: f64) -> Self {
        Self::new(theta1.to_radians(), theta2.to_radians())
    }

    pub fn coefficients(&self) -> KrausCoefficients {
        let (s1, c1) = (2.0 * self.theta1).sin_cos();
        let (s2, c2) = (2.0 * self.theta2).sin_cos();
        KrausCoefficients {
            alpha1: c1 * c1,
            beta1: s1 * s1,
            alpha2: c2 * c2,
            beta2: s2 * s2,
            mu1: c1 * c2,
            mu2: s1 * s2,
        }
    }

    /// Multiplies each angle by its own factor.
    pub fn scaled(&self, f1: f64, f2: f64) -> Self {
        Self::new(self.theta1 * f1, self.theta2 * f2)
    }
}

/// Angle `θ₊` with `sin 2θ₊ = √((5+√5)/10)`, principal branch.
pub fn theta_plus() -> f64 {
    ((5.0 + 5f64.sqrt()) / 10.0).sqrt().asin() / 2.0
}

/// Angle `θ₋` with `sin 2θ₋ = √((5-√5)/10)`, principal branch.
pub fn theta_minus() -> f64 {
    ((5.0 - 5f64.sqrt()) / 10.0).sqrt().asin() / 2.0
}

/// Post-selected two-qubit operator, rows are outputs (modes 5, 6) and
/// columns inputs (modes 1, 2).
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct TwoQubitKraus {
    matrix: Matrix4<C64>,
}

impl TwoQubitKraus {
    pub fn from_matrix(matrix: Matrix4<C64>) -> Self {
        Self { matrix }
    }

    pub fn matrix(&self) -> &Matrix4<C64> {
        &self.matrix
    }

    pub fn entry(&self, output: usize, input: usize) -> C64 {
        self.matrix[(output, input)]
    }

    pub fn max_abs_diff(&self, other: &TwoQubitKraus) -> f64 {
        (self.matrix - other.matrix).iter().map(|z| z.norm()).fold(0.0, f64::max)
    }

    /// Elementwise distance modulo a global sign.
    pub fn diff_up_to_sign(&self, other: &TwoQubitKraus) -> f64 {
        let neg = TwoQubitKraus { matrix: -other.matrix };
        self.max_abs_diff(other).min(self.max_abs_diff(&neg))
    }

    pub fn largest_singular_value(&self) -> f64 {
        let gram = self.matrix.adjoint() * self.matrix;
        let gram = DMatrix::from_fn(4, 4, |r, c| gram[(r, c)]);
        let (values, _) = hermitian_eigen(&gram);
        values.last().copied().unwrap_or(0.0).max(0.0).sqrt()
    }
}

/// Builds `E₀` from its closed form.
pub fn build_kraus(params: &GateParams) -> TwoQubitKraus {
    let k = params.coefficients();
    let mut m = Matrix4::<C64>::zeros();
    m[(HH, HH)] = c64(k.alpha1 - k.beta1, 0.0);
    m[(VV, VV)] = c64(k.alpha2 - k.beta2, 0.0);
    m[(HV, HV)] = c64(k.mu1, 0.0);
    m[(VH, HV)] = c64(-k.mu2, 0.0);
    m[(VH, VH)] = c64(k.mu1, 0.0);
    m[(HV, VH)] = c64(-k.mu2, 0.0);
    TwoQubitKraus { matrix: m }
}

/// A heralded gate outcome: the renormalized state and its probability.
#[derive(Debug, Clone, PartialEq)]
pub struct GateOutput<S> {
    pub state: S,
    pub success_probability: f64,
}

fn check_probability(p: f64) -> Result<f64> {
    if p < MIN_SUCCESS_PROBABILITY || !p.is_finite() {
        Err(Error::ConversionImpossible { success_probability: p })
    } else {
        Ok(p)
    }
}

/// Unnormalized `E₀|ψ⟩` with the gate on `targets`; the first target feeds
/// input mode 1 and the second input mode 2.
pub fn apply_kraus(state: &QubitRegister, params: &GateParams, targets: (usize, usize)) -> Result<QubitRegister> {
    state.apply_two_qubit(build_kraus(params).matrix(), targets)
}

pub fn apply_gate(
    state: &QubitRegister,
    params: &GateParams,
    targets: (usize, usize),
) -> Result<GateOutput<QubitRegister>> {
    let raw = apply_kraus(state, params, targets)?;
    let p = check_probability(raw.norm_sqr())?;
    Ok(GateOutput { state: raw.normalized()?, success_probability: p })
}

pub fn apply_gate_mixed(
    rho: &DensityOperator,
    params: &GateParams,
    targets: (usize, usize),
) -> Result<GateOutput<DensityOperator>> {
    let raw = rho.apply_two_qubit(build_kraus(params).matrix(), targets)?;
    let p = check_probability(raw.trace())?;
    Ok(GateOutput { state: raw.normalized()?, success_probability: p })
}

/// Runs the gate on `|+⟩|+⟩`.
pub fn prepare_from_plus(params: &GateParams) -> Result<GateOutput<QubitRegister>> {
    let pp = QubitRegister::from_real(2, &[1.0; 4])?;
    apply_gate(&pp, params, (1, 2))
}

/// Closed-form unnormalized output of the gate on qubits 2 and 3 of the
/// linear cluster state `½(|HHHH⟩+|HHVV⟩+|VVHH⟩-|VVVV⟩)`.
pub fn general_cluster_output(params: &GateParams) -> QubitRegister {
    let k = params.coefficients();
    let mut amps: Vec<C64> = alloc::vec![c64(0.0, 0.0); 16];
    amps[0b0000] = c64(0.5 * (k.alpha1 - k.beta1), 0.0);
    amps[0b1111] = c64(-0.5 * (k.alpha2 - k.beta2), 0.0);
    amps[0b0011] = c64(0.5 * k.mu1, 0.0);
    amps[0b1100] = c64(0.5 * k.mu1, 0.0);
    amps[0b0101] = c64(-0.5 * k.mu2, 0.0);
    amps[0b1010] = c64(-0.5 * k.mu2, 0.0);
    QubitRegister::from_amplitudes(4, amps).expect("16 amplitudes for 4 qubits")
}
