//! Single-qubit operators.

use core::fmt;

use nalgebra::Matrix2;

#[allow(unused_imports)]
use num_traits::Float;

use crate::{c64, C64};

/// Name tag carried by a [`LocalOperator`].
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
#[cfg_attr(feature = "serde", derive(serde::Serialize, serde::Deserialize))]
pub enum OperatorKind {
    Identity,
    PauliX,
    PauliY,
    PauliZ,
    Hadamard,
    /// Phase gate `diag(1, i)`.
    Phase,
    /// Half-wave plate Jones matrix.
    WavePlate,
    Product,
    Arbitrary,
}

/// A 2x2 complex operator acting on one polarization qubit (basis H, V).
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct LocalOperator {
    kind: OperatorKind,
    matrix: Matrix2<C64>,
}

impl LocalOperator {
    pub fn new(matrix: Matrix2<C64>) -> Self {
        Self { kind: OperatorKind::Arbitrary, matrix }
    }

    pub fn identity() -> Self {
        Self { kind: OperatorKind::Identity, matrix: Matrix2::identity() }
    }

    pub fn pauli_x() -> Self {
        let (o, l) = (c64(0.0, 0.0), c64(1.0, 0.0));
        Self { kind: OperatorKind::PauliX, matrix: Matrix2::new(o, l, l, o) }
    }

    pub fn pauli_y() -> Self {
        let o = c64(0.0, 0.0);
        Self { kind: OperatorKind::PauliY, matrix: Matrix2::new(o, c64(0.0, -1.0), c64(0.0, 1.0), o) }
    }

    pub fn pauli_z() -> Self {
        let (o, l) = (c64(0.0, 0.0), c64(1.0, 0.0));
        Self { kind: OperatorKind::PauliZ, matrix: Matrix2::new(l, o, o, -l) }
    }

    pub fn hadamard() -> Self {
        let s = c64(core::f64::consts::FRAC_1_SQRT_2, 0.0);
        Self { kind: OperatorKind::Hadamard, matrix: Matrix2::new(s, s, s, -s) }
    }

    pub fn phase() -> Self {
        let (o, l) = (c64(0.0, 0.0), c64(1.0, 0.0));
        Self { kind: OperatorKind::Phase, matrix: Matrix2::new(l, o, o, c64(0.0, 1.0)) }
    }

    /// Half-wave plate with its fast axis at `theta` radians:
    /// `H -> cos2θ H + sin2θ V`, `V -> sin2θ H - cos2θ V`.
    pub fn half_wave_plate(theta: f64) -> Self {
        let (s, c) = (2.0 * theta).sin_cos();
        Self {
            kind: OperatorKind::WavePlate,
            matrix: Matrix2::new(c64(c, 0.0), c64(s, 0.0), c64(s, 0.0), c64(-c, 0.0)),
        }
    }

    /// Matrix product `ops[0] * ops[1] * ...`; the last factor acts first.
    pub fn product(ops: &[LocalOperator]) -> Self {
        let matrix = ops.iter().fold(Matrix2::identity(), |acc, op| acc * op.matrix);
        Self { kind: OperatorKind::Product, matrix }
    }

    pub fn kind(&self) -> OperatorKind {
        self.kind
    }

    pub fn matrix(&self) -> &Matrix2<C64> {
        &self.matrix
    }

    pub fn adjoint(&self) -> Self {
        let kind = match self.kind {
            OperatorKind::Phase | OperatorKind::Product => OperatorKind::Arbitrary,
            k => k,
        };
        Self { kind, matrix: self.matrix.adjoint() }
    }

    /// True when `U U† = 1` within `tol` elementwise.
    pub fn is_unitary(&self, tol: f64) -> bool {
        let d = self.matrix * self.matrix.adjoint() - Matrix2::identity();
        d.iter().all(|z| z.norm() <= tol)
    }
}

impl fmt::Display for LocalOperator {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let name = match self.kind {
            OperatorKind::Identity => "I",
            OperatorKind::PauliX => "X",
            OperatorKind::PauliY => "Y",
            OperatorKind::PauliZ => "Z",
            OperatorKind::Hadamard => "H",
            OperatorKind::Phase => "S",
            OperatorKind::WavePlate => "HWP",
            OperatorKind::Product => "product",
            OperatorKind::Arbitrary => "U",
        };
        f.write_str(name)
    }
}
