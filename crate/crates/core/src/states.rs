//! Named states used by the conversion scenarios.

use alloc::string::String;
use alloc::vec::Vec;

use crate::density::DensityOperator;
use crate::error::{Error, Result};
use crate::gate::{apply_gate, apply_gate_mixed, GateOutput, GateParams};
use crate::local::LocalOperator;
use crate::register::QubitRegister;

/// Fidelity threshold for [`verify_identity`].
pub const IDENTITY_THRESHOLD: f64 = 1.0 - 1e-10;

/// Pure states with stable string names.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum NamedState {
    H,
    V,
    Plus,
    Minus,
    /// `(2|H⟩ - |V⟩)/√5`
    Phi,
    PlusPlus,
    PsiPlus,
    PhiPlus,
    PhiMinus,
    /// Four-qubit linear cluster state `½(|HHHH⟩+|HHVV⟩+|VVHH⟩-|VVVV⟩)`.
    C4,
    Ghz4,
    /// Four-qubit Dicke state with two excitations.
    D4_2,
    /// `D4_2` after `σz ⊗ σx ⊗ σzσx ⊗ 1`.
    D4_2Prime,
    /// `|Ψ⁺⟩₁₄ ⊗ |Ψ⁺⟩₂₃`.
    BellPairs,
}

impl NamedState {
    pub const ALL: [NamedState; 14] = [
        NamedState::H,
        NamedState::V,
        NamedState::Plus,
        NamedState::Minus,
        NamedState::Phi,
        NamedState::PlusPlus,
        NamedState::PsiPlus,
        NamedState::PhiPlus,
        NamedState::PhiMinus,
        NamedState::C4,
        NamedState::Ghz4,
        NamedState::D4_2,
        NamedState::D4_2Prime,
        NamedState::BellPairs,
    ];

    pub fn name(&self) -> &'static str {
        match self {
            NamedState::H => "H",
            NamedState::V => "V",
            NamedState::Plus => "Plus",
            NamedState::Minus => "Minus",
            NamedState::Phi => "Phi",
            NamedState::PlusPlus => "PlusPlus",
            NamedState::PsiPlus => "PsiPlus",
            NamedState::PhiPlus => "PhiPlus",
            NamedState::PhiMinus => "PhiMinus",
            NamedState::C4 => "C4",
            NamedState::Ghz4 => "GHZ4",
            NamedState::D4_2 => "D4_2",
            NamedState::D4_2Prime => "D4_2_prime",
            NamedState::BellPairs => "BellPairs_14_23",
        }
    }

    pub fn from_name(name: &str) -> Result<Self> {
        Self::ALL
            .into_iter()
            .find(|s| s.name().eq_ignore_ascii_case(name))
            .ok_or_else(|| Error::UnknownName { kind: "state", name: String::from(name) })
    }

    pub fn qubits(&self) -> usize {
        match self {
            NamedState::H | NamedState::V | NamedState::Plus | NamedState::Minus | NamedState::Phi => 1,
            NamedState::PlusPlus | NamedState::PsiPlus | NamedState::PhiPlus | NamedState::PhiMinus => 2,
            _ => 4,
        }
    }

    fn terms(&self) -> Vec<(&'static str, f64)> {
        match self {
            NamedState::H => alloc::vec![("H", 1.0)],
            NamedState::V => alloc::vec![("V", 1.0)],
            NamedState::Plus => alloc::vec![("H", 1.0), ("V", 1.0)],
            NamedState::Minus => alloc::vec![("H", 1.0), ("V", -1.0)],
            NamedState::Phi => alloc::vec![("H", 2.0), ("V", -1.0)],
            NamedState::PlusPlus => alloc::vec![("HH", 1.0), ("HV", 1.0), ("VH", 1.0), ("VV", 1.0)],
            NamedState::PsiPlus => alloc::vec![("HV", 1.0), ("VH", 1.0)],
            NamedState::PhiPlus => alloc::vec![("HH", 1.0), ("VV", 1.0)],
            NamedState::PhiMinus => alloc::vec![("HH", 1.0), ("VV", -1.0)],
            NamedState::C4 => {
                alloc::vec![("HHHH", 1.0), ("HHVV", 1.0), ("VVHH", 1.0), ("VVVV", -1.0)]
            }
            NamedState::Ghz4 => alloc::vec![("HHHH", 1.0), ("VVVV", 1.0)],
            NamedState::D4_2 => {
                alloc::vec![("HVVH", 1.0), ("VHHV", 1.0), ("HVHV", 1.0), ("VHVH", 1.0), ("HHVV", 1.0), ("VVHH", 1.0),]
            }
            NamedState::D4_2Prime => {
                alloc::vec![("HHHH", 1.0), ("VVVV", 1.0), ("HHVV", -1.0), ("VVHH", -1.0), ("HVHV", 1.0), ("VHVH", 1.0),]
            }
            NamedState::BellPairs => {
                alloc::vec![("HHVV", 1.0), ("HVHV", 1.0), ("VHVH", 1.0), ("VVHH", 1.0)]
            }
        }
    }

    pub fn build(&self) -> QubitRegister {
        QubitRegister::superposition(&self.terms()).expect("named states are well formed")
    }

    /// `½𝟙 ⊗ |+⟩⟨+|`, the product input of the discord example.
    pub fn half_identity_plus() -> DensityOperator {
        let half = DensityOperator::maximally_mixed(1).expect("one qubit");
        half.tensor(&DensityOperator::from_pure(&NamedState::Plus.build())).expect("two qubits")
    }

    /// `(5/7)|H⟩⟨H|⊗|φ⟩⟨φ| + (2/7)|V⟩⟨V|⊗|+⟩⟨+|`.
    pub fn discord_point_state() -> DensityOperator {
        let part = |a: NamedState, b: NamedState| {
            DensityOperator::from_pure(&a.build().tensor(&b.build()).expect("two qubits"))
        };
        DensityOperator::mixture(&[
            (5.0 / 7.0, part(NamedState::H, NamedState::Phi)),
            (2.0 / 7.0, part(NamedState::V, NamedState::Plus)),
        ])
        .expect("same dimensions")
    }

    /// `σz ⊗ σx ⊗ σzσx ⊗ 1`, which takes `D4_2` to `D4_2_prime`.
    pub fn dicke_rotation() -> [LocalOperator; 4] {
        [
            LocalOperator::pauli_z(),
            LocalOperator::pauli_x(),
            LocalOperator::product(&[LocalOperator::pauli_z(), LocalOperator::pauli_x()]),
            LocalOperator::identity(),
        ]
    }
}

/// A pure or mixed state that can be pushed through the gate.
#[derive(Debug, Clone, PartialEq)]
pub enum State {
    Pure(QubitRegister),
    Mixed(DensityOperator),
}

/// Names of mixed states accepted by [`State::from_name`].
pub const MIXED_STATE_NAMES: [&str; 2] = ["HalfIdentityPlus", "DiscordPoint"];

impl State {
    /// Resolves a pure [`NamedState`] or one of [`MIXED_STATE_NAMES`].
    pub fn from_name(name: &str) -> Result<Self> {
        if name.eq_ignore_ascii_case(MIXED_STATE_NAMES[0]) {
            return Ok(State::Mixed(NamedState::half_identity_plus()));
        }
        if name.eq_ignore_ascii_case(MIXED_STATE_NAMES[1]) {
            return Ok(State::Mixed(NamedState::discord_point_state()));
        }
        NamedState::from_name(name).map(|s| State::Pure(s.build()))
    }

    pub fn qubits(&self) -> usize {
        match self {
            State::Pure(s) => s.qubits(),
            State::Mixed(r) => r.qubits(),
        }
    }

    pub fn to_density(&self) -> DensityOperator {
        match self {
            State::Pure(s) => DensityOperator::from_pure(s),
            State::Mixed(r) => r.clone(),
        }
    }

    pub fn apply_gate(&self, params: &GateParams, targets: (usize, usize)) -> Result<GateOutput<State>> {
        Ok(match self {
            State::Pure(s) => {
                let out = apply_gate(s, params, targets)?;
                GateOutput { state: State::Pure(out.state), success_probability: out.success_probability }
            }
            State::Mixed(r) => {
                let out = apply_gate_mixed(r, params, targets)?;
                GateOutput { state: State::Mixed(out.state), success_probability: out.success_probability }
            }
        })
    }

    /// Success probability only; zero probabilities are not an error here.
    pub fn success_probability(&self, params: &GateParams, targets: (usize, usize)) -> Result<f64> {
        let e = crate::gate::build_kraus(params);
        match self {
            State::Pure(s) => Ok(s.apply_two_qubit(e.matrix(), targets)?.norm_sqr()),
            State::Mixed(r) => Ok(r.apply_two_qubit(e.matrix(), targets)?.trace()),
        }
    }

    pub fn apply_local(&self, op: &LocalOperator, target: usize) -> Result<Self> {
        Ok(match self {
            State::Pure(s) => State::Pure(s.apply_local(op, target)?),
            State::Mixed(r) => State::Mixed(r.apply_local(op, target)?),
        })
    }

    /// Fidelity, using the overlap formula whenever one side is pure.
    pub fn fidelity(&self, other: &State) -> Result<f64> {
        match (self, other) {
            (State::Pure(a), State::Pure(b)) => a.fidelity(b),
            (State::Pure(a), State::Mixed(r)) | (State::Mixed(r), State::Pure(a)) => r.expectation(a),
            (State::Mixed(a), State::Mixed(b)) => a.fidelity(b),
        }
    }
}

/// Outcome of comparing a candidate against a named state.
#[derive(Debug, Clone, PartialEq)]
#[cfg_attr(feature = "serde", derive(serde::Serialize, serde::Deserialize))]
pub struct FidelityReport {
    pub name: String,
    pub fidelity: f64,
    pub pass: bool,
}

pub fn verify_identity(name: NamedState, candidate: &QubitRegister) -> Result<FidelityReport> {
    let fidelity = name.build().fidelity(candidate)?;
    Ok(FidelityReport { name: String::from(name.name()), fidelity, pass: fidelity >= IDENTITY_THRESHOLD })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::c64;

    #[test]
    fn all_named_states_normalized_with_matching_size() {
        for s in NamedState::ALL {
            let r = s.build();
            assert!((r.norm_sqr() - 1.0).abs() < 1e-12, "{}", s.name());
            assert_eq!(r.qubits(), s.qubits());
            assert_eq!(NamedState::from_name(s.name()).unwrap(), s);
        }
    }

    #[test]
    fn cluster_amplitudes() {
        let c4 = NamedState::C4.build();
        for (i, a) in c4.amplitudes().iter().enumerate() {
            let e = match i {
                0b0000 | 0b0011 | 0b1100 => 0.5,
                0b1111 => -0.5,
                _ => 0.0,
            };
            assert_eq!(*a, c64(e, 0.0));
        }
    }

    #[test]
    fn dicke_amplitudes() {
        let d = NamedState::D4_2.build();
        let s = 1.0 / 6f64.sqrt();
        for (i, a) in d.amplitudes().iter().enumerate() {
            let e = if (i as u32).count_ones() == 2 { s } else { 0.0 };
            assert!((a.re - e).abs() < 1e-15 && a.im == 0.0);
        }
    }

    #[test]
    fn ghz_amplitudes() {
        let g = NamedState::Ghz4.build();
        let s = core::f64::consts::FRAC_1_SQRT_2;
        assert!((g.amplitudes()[0].re - s).abs() < 1e-15);
        assert!((g.amplitudes()[15].re - s).abs() < 1e-15);
        assert!(g.amplitudes()[1..15].iter().all(|a| a.norm() == 0.0));
    }

    #[test]
    fn dicke_rotation_relates_the_two_forms() {
        let rotated = NamedState::D4_2.build().apply_locals(&NamedState::dicke_rotation()).unwrap();
        let overlap = NamedState::D4_2Prime.build().inner(&rotated).unwrap();
        assert!((overlap.norm() - 1.0).abs() < 1e-12);
    }

    #[test]
    fn verify_identity_cases() {
        let psi = NamedState::PsiPlus.build();
        let r = verify_identity(NamedState::PsiPlus, &psi).unwrap();
        assert!(r.pass && (r.fidelity - 1.0).abs() < 1e-15);
        // ⟨C4|GHZ4⟩ = (1/(2√2))(1 - 1) = 0
        let r = verify_identity(NamedState::C4, &NamedState::Ghz4.build()).unwrap();
        assert!(!r.pass && r.fidelity < 1e-15);
        assert!(verify_identity(NamedState::C4, &psi).is_err());
    }

    #[test]
    fn unknown_names() {
        assert!(matches!(NamedState::from_name("W4"), Err(Error::UnknownName { .. })));
        assert!(matches!(State::from_name("DiscordPoint"), Ok(State::Mixed(_))));
        assert!(matches!(State::from_name("ghz4"), Ok(State::Pure(_))));
    }
}
