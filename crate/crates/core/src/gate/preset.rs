use alloc::string::String;
use alloc::vec;
use alloc::vec::Vec;
use core::f64::consts::PI;

use super::{theta_minus, theta_plus, GateParams, KrausCoefficients};
use crate::error::{Error, Result};
use crate::local::LocalOperator;
use crate::states::{NamedState, State, MIXED_STATE_NAMES};

/// Named angle settings for the conversions the gate is known for.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
#[cfg_attr(feature = "serde", derive(serde::Serialize, serde::Deserialize))]
#[cfg_attr(feature = "serde", serde(rename_all = "snake_case"))]
pub enum Preset {
    /// Cluster state kept intact.
    Identity,
    /// Cluster state to GHZ state.
    Ghz,
    /// Cluster state to the two-excitation Dicke state.
    Dicke,
    /// Cluster state to `|Ψ⁺⟩₁₄|Ψ⁺⟩₂₃`.
    BellPair,
    /// `|++⟩` to `|Ψ⁺⟩`.
    PsiPlusPrep,
    /// `|++⟩` to `|Φ⁻⟩`.
    PhiMinusPrep,
    /// `½𝟙⊗|+⟩⟨+|` to a separable state with nonzero discord.
    DiscordPoint,
}

/// One angle pair realizing a preset, with the per-qubit local correction
/// (empty for none) that takes the raw gate output to the preset's target.
#[derive(Debug, Clone, PartialEq)]
pub struct AngleSetting {
    pub params: GateParams,
    pub correction: Vec<LocalOperator>,
}

impl AngleSetting {
    fn plain(theta1: f64, theta2: f64) -> Self {
        Self { params: GateParams::new(theta1, theta2), correction: Vec::new() }
    }

    fn corrected(theta1: f64, theta2: f64, correction: Vec<LocalOperator>) -> Self {
        Self { params: GateParams::new(theta1, theta2), correction }
    }
}

/// Result of running a preset.
#[derive(Debug, Clone, PartialEq)]
pub struct Conversion {
    pub preset: Preset,
    pub params: GateParams,
    pub coefficients: KrausCoefficients,
    pub success_probability: f64,
    /// Renormalized gate output before local corrections.
    pub raw: State,
    /// Output after the setting's local corrections.
    pub corrected: State,
    /// Fidelity of `corrected` to the preset's target.
    pub fidelity: f64,
}

impl Preset {
    pub const ALL: [Preset; 7] = [
        Preset::Identity,
        Preset::Ghz,
        Preset::Dicke,
        Preset::BellPair,
        Preset::PsiPlusPrep,
        Preset::PhiMinusPrep,
        Preset::DiscordPoint,
    ];

    pub fn name(&self) -> &'static str {
        match self {
            Preset::Identity => "identity",
            Preset::Ghz => "ghz",
            Preset::Dicke => "dicke",
            Preset::BellPair => "bell_pair",
            Preset::PsiPlusPrep => "psi_plus_prep",
            Preset::PhiMinusPrep => "phi_minus_prep",
            Preset::DiscordPoint => "discord_point",
        }
    }

    pub fn from_name(name: &str) -> Result<Self> {
        Self::ALL
            .into_iter()
            .find(|p| p.name() == name)
            .ok_or_else(|| Error::UnknownName { kind: "preset", name: String::from(name) })
    }

    /// Exact nominal success probability.
    pub fn nominal_success_probability(&self) -> f64 {
        match self {
            Preset::Identity => 1.0,
            Preset::Ghz | Preset::PsiPlusPrep | Preset::PhiMinusPrep => 0.5,
            Preset::Dicke => 3.0 / 10.0,
            Preset::BellPair => 0.25,
            Preset::DiscordPoint => 7.0 / 16.0,
        }
    }

    /// Name of the input state, resolvable with [`State::from_name`].
    pub fn input_name(&self) -> &'static str {
        match self {
            Preset::Identity | Preset::Ghz | Preset::Dicke | Preset::BellPair => NamedState::C4.name(),
            Preset::PsiPlusPrep | Preset::PhiMinusPrep => NamedState::PlusPlus.name(),
            Preset::DiscordPoint => MIXED_STATE_NAMES[0],
        }
    }

    pub fn input(&self) -> State {
        State::from_name(self.input_name()).expect("preset input names resolve")
    }

    /// Qubits fed into input modes 1 and 2.
    pub fn targets(&self) -> (usize, usize) {
        match self {
            Preset::Identity | Preset::Ghz | Preset::Dicke | Preset::BellPair => (2, 3),
            _ => (1, 2),
        }
    }

    /// Name of the target state, resolvable with [`State::from_name`].
    pub fn target_name(&self) -> &'static str {
        match self {
            Preset::Identity => NamedState::C4.name(),
            Preset::Ghz => NamedState::Ghz4.name(),
            Preset::Dicke => NamedState::D4_2.name(),
            Preset::BellPair => NamedState::BellPairs.name(),
            Preset::PsiPlusPrep => NamedState::PsiPlus.name(),
            Preset::PhiMinusPrep => NamedState::PhiMinus.name(),
            Preset::DiscordPoint => MIXED_STATE_NAMES[1],
        }
    }

    pub fn target(&self) -> State {
        State::from_name(self.target_name()).expect("preset target names resolve")
    }

    /// All known angle settings; the first is canonical.
    pub fn settings(&self) -> Vec<AngleSetting> {
        let (x, z) = (LocalOperator::pauli_x(), LocalOperator::pauli_z());
        let id = LocalOperator::identity();
        let xz = LocalOperator::product(&[x, z]);
        match self {
            Preset::Identity => vec![AngleSetting::plain(0.0, 0.0), AngleSetting::plain(PI / 2.0, PI / 2.0)],
            Preset::Ghz => vec![
                AngleSetting::plain(0.0, PI / 4.0),
                AngleSetting::plain(PI / 2.0, PI / 4.0),
                AngleSetting::plain(PI / 4.0, 0.0),
                AngleSetting::plain(PI / 4.0, PI / 2.0),
            ],
            // The raw output is D4_2_prime; undo σz ⊗ σx ⊗ σzσx ⊗ 1.
            // Swapping θ₊ and θ₋ additionally flips the sign of σz on qubits 2 and 3.
            Preset::Dicke => vec![
                AngleSetting::corrected(theta_plus(), theta_minus(), vec![z, x, xz, id]),
                AngleSetting::corrected(theta_minus(), theta_plus(), vec![z, xz, x, id]),
            ],
            Preset::BellPair => {
                vec![AngleSetting::plain(3.0 * PI / 8.0, PI / 8.0), AngleSetting::plain(PI / 8.0, 3.0 * PI / 8.0)]
            }
            Preset::PsiPlusPrep => {
                vec![AngleSetting::plain(PI / 8.0, 3.0 * PI / 8.0), AngleSetting::plain(3.0 * PI / 8.0, PI / 8.0)]
            }
            Preset::PhiMinusPrep => vec![
                AngleSetting::plain(0.0, PI / 4.0),
                AngleSetting::plain(PI / 2.0, PI / 4.0),
                AngleSetting::plain(PI / 4.0, PI / 2.0),
            ],
            Preset::DiscordPoint => {
                vec![AngleSetting::plain(0.0, PI / 3.0), AngleSetting::corrected(PI / 3.0, 0.0, vec![x, x])]
            }
        }
    }

    pub fn params(&self) -> GateParams {
        self.settings()[0].params
    }

    /// Setting used for angle-tolerance runs: the first one with both angles
    /// nonzero, since multiplicative jitter cannot move a zero angle.
    pub fn monte_carlo_params(&self) -> GateParams {
        self.settings()
            .into_iter()
            .map(|s| s.params)
            .find(|p| p.theta1 != 0.0 && p.theta2 != 0.0)
            .unwrap_or_else(|| self.params())
    }

    pub fn convert(&self) -> Result<Conversion> {
        self.convert_with(&self.settings()[0])
    }

    pub fn convert_with(&self, setting: &AngleSetting) -> Result<Conversion> {
        let out = self.input().apply_gate(&setting.params, self.targets())?;
        let mut corrected = out.state.clone();
        for (k, op) in setting.correction.iter().enumerate() {
            corrected = corrected.apply_local(op, k + 1)?;
        }
        let fidelity = corrected.fidelity(&self.target())?;
        Ok(Conversion {
            preset: *self,
            params: setting.params,
            coefficients: setting.params.coefficients(),
            success_probability: out.success_probability,
            raw: out.state,
            corrected,
            fidelity,
        })
    }
}
