//! Graph states and the network rewiring scenarios.
//!
//! A graph state starts every vertex in `|+⟩` and applies a controlled-Z per
//! edge. The scenarios start from a four-vertex path graph, convert it to the
//! linear cluster state with local Hadamards, run the gate on the two middle
//! qubits and then attach each qubit to one ancilla vertex (qubits 5 to 8)
//! standing in for the rest of a larger network.

use alloc::format;
use alloc::string::String;
use alloc::vec;
use alloc::vec::Vec;

use nalgebra::Matrix2;

#[allow(unused_imports)]
use num_traits::Float;

use crate::error::{Error, Result};
use crate::gate::{apply_gate, GateParams, Preset};
use crate::local::LocalOperator;
use crate::register::{pair_masks, QubitRegister};
use crate::states::NamedState;
use crate::{c64, C64, MAX_QUBITS};

/// Minimum fidelity for a scenario step to count as reached.
pub const STEP_THRESHOLD: f64 = 1.0 - 1e-9;

/// Vertices `1..=n`, undirected CZ edges and per-vertex local operators
/// applied after all edges.
#[derive(Debug, Clone, PartialEq)]
pub struct GraphSpec {
    vertices: usize,
    edges: Vec<(usize, usize)>,
    locals: Vec<(usize, LocalOperator)>,
}

impl GraphSpec {
    pub fn new(vertices: usize, edges: &[(usize, usize)]) -> Result<Self> {
        if vertices == 0 || vertices > MAX_QUBITS {
            return Err(Error::Capacity { requested: vertices });
        }
        let mut spec = Self { vertices, edges: Vec::with_capacity(edges.len()), locals: Vec::new() };
        for &(a, b) in edges {
            spec.add_edge(a, b)?;
        }
        Ok(spec)
    }

    /// Path `1 - 2 - … - n`.
    pub fn path(vertices: usize) -> Result<Self> {
        let edges: Vec<_> = (1..vertices).map(|v| (v, v + 1)).collect();
        Self::new(vertices, &edges)
    }

    /// Star with every other vertex joined to `center`.
    pub fn star(vertices: usize, center: usize) -> Result<Self> {
        let edges: Vec<_> = (1..=vertices).filter(|&v| v != center).map(|v| (center, v)).collect();
        if center == 0 || center > vertices {
            return Err(Error::QubitOutOfRange { index: center, qubits: vertices });
        }
        Self::new(vertices, &edges)
    }

    pub fn add_edge(&mut self, a: usize, b: usize) -> Result<()> {
        for v in [a, b] {
            if v == 0 || v > self.vertices {
                return Err(Error::QubitOutOfRange { index: v, qubits: self.vertices });
            }
        }
        if a == b {
            return Err(Error::SelfLoop { vertex: a });
        }
        if self.has_edge(a, b) {
            return Err(Error::DuplicateEdge { a, b });
        }
        self.edges.push((a, b));
        Ok(())
    }

    pub fn with_local(mut self, vertex: usize, op: LocalOperator) -> Result<Self> {
        if vertex == 0 || vertex > self.vertices {
            return Err(Error::QubitOutOfRange { index: vertex, qubits: self.vertices });
        }
        self.locals.push((vertex, op));
        Ok(self)
    }

    pub fn has_edge(&self, a: usize, b: usize) -> bool {
        self.edges.iter().any(|&(x, y)| (x, y) == (a, b) || (x, y) == (b, a))
    }

    pub fn vertices(&self) -> usize {
        self.vertices
    }

    pub fn edges(&self) -> &[(usize, usize)] {
        &self.edges
    }

    pub fn locals(&self) -> &[(usize, LocalOperator)] {
        &self.locals
    }
}

/// Controlled-Z on two distinct qubits: flips the sign of components where
/// both are `V`.
pub fn apply_cz(state: &QubitRegister, pair: (usize, usize)) -> Result<QubitRegister> {
    let (m1, m2) = pair_masks(state.qubits(), pair)?;
    let amps =
        state.amplitudes().iter().enumerate().map(|(i, &a)| if i & m1 != 0 && i & m2 != 0 { -a } else { a }).collect();
    QubitRegister::from_amplitudes(state.qubits(), amps)
}

pub fn build_graph_state(spec: &GraphSpec) -> Result<QubitRegister> {
    let n = spec.vertices;
    let amp = c64(1.0 / ((1usize << n) as f64).sqrt(), 0.0);
    let mut state = QubitRegister::from_amplitudes(n, vec![amp; 1 << n])?;
    for &edge in &spec.edges {
        state = apply_cz(&state, edge)?;
    }
    for (v, op) in &spec.locals {
        state = state.apply_local(op, *v)?;
    }
    Ok(state)
}

/// Target graph plus the per-vertex locals that reach it.
type GraphForm = (GraphSpec, Vec<(usize, LocalOperator)>);

/// The four rewirings of a linear cluster state.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
#[cfg_attr(feature = "serde", derive(serde::Serialize, serde::Deserialize))]
#[cfg_attr(feature = "serde", serde(rename_all = "snake_case"))]
pub enum Scenario {
    /// GHZ conversion, then Hadamards on every qubit except `center`.
    Star { center: usize },
    /// Identity setting; the cluster stays a path graph.
    Keep,
    /// Two Bell pairs (1,4) and (2,3), each a two-vertex graph after `𝟙⊗Hσx`.
    TwoGraphs,
    /// Dicke conversion; the output is not a graph state.
    Hybrid,
}

pub const SCENARIO_NAMES: [&str; 4] = ["star", "keep", "two_graphs", "hybrid"];

/// Centre of the star when none is given.
pub const DEFAULT_STAR_CENTER: usize = 2;

impl Scenario {
    pub fn name(&self) -> &'static str {
        match self {
            Scenario::Star { .. } => "star",
            Scenario::Keep => "keep",
            Scenario::TwoGraphs => "two_graphs",
            Scenario::Hybrid => "hybrid",
        }
    }

    pub fn from_name(name: &str) -> Result<Self> {
        match name {
            "star" => Ok(Scenario::Star { center: DEFAULT_STAR_CENTER }),
            "keep" => Ok(Scenario::Keep),
            "two_graphs" => Ok(Scenario::TwoGraphs),
            "hybrid" => Ok(Scenario::Hybrid),
            _ => Err(Error::UnknownName { kind: "scenario", name: name.into() }),
        }
    }

    pub fn all() -> [Scenario; 4] {
        [Scenario::Star { center: DEFAULT_STAR_CENTER }, Scenario::Keep, Scenario::TwoGraphs, Scenario::Hybrid]
    }

    pub fn preset(&self) -> Preset {
        match self {
            Scenario::Star { .. } => Preset::Ghz,
            Scenario::Keep => Preset::Identity,
            Scenario::TwoGraphs => Preset::BellPair,
            Scenario::Hybrid => Preset::Dicke,
        }
    }

    /// Named state the raw gate output should match.
    fn gate_target(&self) -> NamedState {
        match self {
            Scenario::Star { .. } => NamedState::Ghz4,
            Scenario::Keep => NamedState::C4,
            Scenario::TwoGraphs => NamedState::BellPairs,
            Scenario::Hybrid => NamedState::D4_2Prime,
        }
    }

    /// Graph reached from the corrected gate output, with the locals that
    /// take the output there. `None` when the output is not a graph state.
    fn graph_form(&self) -> Result<Option<GraphForm>> {
        let h = LocalOperator::hadamard();
        Ok(match *self {
            Scenario::Star { center } => {
                let spec = GraphSpec::star(4, center)?;
                Some((spec, (1..=4).filter(|&v| v != center).map(|v| (v, h)).collect()))
            }
            Scenario::Keep => Some((GraphSpec::path(4)?, vec![(1, h), (4, h)])),
            Scenario::TwoGraphs => {
                let hx = LocalOperator::product(&[h, LocalOperator::pauli_x()]);
                Some((GraphSpec::new(4, &[(1, 4), (2, 3)])?, vec![(4, hx), (3, hx)]))
            }
            Scenario::Hybrid => None,
        })
    }
}

#[derive(Debug, Clone, PartialEq)]
#[cfg_attr(feature = "serde", derive(serde::Serialize, serde::Deserialize))]
pub struct StepReport {
    pub label: String,
    pub target: String,
    pub fidelity: f64,
}

#[derive(Debug, Clone, PartialEq)]
#[cfg_attr(feature = "serde", derive(serde::Serialize, serde::Deserialize))]
pub struct ScenarioReport {
    pub scenario: Scenario,
    pub preset: Preset,
    pub params: GateParams,
    pub success_probability: f64,
    pub steps: Vec<StepReport>,
}

impl ScenarioReport {
    pub fn passed(&self) -> bool {
        self.first_failure().is_none()
    }

    pub fn first_failure(&self) -> Option<&StepReport> {
        self.steps.iter().find(|s| s.fidelity.is_nan() || s.fidelity < STEP_THRESHOLD)
    }

    /// Turns a failed step into [`Error::ScenarioFailed`].
    pub fn check(&self) -> Result<()> {
        match self.first_failure() {
            Some(s) => Err(Error::ScenarioFailed { step: s.label.clone(), fidelity: s.fidelity }),
            None => Ok(()),
        }
    }
}

/// Replays a scenario and records the fidelity of every step. Steps below
/// [`STEP_THRESHOLD`] are reported, not raised; see [`ScenarioReport::check`].
pub fn run_scenario(scenario: Scenario) -> Result<ScenarioReport> {
    let h = LocalOperator::hadamard();
    let mut steps = Vec::new();
    let mut step = |label: &str, target: String, fidelity: f64| {
        steps.push(StepReport { label: label.into(), target, fidelity });
    };

    let cluster = build_graph_state(&GraphSpec::path(4)?.with_local(1, h)?.with_local(4, h)?)?;
    step("cluster", NamedState::C4.name().into(), cluster.fidelity(&NamedState::C4.build())?);

    let preset = scenario.preset();
    let setting = preset.settings().swap_remove(0);
    let out = apply_gate(&cluster, &setting.params, (2, 3))?;
    let gate_target = scenario.gate_target();
    step("gate", gate_target.name().into(), out.state.fidelity(&gate_target.build())?);

    let mut state = out.state;
    if !setting.correction.is_empty() {
        state = state.apply_locals(&setting.correction)?;
        let fidelity = state.fidelity(&NamedState::D4_2.build())?;
        step("correction", NamedState::D4_2.name().into(), fidelity);
    }

    let network = match scenario.graph_form()? {
        Some((graph, locals)) => {
            for (v, op) in &locals {
                state = state.apply_local(op, *v)?;
            }
            let graph_state = build_graph_state(&graph)?;
            step("graph", describe(&graph), state.fidelity(&graph_state)?);
            let mut full = GraphSpec::new(8, graph.edges())?;
            for v in 1..=4 {
                full.add_edge(v, v + 4)?;
            }
            build_graph_state(&full)?
        }
        None => dicke_network()?,
    };

    let plus4 = build_graph_state(&GraphSpec::new(4, &[])?)?;
    let mut attached = state.tensor(&plus4)?;
    for v in 1..=4 {
        attached = apply_cz(&attached, (v, v + 4))?;
    }
    step("network", String::from("ancilla-attached"), attached.fidelity(&network)?);

    Ok(ScenarioReport { scenario, preset, params: setting.params, success_probability: out.success_probability, steps })
}

/// `Σ_x d_x |x⟩ ⊗ Z^x |++++⟩` for the Dicke amplitudes `d_x`.
fn dicke_network() -> Result<QubitRegister> {
    let d = NamedState::D4_2.build();
    let mut amps = vec![c64(0.0, 0.0); 256];
    for (x, dx) in d.amplitudes().iter().enumerate() {
        for y in 0..16usize {
            let sign = if (x & y).count_ones() % 2 == 1 { -0.25 } else { 0.25 };
            amps[(x << 4) | y] = dx * sign;
        }
    }
    QubitRegister::from_amplitudes(8, amps)
}

fn describe(graph: &GraphSpec) -> String {
    let edges: Vec<String> = graph.edges.iter().map(|(a, b)| format!("{a}-{b}")).collect();
    format!("graph[{}]", edges.join(","))
}

/// The 24 single-qubit Clifford operators modulo global phase, generated by
/// the Hadamard and phase gates. The identity comes first.
pub fn clifford_group() -> Vec<LocalOperator> {
    let gens = [LocalOperator::hadamard(), LocalOperator::phase()];
    let mut group = vec![LocalOperator::identity()];
    let mut frontier = 0;
    while frontier < group.len() {
        let g = group[frontier];
        frontier += 1;
        for s in &gens {
            let next = LocalOperator::new(fix_phase(s.matrix() * g.matrix()));
            if !group.iter().any(|k| (k.matrix() - next.matrix()).norm() < 1e-9) {
                group.push(next);
            }
        }
    }
    group
}

/// Rescales so the first entry of largest modulus is real and positive.
fn fix_phase(m: Matrix2<C64>) -> Matrix2<C64> {
    let pivot = m.iter().copied().fold(c64(0.0, 0.0), |best, z| if z.norm() > best.norm() + 1e-9 { z } else { best });
    m * (pivot.conj() / pivot.norm())
}

/// Best fidelity `|⟨to| C₁⊗…⊗Cₙ |from⟩|²` over all products of single-qubit
/// Cliffords, with the group index chosen on each qubit.
pub fn local_clifford_max_fidelity(from: &QubitRegister, to: &QubitRegister) -> Result<(f64, Vec<usize>)> {
    if from.qubits() != to.qubits() {
        return Err(Error::DimensionMismatch { expected: to.qubits(), found: from.qubits() });
    }
    let group = clifford_group();
    let mut best = (-1.0, Vec::new());
    let mut choice = Vec::with_capacity(from.qubits());
    search(from, to, &group, 1, &mut choice, &mut best)?;
    Ok(best)
}

fn search(
    state: &QubitRegister,
    to: &QubitRegister,
    group: &[LocalOperator],
    qubit: usize,
    choice: &mut Vec<usize>,
    best: &mut (f64, Vec<usize>),
) -> Result<()> {
    if qubit > state.qubits() {
        let f = state.fidelity(to)?;
        if f > best.0 {
            *best = (f, choice.clone());
        }
        return Ok(());
    }
    for (k, op) in group.iter().enumerate() {
        choice.push(k);
        search(&state.apply_local(op, qubit)?, to, group, qubit + 1, choice, best)?;
        choice.pop();
    }
    Ok(())
}
