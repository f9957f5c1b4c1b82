//! Angle sweeps over the gate and their CSV form.
//!
//! Rows run over `theta1` (outer) and `theta2` (inner). Columns are
//! `theta1,theta2` in radians followed by one column per quantity. Floats are
//! written in shortest round-trip form; quantities that need an output state
//! are `NaN` where the success probability is zero.

use std::fmt;
use std::io::{Read, Write};
use std::str::FromStr;

use polconv_core::gate::{GateParams, MIN_SUCCESS_PROBABILITY};
use polconv_core::measures::{concurrence, discord, Side};
use polconv_core::states::State;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::angle::AngleGrid;
use crate::error::{CliError, Result};

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Quantity {
    SuccessProbability,
    Concurrence,
    /// `δ(A|B)`: discord with qubit B measured.
    DiscordAB,
    /// `δ(B|A)`: discord with qubit A measured.
    DiscordBA,
    /// Fidelity of the output to a named state.
    Fidelity(String),
}

impl FromStr for Quantity {
    type Err = CliError;

    fn from_str(s: &str) -> Result<Self> {
        match s.trim() {
            "p_s" => Ok(Quantity::SuccessProbability),
            "concurrence" => Ok(Quantity::Concurrence),
            "discord_AB" => Ok(Quantity::DiscordAB),
            "discord_BA" => Ok(Quantity::DiscordBA),
            other => match other.strip_prefix("fidelity:") {
                Some(name) if !name.is_empty() => Ok(Quantity::Fidelity(name.into())),
                _ => Err(CliError::config(format!(
                    "unknown quantity '{other}' (expected p_s, concurrence, discord_AB, discord_BA or fidelity:<state>)"
                ))),
            },
        }
    }
}

impl fmt::Display for Quantity {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Quantity::SuccessProbability => f.write_str("p_s"),
            Quantity::Concurrence => f.write_str("concurrence"),
            Quantity::DiscordAB => f.write_str("discord_AB"),
            Quantity::DiscordBA => f.write_str("discord_BA"),
            Quantity::Fidelity(name) => write!(f, "fidelity:{name}"),
        }
    }
}

impl Serialize for Quantity {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.collect_str(self)
    }
}

impl<'de> Deserialize<'de> for Quantity {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let s = String::deserialize(d)?;
        s.parse().map_err(serde::de::Error::custom)
    }
}

pub fn parse_quantities(text: &str) -> Result<Vec<Quantity>> {
    text.split(',').filter(|s| !s.trim().is_empty()).map(str::parse).collect()
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SweepConfig {
    pub input: String,
    pub targets: (usize, usize),
    pub theta1: AngleGrid,
    pub theta2: AngleGrid,
    pub quantities: Vec<Quantity>,
}

impl SweepConfig {
    pub fn new(input: &str, targets: (usize, usize), quantities: Vec<Quantity>) -> Self {
        Self { input: input.into(), targets, theta1: AngleGrid::DEFAULT, theta2: AngleGrid::DEFAULT, quantities }
    }
}

/// A validated sweep with its states resolved.
#[derive(Debug, Clone)]
pub struct Evaluator {
    input: State,
    targets: (usize, usize),
    quantities: Vec<Quantity>,
    references: Vec<Option<State>>,
}

impl Evaluator {
    pub fn new(input: &str, targets: (usize, usize), quantities: &[Quantity]) -> Result<Self> {
        if quantities.is_empty() {
            return Err(CliError::config("at least one quantity is required"));
        }
        let input = State::from_name(input)?;
        let n = input.qubits();
        for t in [targets.0, targets.1] {
            if t == 0 || t > n {
                return Err(CliError::config(format!("target qubit {t} outside 1..={n} for input")));
            }
        }
        if targets.0 == targets.1 {
            return Err(CliError::config("gate targets must be distinct"));
        }
        let mut references = Vec::with_capacity(quantities.len());
        for q in quantities {
            references.push(match q {
                Quantity::Fidelity(name) => {
                    let s = State::from_name(name)?;
                    if s.qubits() != n {
                        return Err(CliError::config(format!(
                            "fidelity target {name} has {} qubits, input has {n}",
                            s.qubits()
                        )));
                    }
                    Some(s)
                }
                Quantity::Concurrence | Quantity::DiscordAB | Quantity::DiscordBA if n != 2 => {
                    return Err(CliError::config(format!("{q} needs a two-qubit input")));
                }
                _ => None,
            });
        }
        Ok(Self { input, targets, quantities: quantities.to_vec(), references })
    }

    pub fn from_config(cfg: &SweepConfig) -> Result<Self> {
        cfg.theta1.validate()?;
        cfg.theta2.validate()?;
        Self::new(&cfg.input, cfg.targets, &cfg.quantities)
    }

    /// Requested quantities at one angle pair, in column order.
    pub fn evaluate(&self, params: &GateParams) -> Result<Vec<f64>> {
        let p = self.input.success_probability(params, self.targets)?;
        let output =
            if p < MIN_SUCCESS_PROBABILITY { None } else { Some(self.input.apply_gate(params, self.targets)?.state) };
        self.quantities
            .iter()
            .zip(&self.references)
            .map(|(q, reference)| {
                let Some(out) = &output else {
                    return Ok(if *q == Quantity::SuccessProbability { p } else { f64::NAN });
                };
                Ok(match q {
                    Quantity::SuccessProbability => p,
                    Quantity::Concurrence => concurrence(&out.to_density())?,
                    Quantity::DiscordAB => discord(&out.to_density(), Side::B)?.value,
                    Quantity::DiscordBA => discord(&out.to_density(), Side::A)?.value,
                    Quantity::Fidelity(_) => out.fidelity(reference.as_ref().expect("resolved"))?,
                })
            })
            .collect()
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SweepTable {
    pub columns: Vec<String>,
    pub rows: Vec<Vec<f64>>,
}

pub fn run_sweep(cfg: &SweepConfig) -> Result<SweepTable> {
    let eval = Evaluator::from_config(cfg)?;
    let (t1, t2) = (cfg.theta1.points(), cfg.theta2.points());
    let rows = (0..t1.len() * t2.len())
        .into_par_iter()
        .map(|k| {
            let (a, b) = (t1[k / t2.len()], t2[k % t2.len()]);
            let mut row = vec![a, b];
            row.extend(eval.evaluate(&GateParams::new(a, b))?);
            Ok(row)
        })
        .collect::<Result<Vec<_>>>()?;
    let mut columns = vec!["theta1".to_string(), "theta2".to_string()];
    columns.extend(cfg.quantities.iter().map(ToString::to_string));
    Ok(SweepTable { columns, rows })
}

/// Shortest decimal that parses back to the same `f64`.
pub fn format_float(x: f64) -> String {
    format!("{x:?}")
}

pub fn write_csv(table: &SweepTable, out: impl Write) -> Result<()> {
    let mut w = csv::WriterBuilder::new().terminator(csv::Terminator::Any(b'\n')).from_writer(out);
    w.write_record(&table.columns)?;
    for row in &table.rows {
        w.write_record(row.iter().map(|&x| format_float(x)))?;
    }
    w.flush().map_err(CliError::Stdout)
}

pub fn read_csv(input: impl Read) -> Result<SweepTable> {
    let mut r = csv::Reader::from_reader(input);
    let columns = r.headers()?.iter().map(String::from).collect();
    let mut rows = Vec::new();
    for record in r.records() {
        let record = record?;
        let row = record
            .iter()
            .map(|f| f.parse::<f64>().map_err(|_| CliError::config(format!("bad number '{f}' in CSV"))))
            .collect::<Result<Vec<_>>>()?;
        rows.push(row);
    }
    Ok(SweepTable { columns, rows })
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::f64::consts::{FRAC_PI_4, FRAC_PI_8};

    fn small(input: &str, targets: (usize, usize), quantities: &str) -> SweepConfig {
        let grid = AngleGrid { start: 0.0, stop: std::f64::consts::FRAC_PI_2, steps: 5 };
        SweepConfig {
            theta1: grid,
            theta2: grid,
            ..SweepConfig::new(input, targets, parse_quantities(quantities).unwrap())
        }
    }

    #[test]
    fn quantity_names_round_trip() {
        for q in ["p_s", "concurrence", "discord_AB", "discord_BA", "fidelity:GHZ4"] {
            assert_eq!(q.parse::<Quantity>().unwrap().to_string(), q);
        }
        assert!("fidelity:".parse::<Quantity>().is_err());
        assert!("entropy".parse::<Quantity>().is_err());
    }

    #[test]
    fn grid_order_and_columns() {
        let t = run_sweep(&small("PlusPlus", (1, 2), "p_s,concurrence")).unwrap();
        assert_eq!(t.columns, ["theta1", "theta2", "p_s", "concurrence"]);
        assert_eq!(t.rows.len(), 25);
        assert_eq!((t.rows[1][0], t.rows[1][1]), (0.0, FRAC_PI_8));
        assert_eq!(t.rows[5][0], FRAC_PI_8);
    }

    #[test]
    fn known_points() {
        let e = Evaluator::new("PlusPlus", (1, 2), &parse_quantities("p_s,concurrence").unwrap()).unwrap();
        let v = e.evaluate(&GateParams::new(FRAC_PI_8, 3.0 * FRAC_PI_8)).unwrap();
        assert!((v[0] - 0.5).abs() < 1e-12 && (v[1] - 1.0).abs() < 1e-9);
        assert!(e.evaluate(&GateParams::new(0.0, 0.0)).unwrap()[1].abs() < 1e-12);
        let g = Evaluator::new("C4", (2, 3), &parse_quantities("fidelity:GHZ4").unwrap()).unwrap();
        assert!((g.evaluate(&GateParams::new(0.0, FRAC_PI_4)).unwrap()[0] - 1.0).abs() < 1e-12);
    }

    #[test]
    fn impossible_points_give_nan() {
        // The Ψ⁺ block vanishes on |HV⟩ at (π/8, π/8).
        let e = Evaluator::new("PsiPlus", (1, 2), &parse_quantities("p_s,concurrence").unwrap()).unwrap();
        let v = e.evaluate(&GateParams::new(FRAC_PI_8, FRAC_PI_8)).unwrap();
        assert!(v[0] < 1e-14 && v[1].is_nan(), "{v:?}");
    }

    #[test]
    fn invalid_configs() {
        assert!(Evaluator::new("C4", (2, 3), &parse_quantities("concurrence").unwrap()).is_err());
        assert!(Evaluator::new("C4", (2, 3), &parse_quantities("fidelity:PsiPlus").unwrap()).is_err());
        assert!(Evaluator::new("PlusPlus", (1, 3), &[Quantity::SuccessProbability]).is_err());
        assert!(Evaluator::new("PlusPlus", (1, 1), &[Quantity::SuccessProbability]).is_err());
        assert!(Evaluator::new("Nope", (1, 2), &[Quantity::SuccessProbability]).is_err());
        assert!(Evaluator::new("PlusPlus", (1, 2), &[]).is_err());
    }

    #[test]
    fn csv_round_trip_is_exact() {
        let t = run_sweep(&small("HalfIdentityPlus", (1, 2), "p_s,discord_AB")).unwrap();
        let mut buf = Vec::new();
        write_csv(&t, &mut buf).unwrap();
        let text = String::from_utf8(buf.clone()).unwrap();
        assert!(text.starts_with("theta1,theta2,p_s,discord_AB\n"));
        assert!(!text.contains('\r'));
        let back = read_csv(&buf[..]).unwrap();
        assert_eq!(back.columns, t.columns);
        for (a, b) in back.rows.iter().zip(&t.rows) {
            for (x, y) in a.iter().zip(b) {
                assert!(x.to_bits() == y.to_bits() || (x.is_nan() && y.is_nan()));
            }
        }
    }
}
