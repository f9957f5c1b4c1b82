//! Angle and index arguments.
//!
//! Angles are plain numbers (`0.3927`), π expressions (`pi/8`, `3pi/8`,
//! `-pi/4`, `3*pi/8`, `π/2`) or fractions (`1/3`). Expressions containing π
//! are always radians; plain numbers are radians unless `degrees` is set.

use std::f64::consts::PI;

use serde::{Deserialize, Serialize};

use crate::error::{CliError, Result};

pub fn parse_angle(text: &str, degrees: bool) -> Result<f64> {
    let bad = || CliError::config(format!("cannot parse angle '{text}'"));
    let s: String = text.chars().filter(|c| !c.is_whitespace()).collect::<String>().to_lowercase();
    if s.is_empty() {
        return Err(bad());
    }
    let (num, den) = match s.split_once('/') {
        Some((n, d)) => (n, Some(d.parse::<f64>().map_err(|_| bad())?)),
        None => (s.as_str(), None),
    };
    let (value, has_pi) = match num.find("pi").map(|i| (i, 2)).or_else(|| num.find('π').map(|i| (i, 'π'.len_utf8())))
    {
        Some((i, len)) => {
            if !num[i + len..].is_empty() {
                return Err(bad());
            }
            let coeff = num[..i].trim_end_matches('*');
            let c = match coeff {
                "" | "+" => 1.0,
                "-" => -1.0,
                c => c.parse::<f64>().map_err(|_| bad())?,
            };
            (c * PI, true)
        }
        None => (num.parse::<f64>().map_err(|_| bad())?, false),
    };
    let value = match den {
        Some(0.0) => return Err(bad()),
        Some(d) => value / d,
        None => value,
    };
    if !value.is_finite() {
        return Err(bad());
    }
    Ok(if degrees && !has_pi { value.to_radians() } else { value })
}

/// Evenly spaced angles from `start` to `stop` inclusive.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct AngleGrid {
    pub start: f64,
    pub stop: f64,
    pub steps: usize,
}

impl AngleGrid {
    /// `0` to `π/2` in 201 points.
    pub const DEFAULT: AngleGrid = AngleGrid { start: 0.0, stop: PI / 2.0, steps: 201 };

    /// Parses `start:stop:steps`.
    pub fn parse(text: &str, degrees: bool) -> Result<Self> {
        let parts: Vec<&str> = text.split(':').collect();
        let [start, stop, steps] = parts[..] else {
            return Err(CliError::config(format!("angle range '{text}' is not start:stop:steps")));
        };
        let steps =
            steps.trim().parse::<usize>().map_err(|_| CliError::config(format!("bad step count in '{text}'")))?;
        let grid = AngleGrid { start: parse_angle(start, degrees)?, stop: parse_angle(stop, degrees)?, steps };
        grid.validate()?;
        Ok(grid)
    }

    pub fn validate(&self) -> Result<()> {
        if self.steps < 2 {
            return Err(CliError::config("angle ranges need at least 2 steps"));
        }
        Ok(())
    }

    pub fn point(&self, i: usize) -> f64 {
        if i + 1 == self.steps {
            self.stop
        } else {
            self.start + (self.stop - self.start) * i as f64 / (self.steps - 1) as f64
        }
    }

    pub fn points(&self) -> Vec<f64> {
        (0..self.steps).map(|i| self.point(i)).collect()
    }
}

/// Parses an ordered qubit pair such as `2,3`.
pub fn parse_targets(text: &str) -> Result<(usize, usize)> {
    let bad = || CliError::config(format!("targets '{text}' are not two qubit indices like 2,3"));
    let (a, b) = text.split_once(',').ok_or_else(bad)?;
    Ok((a.trim().parse().map_err(|_| bad())?, b.trim().parse().map_err(|_| bad())?))
}
