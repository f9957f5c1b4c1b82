//! Two-photon propagation through the gate in the creation-operator picture.
//!
//! This is an independent route to the gate's Kraus operator: each input
//! basis state `a†_{p,1} a†_{q,2}|0⟩` is pushed through the optical path as a
//! polynomial in creation operators, and the coincidence terms with one photon
//! in each of the output modes 5 and 6 form one column of the operator.
//!
//! Path: fixed input plates → PBS₁ (modes 1,2 → 3,4) → tunable plates
//! (θ₁ on mode 4, θ₂ on mode 3) → PBS₂ (modes 3,4 → 5,6) → fixed output
//! plates on mode 6. The fixed plates are a half-wave plate at 0 on mode 1, one
//! at π/4 on mode 2, and the pair 0 then π/4 on mode 6; they set the
//! polarization frame of the ports so the coincidence operator takes the
//! closed form used in [`crate::gate`].

use alloc::collections::BTreeMap;
use core::f64::consts::FRAC_PI_4;

use nalgebra::Matrix4;
use num_traits::Zero;

#[allow(unused_imports)]
use num_traits::Float;

use crate::error::{Error, Result};
use crate::gate::TwoQubitKraus;
use crate::local::LocalOperator;
use crate::{c64, C64};

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Polarization {
    H,
    V,
}

impl Polarization {
    fn index(self) -> usize {
        match self {
            Polarization::H => 0,
            Polarization::V => 1,
        }
    }

    fn from_index(i: usize) -> Self {
        if i == 0 {
            Polarization::H
        } else {
            Polarization::V
        }
    }
}

/// A (spatial mode, polarization) pair indexing one creation operator.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct ModeLabel {
    pub spatial: u8,
    pub polarization: Polarization,
}

impl ModeLabel {
    pub const fn new(spatial: u8, polarization: Polarization) -> Self {
        Self { spatial, polarization }
    }

    pub const fn h(spatial: u8) -> Self {
        Self::new(spatial, Polarization::H)
    }

    pub const fn v(spatial: u8) -> Self {
        Self::new(spatial, Polarization::V)
    }
}

/// Which polarizing beamsplitter of the path.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Beamsplitter {
    First,
    Second,
}

/// Fixed plates on the input ports, applied before the first beamsplitter.
pub const INPUT_PLATES: [(u8, f64); 2] = [(1, 0.0), (2, FRAC_PI_4)];
/// Fixed plates on the output ports, applied in order after the second beamsplitter.
pub const OUTPUT_PLATES: [(u8, f64); 2] = [(6, 0.0), (6, FRAC_PI_4)];

/// Degree-2 polynomial in creation operators acting on the vacuum.
///
/// Keys are unordered photon pairs stored with the smaller label first. A
/// coefficient `c` on a doubly occupied key `(x, x)` means `c (a†_x)²|0⟩ =
/// √2 c |2_x⟩`.
#[derive(Debug, Clone, PartialEq, Default)]
pub struct FockPolynomial {
    terms: BTreeMap<(ModeLabel, ModeLabel), C64>,
}

fn key(a: ModeLabel, b: ModeLabel) -> (ModeLabel, ModeLabel) {
    if a <= b {
        (a, b)
    } else {
        (b, a)
    }
}

/// Coincidence block extracted after post-selection.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Coincidence {
    /// Amplitudes on `|HH⟩, |HV⟩, |VH⟩, |VV⟩` of modes (5, 6).
    pub amplitudes: [C64; 4],
    /// Total probability carried by the discarded terms.
    pub discarded_weight: f64,
}

impl Coincidence {
    pub fn success_probability(&self) -> f64 {
        self.amplitudes.iter().map(|a| a.norm_sqr()).sum()
    }
}

impl FockPolynomial {
    pub fn new() -> Self {
        Self::default()
    }

    /// `coeff · a†_a a†_b`.
    pub fn monomial(a: ModeLabel, b: ModeLabel, coeff: C64) -> Self {
        let mut p = Self::new();
        p.add(a, b, coeff);
        p
    }

    /// Input basis state with polarization `first` in mode 1 and `second` in mode 2.
    pub fn input(first: Polarization, second: Polarization) -> Self {
        Self::monomial(ModeLabel::new(1, first), ModeLabel::new(2, second), c64(1.0, 0.0))
    }

    pub fn add(&mut self, a: ModeLabel, b: ModeLabel, coeff: C64) {
        *self.terms.entry(key(a, b)).or_insert_with(C64::zero) += coeff;
    }

    pub fn coefficient(&self, a: ModeLabel, b: ModeLabel) -> C64 {
        self.terms.get(&key(a, b)).copied().unwrap_or_else(C64::zero)
    }

    /// Amplitude on the normalized Fock ket with photons in `a` and `b`.
    pub fn ket_amplitude(&self, a: ModeLabel, b: ModeLabel) -> C64 {
        let c = self.coefficient(a, b);
        if a == b {
            c * 2f64.sqrt()
        } else {
            c
        }
    }

    pub fn terms(&self) -> impl Iterator<Item = (&(ModeLabel, ModeLabel), &C64)> {
        self.terms.iter()
    }

    /// Squared norm of the state the polynomial creates from the vacuum.
    pub fn norm_sqr(&self) -> f64 {
        self.terms.iter().map(|((a, b), c)| if a == b { 2.0 * c.norm_sqr() } else { c.norm_sqr() }).sum()
    }

    /// Replaces every creation operator by a linear combination of others.
    fn substitute<F>(&self, map: F) -> Result<Self>
    where
        F: Fn(ModeLabel) -> Result<[(ModeLabel, C64); 2]>,
    {
        let mut out = Self::new();
        for (&(a, b), &c) in &self.terms {
            let (ia, ib) = (map(a)?, map(b)?);
            for (la, ca) in ia {
                for (lb, cb) in ib {
                    let w = c * ca * cb;
                    if !w.is_zero() {
                        out.add(la, lb, w);
                    }
                }
            }
        }
        out.terms.retain(|_, c| !c.is_zero());
        Ok(out)
    }

    /// Polarizing beamsplitter relabeling: transmits H and reflects V.
    ///
    /// First: `H₁→H₄, H₂→H₃, V₁→V₃, V₂→V₄`. Second: `H₃→H₆, H₄→H₅, V₃→V₅, V₄→V₆`.
    pub fn apply_pbs(&self, which: Beamsplitter) -> Result<Self> {
        let zero = c64(0.0, 0.0);
        let one = c64(1.0, 0.0);
        self.substitute(|m| {
            use Polarization::{H, V};
            let target = match (which, m.spatial, m.polarization) {
                (Beamsplitter::First, 1, H) => 4,
                (Beamsplitter::First, 2, H) => 3,
                (Beamsplitter::First, 1, V) => 3,
                (Beamsplitter::First, 2, V) => 4,
                (Beamsplitter::Second, 3, H) => 6,
                (Beamsplitter::Second, 4, H) => 5,
                (Beamsplitter::Second, 3, V) => 5,
                (Beamsplitter::Second, 4, V) => 6,
                _ => return Err(Error::ModeOutOfRange { mode: m.spatial }),
            };
            let l = ModeLabel::new(target, m.polarization);
            Ok([(l, one), (l, zero)])
        })
    }

    /// Half-wave plate at `theta` on spatial `mode`, any mode.
    pub fn apply_plate(&self, mode: u8, theta: f64) -> Result<Self> {
        let jones = *LocalOperator::half_wave_plate(theta).matrix();
        self.substitute(|m| {
            if m.spatial != mode {
                return Ok([(m, c64(1.0, 0.0)), (m, c64(0.0, 0.0))]);
            }
            let col = m.polarization.index();
            Ok(core::array::from_fn(|row| (ModeLabel::new(mode, Polarization::from_index(row)), jones[(row, col)])))
        })
    }

    /// Tunable half-wave plate between the beamsplitters (mode 3 or 4).
    pub fn apply_hwp(&self, mode: u8, theta: f64) -> Result<Self> {
        if mode != 3 && mode != 4 {
            return Err(Error::ModeOutOfRange { mode });
        }
        self.apply_plate(mode, theta)
    }

    /// Keeps the terms with one photon in mode 5 and one in mode 6.
    pub fn postselect_one_per_output(&self) -> Coincidence {
        let mut amplitudes = [C64::zero(); 4];
        let mut discarded_weight = 0.0;
        for (&(a, b), &c) in &self.terms {
            match (a.spatial, b.spatial) {
                (5, 6) => amplitudes[2 * a.polarization.index() + b.polarization.index()] += c,
                _ => discarded_weight += if a == b { 2.0 * c.norm_sqr() } else { c.norm_sqr() },
            }
        }
        Coincidence { amplitudes, discarded_weight }
    }
}

/// Runs `input` through the complete optical path.
pub fn propagate(input: &FockPolynomial, theta1: f64, theta2: f64) -> Result<FockPolynomial> {
    let mut p = input.clone();
    for (mode, angle) in INPUT_PLATES {
        p = p.apply_plate(mode, angle)?;
    }
    p = p.apply_pbs(Beamsplitter::First)?;
    p = p.apply_hwp(4, theta1)?;
    p = p.apply_hwp(3, theta2)?;
    p = p.apply_pbs(Beamsplitter::Second)?;
    for (mode, angle) in OUTPUT_PLATES {
        p = p.apply_plate(mode, angle)?;
    }
    Ok(p)
}

/// Assembles the post-selected operator column by column from [`propagate`].
pub fn extract_kraus(theta1: f64, theta2: f64) -> TwoQubitKraus {
    let mut m = Matrix4::<C64>::zeros();
    for col in 0..4 {
        let input = FockPolynomial::input(Polarization::from_index(col >> 1), Polarization::from_index(col & 1));
        let out = propagate(&input, theta1, theta2).expect("input modes are 1 and 2");
        let coinc = out.postselect_one_per_output();
        for (row, a) in coinc.amplitudes.iter().enumerate() {
            m[(row, col)] = *a;
        }
    }
    TwoQubitKraus::from_matrix(m)
}
