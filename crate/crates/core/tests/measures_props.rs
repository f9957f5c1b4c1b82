//! Invariants of concurrence and discord on random states, and an
//! independent brute-force check of the discord minimization.

use std::f64::consts::{FRAC_PI_3, PI};

use nalgebra::{DMatrix, Matrix2};
use num_complex::Complex64 as C64;
use polconv_core::gate::{apply_gate_mixed, GateParams};
use polconv_core::measures::{concurrence, discord, mutual_information, von_neumann_entropy, Side};
use polconv_core::states::NamedState;
use polconv_core::{DensityOperator, LocalOperator};
use proptest::prelude::*;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

fn random_unitary(rng: &mut impl Rng) -> LocalOperator {
    let [a, b, d, g]: [f64; 4] = std::array::from_fn(|_| rng.gen_range(0.0..2.0 * PI));
    let e = |x: f64| C64::from_polar(1.0, x);
    let (s, c) = (g / 4.0).sin_cos();
    LocalOperator::new(Matrix2::new(e(a + b) * c, e(a + d) * s, -e(a - d) * s, e(a - b) * c))
}

/// `G G† / Tr` for a complex Gaussian-like `G` of the given rank.
fn random_density(rng: &mut impl Rng, rank: usize) -> DensityOperator {
    let g = DMatrix::from_fn(4, rank, |_, _| C64::new(rng.gen_range(-1.0..1.0), rng.gen_range(-1.0..1.0)));
    let m = &g * g.adjoint();
    let tr = m.trace().re;
    DensityOperator::from_matrix(2, m / C64::new(tr, 0.0)).unwrap()
}

#[test]
fn discord_is_non_negative_on_random_states() {
    let mut rng = ChaCha8Rng::seed_from_u64(2024);
    for k in 0..200 {
        let rho = random_density(&mut rng, 1 + k % 4);
        for side in [Side::A, Side::B] {
            let d = discord(&rho, side).unwrap();
            assert!(d.value >= -1e-9, "sample {k} {side:?}: {}", d.value);
            assert!((d.value - (d.mutual_information - d.classical_correlation)).abs() < 1e-9);
            assert!(d.converged, "sample {k} {side:?}");
        }
    }
}

#[test]
fn classical_quantum_states_have_zero_discord() {
    let mut rng = ChaCha8Rng::seed_from_u64(77);
    for _ in 0..40 {
        let p: f64 = rng.gen_range(0.0..1.0);
        let u = random_unitary(&mut rng);
        let (r0, r1) = (random_density1(&mut rng), random_density1(&mut rng));
        let h = DensityOperator::from_pure(&NamedState::H.build());
        let v = DensityOperator::from_pure(&NamedState::V.build());
        // Orthonormal pair u|H⟩, u|V⟩ on the measured qubit.
        let on_a = DensityOperator::mixture(&[(p, h.tensor(&r0).unwrap()), (1.0 - p, v.tensor(&r1).unwrap())])
            .unwrap()
            .apply_local(&u, 1)
            .unwrap();
        assert!(discord(&on_a, Side::A).unwrap().value.abs() < 1e-6);
        let on_b = DensityOperator::mixture(&[(p, r0.tensor(&h).unwrap()), (1.0 - p, r1.tensor(&v).unwrap())])
            .unwrap()
            .apply_local(&u, 2)
            .unwrap();
        assert!(discord(&on_b, Side::B).unwrap().value.abs() < 1e-6);
    }
}

fn random_density1(rng: &mut impl Rng) -> DensityOperator {
    let g = DMatrix::from_fn(2, 2, |_, _| C64::new(rng.gen_range(-1.0..1.0), rng.gen_range(-1.0..1.0)));
    let m = &g * g.adjoint();
    let tr = m.trace().re;
    DensityOperator::from_matrix(1, m / C64::new(tr, 0.0)).unwrap()
}

#[test]
fn discord_point_output() {
    let out = apply_gate_mixed(&NamedState::half_identity_plus(), &GateParams::new(0.0, FRAC_PI_3), (1, 2)).unwrap();
    assert!((out.success_probability - 7.0 / 16.0).abs() < 1e-12);
    assert!(out.state.max_abs_diff(&NamedState::discord_point_state()).unwrap() < 1e-10);
    assert!(concurrence(&out.state).unwrap() < 1e-9);
    let ab = discord(&out.state, Side::B).unwrap();
    let ba = discord(&out.state, Side::A).unwrap();
    assert!((ab.value - 0.082).abs() < 1e-3);
    assert!(ba.value.is_finite() && (ab.value - ba.value).abs() > 1e-3);
}

/// Conditional entropy for measuring qubit 2 in the basis with Bloch angles
/// `(t, p)`, written out from scratch: project, normalize, diagonalize.
fn brute_conditional_entropy(rho: &DMatrix<C64>, t: f64, p: f64) -> f64 {
    let (s, c) = (t / 2.0).sin_cos();
    let e = C64::from_polar(1.0, p);
    let basis = [[C64::new(c, 0.0), e * s], [-e.conj() * s, C64::new(c, 0.0)]];
    let mut total = 0.0;
    for v in basis {
        // ⟨v| on qubit 2 from both sides.
        let mut m = [[C64::new(0.0, 0.0); 2]; 2];
        for (i, row) in m.iter_mut().enumerate() {
            for (j, x) in row.iter_mut().enumerate() {
                for k in 0..2 {
                    for l in 0..2 {
                        *x += v[k].conj() * rho[(2 * i + k, 2 * j + l)] * v[l];
                    }
                }
            }
        }
        let pb = m[0][0].re + m[1][1].re;
        if pb < 1e-15 {
            continue;
        }
        let det = (m[0][0] * m[1][1] - m[0][1] * m[1][0]).re / (pb * pb);
        let r = (0.25 - det).max(0.0).sqrt();
        for lam in [0.5 + r, 0.5 - r] {
            if lam > 0.0 {
                total -= pb * lam * lam.log2();
            }
        }
    }
    total
}

#[test]
fn discord_matches_fine_grid_brute_force() {
    let rho = NamedState::discord_point_state();
    let m = rho.matrix();
    let n = 400;
    let mut best = f64::INFINITY;
    for i in 0..=n {
        for j in 0..2 * n {
            let t = PI * i as f64 / n as f64;
            let p = PI * j as f64 / n as f64;
            best = best.min(brute_conditional_entropy(m, t, p));
        }
    }
    let s_a = von_neumann_entropy(&rho.partial_trace(&[1]).unwrap()).unwrap();
    let brute = mutual_information(&rho).unwrap() - (s_a - best);
    let d = discord(&rho, Side::B).unwrap();
    // The optimizer may only improve on the grid, and not by more than its
    // spacing allows.
    assert!(d.value <= brute + 1e-12);
    assert!(brute - d.value < 1e-4, "brute {brute} vs {}", d.value);
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn concurrence_is_local_unitary_invariant(seed in any::<u64>(), rank in 1usize..=4) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let rho = random_density(&mut rng, rank);
        let (u1, u2) = (random_unitary(&mut rng), random_unitary(&mut rng));
        let moved = rho.apply_local(&u1, 1).unwrap().apply_local(&u2, 2).unwrap();
        let (c0, c1) = (concurrence(&rho).unwrap(), concurrence(&moved).unwrap());
        prop_assert!((c0 - c1).abs() < 1e-10, "{} vs {}", c0, c1);
        prop_assert!((0.0..=1.0 + 1e-12).contains(&c0));
    }

    #[test]
    fn discord_bounded_by_mutual_information(seed in any::<u64>()) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let rho = random_density(&mut rng, 2);
        let d = discord(&rho, Side::B).unwrap();
        prop_assert!(d.value <= d.mutual_information + 1e-9);
        prop_assert!(d.classical_correlation >= -1e-9);
    }
}
