//! The assembled Galerkin systems against their explicitly printed forms,
//! and the index-form reducibility conditions against the polynomial
//! pattern check.

mod common;

use branchforge::galerkin::{energy, focusing_map, AlgebraicSystem, Nonlinearity};
use branchforge::modes::{ModeIndex, ModeSet};
use branchforge::reducible::{n_mode_solution, pair_is_reducible, triple_extra_conditions};
use branchforge::tree::fundamental_pair_reducible;
use common::SplitMix;

fn system(pairs: &[(u32, u32)]) -> AlgebraicSystem {
    AlgebraicSystem::new(ModeSet::from_pairs(pairs), Nonlinearity::Defocusing)
}

/// Full cubic-table equality against an expected sparse list; everything
/// not listed must be zero.
fn assert_table(system: &AlgebraicSystem, expected: &[((usize, [usize; 3]), i64)]) {
    let n = system.dim();
    for eq in 0..n {
        for i in 0..n {
            for j in i..n {
                for k in j..n {
                    let want = expected
                        .iter()
                        .find(|((e, m), _)| *e == eq && *m == [i, j, k])
                        .map(|(_, c)| *c)
                        .unwrap_or(0);
                    assert_eq!(
                        system.cubic_coeff(eq, [i, j, k]),
                        want,
                        "coefficient of a{i}a{j}a{k} in equation {eq}"
                    );
                }
            }
        }
    }
}

#[test]
fn one_mode_system_form() {
    // B[9B² − 16(2m+1)²Ω² + 16(2n+1)²] for any single mode.
    for (m, n) in [(0u32, 0u32), (1, 2), (3, 1)] {
        let sys = system(&[(m, n)]);
        assert_table(&sys, &[((0, [0, 0, 0]), 9)]);
        let (c, d) = ((2 * m + 1) as f64, (2 * n + 1) as f64);
        let omega = 1.37;
        let r = sys.residual(omega, &[1.0]);
        let expected = 9.0 + 16.0 * (d * d - c * c * omega * omega);
        assert!((r[0] - expected).abs() < 1e-12);
    }
}

#[test]
fn reducible_pair_system_form() {
    // A[9A²+12B²−16Ω²+16], B[12A²+9B²−16(2m+1)²Ω²+16(2n+1)²].
    let sys = system(&[(0, 0), (1, 2)]);
    assert_table(
        &sys,
        &[
            ((0, [0, 0, 0]), 9),
            ((0, [0, 1, 1]), 12),
            ((1, [0, 0, 1]), 12),
            ((1, [1, 1, 1]), 9),
        ],
    );
}

#[test]
fn appendix_case_systems_match_printed_equations() {
    // Case 1: A cosτ sinx, B cosτ sin3x.
    assert_table(
        &system(&[(0, 0), (0, 1)]),
        &[
            ((0, [0, 0, 0]), 9),
            ((0, [0, 0, 1]), -9),
            ((0, [0, 1, 1]), 18),
            ((1, [1, 1, 1]), 9),
            ((1, [0, 0, 1]), 18),
            ((1, [0, 0, 0]), -3),
        ],
    );
    // Case 2: A cosτ sinx, B cosτ sin(2n+1)x with n ≥ 2.
    for n in 2..=6 {
        assert_table(
            &system(&[(0, 0), (0, n)]),
            &[
                ((0, [0, 0, 0]), 9),
                ((0, [0, 1, 1]), 18),
                ((1, [1, 1, 1]), 9),
                ((1, [0, 0, 1]), 18),
            ],
        );
    }
    // Case 3: A cosτ sinx, B cos3τ sinx.
    assert_table(
        &system(&[(0, 0), (1, 0)]),
        &[
            ((0, [0, 0, 0]), 9),
            ((0, [0, 0, 1]), 9),
            ((0, [0, 1, 1]), 18),
            ((1, [1, 1, 1]), 9),
            ((1, [0, 0, 1]), 18),
            ((1, [0, 0, 0]), 3),
        ],
    );
    // Case 4: A cosτ sinx, B cos3τ sin3x.
    assert_table(
        &system(&[(0, 0), (1, 1)]),
        &[
            ((0, [0, 0, 0]), 9),
            ((0, [0, 0, 1]), -3),
            ((0, [0, 1, 1]), 12),
            ((1, [1, 1, 1]), 9),
            ((1, [0, 0, 1]), 12),
            ((1, [0, 0, 0]), -1),
        ],
    );
    // Case 5: A cosτ sinx, B cos(2m+1)τ sinx with m ≥ 2.
    for m in 2..=6 {
        assert_table(
            &system(&[(0, 0), (m, 0)]),
            &[
                ((0, [0, 0, 0]), 9),
                ((0, [0, 1, 1]), 18),
                ((1, [1, 1, 1]), 9),
                ((1, [0, 0, 1]), 18),
            ],
        );
    }
}

#[test]
fn pattern_check_equals_index_conditions_for_pairs() {
    // Pairs with the fundamental mode, indices ≤ 10.
    for m in 0..=10u32 {
        for n in 0..=10u32 {
            let p = ModeIndex::new(m, n);
            if p == ModeIndex::FUNDAMENTAL {
                continue;
            }
            let sys = system(&[(0, 0), (m, n)]);
            assert_eq!(
                sys.reducible_pattern_check().is_ok(),
                fundamental_pair_reducible(p),
                "fundamental pair with {p}"
            );
        }
    }
    // General pairs, indices ≤ 6 exhaustively.
    let modes: Vec<ModeIndex> = (0..=6)
        .flat_map(|m| (0..=6).map(move |n| ModeIndex::new(m, n)))
        .collect();
    for (i, &a) in modes.iter().enumerate() {
        for &b in &modes[i + 1..] {
            let sys = AlgebraicSystem::new(
                ModeSet::new(vec![a, b]).unwrap(),
                Nonlinearity::Defocusing,
            );
            assert_eq!(
                sys.reducible_pattern_check().is_ok(),
                pair_is_reducible(a, b),
                "pair {a}, {b}"
            );
        }
    }
}

#[test]
fn pattern_check_equals_index_conditions_for_triples() {
    // Triples {fundamental, p1, p2} with indices ≤ 6: the pattern check must
    // equal pairwise reducibility plus the three extra conditions.
    let modes: Vec<ModeIndex> = (1..=6)
        .flat_map(|m| (1..=6).map(move |n| ModeIndex::new(m, n)))
        .filter(|&p| fundamental_pair_reducible(p))
        .collect();
    let mut reducible_count = 0;
    for (i, &p1) in modes.iter().enumerate() {
        for &p2 in &modes[i + 1..] {
            let expected = pair_is_reducible(p1, p2) && triple_extra_conditions(p1, p2);
            let sys = AlgebraicSystem::new(
                ModeSet::new(vec![ModeIndex::FUNDAMENTAL, p1, p2]).unwrap(),
                Nonlinearity::Defocusing,
            );
            assert_eq!(
                sys.reducible_pattern_check().is_ok(),
                expected,
                "triple with {p1}, {p2}"
            );
            reducible_count += expected as usize;
        }
    }
    assert!(reducible_count > 0, "some reducible triples must exist");
}

#[test]
fn assembled_residual_matches_reducible_closed_form() {
    // For reducible spans, the assembled residual equals the 9/12 diagonal
    // form at random points.
    let mut rng = SplitMix::new(0x5eed_0001);
    let spans = [
        ModeSet::from_pairs(&[(0, 0)]),
        ModeSet::from_pairs(&[(0, 0), (1, 2)]),
        ModeSet::from_pairs(&[(0, 0), (2, 5)]),
        ModeSet::from_pairs(&[(0, 0), (1, 3), (3, 8)]),
        ModeSet::from_pairs(&[(1, 2), (3, 7)]),
    ];
    for span in &spans {
        let sys = AlgebraicSystem::new(span.clone(), Nonlinearity::Defocusing);
        assert!(sys.reducible_pattern_check().is_ok());
        for _ in 0..100 {
            let omega = rng.range(0.5, 3.0);
            let amps: Vec<f64> = (0..span.len()).map(|_| rng.range(-2.0, 2.0)).collect();
            let assembled = sys.residual(omega, &amps);
            for (k, mode) in span.iter().enumerate() {
                let sum_sq: f64 = amps.iter().map(|a| a * a).sum();
                let closed = amps[k]
                    * (9.0 * amps[k] * amps[k] + 12.0 * (sum_sq - amps[k] * amps[k]))
                    + 16.0
                        * ((mode.spatial_factor() * mode.spatial_factor()) as f64
                            - (mode.temporal_factor() * mode.temporal_factor()) as f64
                                * omega
                                * omega)
                        * amps[k];
                assert!(
                    (assembled[k] - closed).abs() <= 1e-12 * (1.0 + closed.abs()),
                    "span {span} eq {k}: {} vs {}",
                    assembled[k],
                    closed
                );
            }
        }
    }
}

#[test]
fn focusing_map_sends_solutions_to_solutions() {
    // 50 sampled points on reducible solutions; images must solve the
    // focusing-sign system on the transposed span.
    let mut checked = 0;
    for pairs in [&[(0u32, 0u32)][..], &[(0, 0), (1, 2)], &[(0, 0), (2, 5)]] {
        let span = ModeSet::from_pairs(pairs);
        let sol = n_mode_solution(&span).unwrap();
        let Some(domain) = sol.domain() else { continue };
        for omega in domain.sample(20, 4.0) {
            let Some(amps) = sol.amplitudes_at(omega) else { continue };
            let (omega_f, image, span_f) = focusing_map(omega, &amps, &span);
            let focusing = AlgebraicSystem::new(span_f, Nonlinearity::Focusing);
            assert!(
                focusing.residual_norm(omega_f, &image) < 1e-10,
                "focusing image of {span} at omega {omega}"
            );
            checked += 1;
        }
    }
    assert!(checked >= 50, "only {checked} focusing images checked");
}

#[test]
fn energy_groups_by_spatial_index() {
    // Two modes sharing a spatial index interfere before squaring.
    let span = ModeSet::from_pairs(&[(0, 1), (2, 1)]);
    let omega = 1.2;
    let e = energy(omega, &[0.7, 0.2], &span);
    // (π/4)Ω²(0.7·1 + 0.2·5)² with both (−1)^m = +1.
    let expected = 0.25 * std::f64::consts::PI * omega * omega * (0.7 + 1.0_f64).powi(2);
    assert!((e - expected).abs() < 1e-12);
}
