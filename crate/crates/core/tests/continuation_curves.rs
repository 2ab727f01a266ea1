//! Continuation against closed forms: trunk traces, bifurcation detection
//! and switching, step-size robustness, and exact sign-flip determinism.

mod common;

use branchforge::continuation::{
    detect_bifurcations, switch_branch, trace_curve, ContinuationConfig, MarkerKind, SolutionPoint,
};
use branchforge::galerkin::{energy, AlgebraicSystem, Nonlinearity};
use branchforge::modes::ModeSet;

fn trunk_point(sys: &AlgebraicSystem, omega: f64) -> SolutionPoint {
    let mut amps = vec![0.0; sys.dim()];
    amps[0] = 4.0 / 3.0 * (omega * omega - 1.0f64).sqrt();
    SolutionPoint::new(sys, omega, amps)
}

#[test]
fn every_emitted_point_satisfies_tolerance_independently() {
    let sys = AlgebraicSystem::new(ModeSet::from_pairs(&[(0, 0), (1, 2)]), Nonlinearity::Defocusing);
    let config = ContinuationConfig { omega_max: 2.2, ..Default::default() };
    let curve = trace_curve(&sys, &trunk_point(&sys, 1.1), 1.0, &config).unwrap();
    assert!(curve.points.len() > 30);
    for p in &curve.points {
        // Recomputed from the assembled system, not from solver state.
        assert!(sys.residual_norm(p.omega, &p.amplitudes) < 1e-10);
        assert!(p.residual_norm < 1e-10);
    }
    // Consecutive points stay within the arc-length step bound (predictor
    // step plus corrector displacement).
    for pair in curve.points.windows(2) {
        let mut d2 = (pair[0].omega - pair[1].omega).powi(2);
        for (a, b) in pair[0].amplitudes.iter().zip(&pair[1].amplitudes) {
            d2 += (a - b) * (a - b);
        }
        assert!(d2.sqrt() <= 3.0 * config.max_step);
    }
}

#[test]
fn two_mode_trunk_bifurcation_detected_and_switched() {
    let sys = AlgebraicSystem::new(ModeSet::from_pairs(&[(0, 0), (1, 2)]), Nonlinearity::Defocusing);
    let config = ContinuationConfig { omega_max: 2.0, ..Default::default() };
    let curve = trace_curve(&sys, &trunk_point(&sys, 1.2), 1.0, &config).unwrap();
    let bifs = detect_bifurcations(&curve);
    let expected = (71.0f64 / 23.0).sqrt();
    assert!(
        bifs.iter().any(|p| (p.omega - expected).abs() < 1e-8),
        "expected bifurcation at {expected}, got {:?}",
        bifs.iter().map(|p| p.omega).collect::<Vec<_>>()
    );
    let bp = bifs
        .iter()
        .min_by(|a, b| {
            (a.omega - expected).abs().partial_cmp(&(b.omega - expected).abs()).unwrap()
        })
        .unwrap();
    let switched = switch_branch(&sys, bp, &config);
    assert_eq!(switched.len(), 2, "two sign copies of the branch");
    let signs: Vec<f64> = switched.iter().map(|p| p.amplitudes[1].signum()).collect();
    assert_eq!(signs[0] * signs[1], -1.0, "opposite B signs");
    for p in &switched {
        assert!(p.amplitudes[1].abs() > 1e-5, "B must switch on");
        assert!(sys.residual_norm(p.omega, &p.amplitudes) < 1e-10);
    }
}

#[test]
fn fold_points_do_not_switch() {
    // The perturbed system's trunk folds at the branch corner; switching
    // there must produce nothing.
    let sys = AlgebraicSystem::new(
        ModeSet::from_pairs(&[(0, 0), (0, 1), (1, 2)]),
        Nonlinearity::Defocusing,
    );
    let config = ContinuationConfig { omega_max: 2.2, ..Default::default() };
    let mut start = vec![0.0; 3];
    start[0] = 4.0 / 3.0 * (1.1f64 * 1.1 - 1.0f64).sqrt();
    let guess = SolutionPoint::new(&sys, 1.1, start);
    let constraint = branchforge::continuation::Constraint::fixed_omega(3, 1.1);
    let (start, _) =
        branchforge::continuation::newton_correct(&sys, &guess, &constraint, &config).unwrap();
    let curve = trace_curve(&sys, &start, 1.0, &config).unwrap();
    let fold_idx = curve
        .markers
        .iter()
        .find(|(_, k)| *k == MarkerKind::Fold)
        .map(|(i, _)| *i)
        .expect("trunk trace folds at the branch corner");
    let at_fold = curve.points[fold_idx].clone();
    assert!(switch_branch(&sys, &at_fold, &config).is_empty());
}

#[test]
fn retrace_with_half_step_is_consistent() {
    // Halving the max step changes no point's (Ω, E) by more than 1e−6
    // relative at matched Ω: the fine curve, corrected onto the coarse
    // point's frequency, must give the same solution.
    let sys = AlgebraicSystem::new(ModeSet::from_pairs(&[(0, 0), (1, 2)]), Nonlinearity::Defocusing);
    let coarse_cfg = ContinuationConfig { omega_max: 2.5, ..Default::default() };
    let fine_cfg = ContinuationConfig {
        omega_max: 2.5,
        max_step: coarse_cfg.max_step / 2.0,
        ..Default::default()
    };
    let coarse = trace_curve(&sys, &trunk_point(&sys, 1.1), 1.0, &coarse_cfg).unwrap();
    let fine = trace_curve(&sys, &trunk_point(&sys, 1.1), 1.0, &fine_cfg).unwrap();
    let mut compared = 0;
    for p in coarse.points.iter().filter(|p| p.omega <= 2.5) {
        // Bracketing fine segment at this Ω (the trunk trace is monotone).
        let Some(seg) = fine.points.windows(2).find(|s| s[0].omega <= p.omega && p.omega <= s[1].omega)
        else {
            continue;
        };
        let t = (p.omega - seg[0].omega) / (seg[1].omega - seg[0].omega).max(1e-300);
        let interp: Vec<f64> = seg[0]
            .amplitudes
            .iter()
            .zip(&seg[1].amplitudes)
            .map(|(a, b)| a + t * (b - a))
            .collect();
        let guess = SolutionPoint::new(&sys, p.omega, interp);
        let constraint = branchforge::continuation::Constraint::fixed_omega(sys.dim(), p.omega);
        let (matched, _) =
            branchforge::continuation::newton_correct(&sys, &guess, &constraint, &fine_cfg)
                .expect("fine curve correction at matched omega");
        let e_coarse = energy(p.omega, &p.amplitudes, sys.span());
        let e_fine = energy(matched.omega, &matched.amplitudes, sys.span());
        assert!(
            (e_coarse - e_fine).abs() <= 1e-6 * (1.0 + e_coarse.abs()),
            "at omega {}: {e_coarse} vs {e_fine}",
            p.omega
        );
        compared += 1;
    }
    assert!(compared > 20, "only {compared} matched points");
}

#[test]
fn sign_flipped_start_gives_bitwise_flipped_curve() {
    let sys = AlgebraicSystem::new(ModeSet::from_pairs(&[(0, 0), (1, 2)]), Nonlinearity::Defocusing);
    let config = ContinuationConfig { omega_max: 1.9, ..Default::default() };
    let start = trunk_point(&sys, 1.2);
    let mut flipped_start = start.clone();
    for a in &mut flipped_start.amplitudes {
        *a = -*a;
    }
    let flipped_start = SolutionPoint::new(&sys, flipped_start.omega, flipped_start.amplitudes);
    let curve = trace_curve(&sys, &start, 1.0, &config).unwrap();
    let flipped = trace_curve(&sys, &flipped_start, 1.0, &config).unwrap();
    assert_eq!(curve.points.len(), flipped.points.len());
    for (p, q) in curve.points.iter().zip(&flipped.points) {
        assert_eq!(p.omega.to_bits(), q.omega.to_bits());
        for (a, b) in p.amplitudes.iter().zip(&q.amplitudes) {
            // Exact negation; ±0.0 are the same state.
            assert_eq!(*a, -b, "amplitudes must be exact negations");
            if *a != 0.0 {
                assert_eq!(a.to_bits(), (-b).to_bits());
            }
        }
    }
}

#[test]
fn retrace_is_bit_identical() {
    let sys = AlgebraicSystem::new(ModeSet::from_pairs(&[(0, 0), (1, 2)]), Nonlinearity::Defocusing);
    let config = ContinuationConfig { omega_max: 2.0, ..Default::default() };
    let a = trace_curve(&sys, &trunk_point(&sys, 1.1), 1.0, &config).unwrap();
    let b = trace_curve(&sys, &trunk_point(&sys, 1.1), 1.0, &config).unwrap();
    assert_eq!(a.points.len(), b.points.len());
    assert_eq!(a.markers, b.markers);
    for (p, q) in a.points.iter().zip(&b.points) {
        assert_eq!(p.omega.to_bits(), q.omega.to_bits());
        for (x, y) in p.amplitudes.iter().zip(&q.amplitudes) {
            assert_eq!(x.to_bits(), y.to_bits());
        }
    }
}

#[test]
fn trace_downward_leaves_window_at_lower_edge() {
    let sys = AlgebraicSystem::new(ModeSet::from_pairs(&[(0, 0)]), Nonlinearity::Defocusing);
    let config = ContinuationConfig { omega_min: 1.05, omega_max: 3.0, ..Default::default() };
    let curve = trace_curve(&sys, &trunk_point(&sys, 1.5), -1.0, &config).unwrap();
    assert!(curve.points.last().unwrap().omega < 1.05 + 1e-6);
}
