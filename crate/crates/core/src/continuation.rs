//! Pseudo-arc-length continuation of solution curves of finite Galerkin
//! systems, with fold marking, bifurcation detection, branch switching and
//! closed-loop recognition.
//!
//! The augmented state is `x = [a_0, …, a_{d−1}, Ω]`. A predictor step walks
//! along the unit tangent of the bordered Jacobian; the corrector solves the
//! residual together with one affine constraint (the arc-length hyperplane,
//! or a fixed-Ω pin when seeding). Steps halve on corrector failure and grow
//! by 1.3 after fast successes. All arithmetic is plain double precision and
//! the iteration order is fixed, so retracing a curve is bit-reproducible.

use crate::galerkin::AlgebraicSystem;
use crate::linalg::{self, Lu};

/// One converged point of a solution curve. `residual_norm` is re-evaluated
/// from the assembled system after the corrector finishes, never copied from
/// the solver's internal state.
#[derive(Clone, Debug, PartialEq, serde::Serialize, serde::Deserialize)]
pub struct SolutionPoint {
    pub omega: f64,
    pub amplitudes: Vec<f64>,
    pub residual_norm: f64,
}

impl SolutionPoint {
    pub fn new(system: &AlgebraicSystem, omega: f64, amplitudes: Vec<f64>) -> Self {
        let residual_norm = system.residual_norm(omega, &amplitudes);
        SolutionPoint { omega, amplitudes, residual_norm }
    }

    fn state(&self) -> Vec<f64> {
        let mut x = self.amplitudes.clone();
        x.push(self.omega);
        x
    }

    fn from_state(system: &AlgebraicSystem, x: &[f64]) -> Self {
        let (amps, omega) = x.split_at(x.len() - 1);
        SolutionPoint::new(system, omega[0], amps.to_vec())
    }
}

/// Tuning knobs for the corrector and the arc-length stepper.
#[derive(Clone, Debug)]
pub struct ContinuationConfig {
    /// Max-norm tolerance for residual and constraint.
    pub newton_tol: f64,
    pub max_newton_iters: usize,
    pub initial_step: f64,
    pub min_step: f64,
    pub max_step: f64,
    pub max_points: usize,
    /// Tracing stops once Ω leaves `[omega_min, omega_max]`.
    pub omega_min: f64,
    pub omega_max: f64,
    /// Kernel offset used by [`switch_branch`] seeds.
    pub switch_offset: f64,
}

impl Default for ContinuationConfig {
    fn default() -> Self {
        ContinuationConfig {
            newton_tol: 1e-10,
            max_newton_iters: 25,
            initial_step: 1e-3,
            min_step: 1e-8,
            max_step: 5e-2,
            max_points: 20_000,
            omega_min: 0.0,
            omega_max: 6.0,
            switch_offset: 1e-3,
        }
    }
}

/// Events attached to curve indices.
#[derive(Clone, Copy, Debug, PartialEq, Eq, serde::Serialize, serde::Deserialize)]
pub enum MarkerKind {
    /// dΩ/ds changed sign across this point.
    Fold,
    /// Sign change of det of the amplitude Jacobian (fold segments excluded).
    BifurcationCandidate,
    /// The trace closed a loop: either it returned within step distance of
    /// its start with matching orientation, or its energy–frequency
    /// projection crossed itself transversally around a fold (a branch
    /// resolving into a loop on the E–Ω diagram).
    ClosedLoop,
    /// Step size underflowed `min_step`.
    Stall,
}

/// An ordered solution curve with its markers.
#[derive(Clone, Debug)]
pub struct ContinuationCurve {
    pub system: AlgebraicSystem,
    pub points: Vec<SolutionPoint>,
    pub markers: Vec<(usize, MarkerKind)>,
}

impl ContinuationCurve {
    pub fn has_marker(&self, kind: MarkerKind) -> bool {
        self.markers.iter().any(|(_, k)| *k == kind)
    }
}

/// Affine functional `coeffs · [a, Ω] = target` appended to the residual as
/// the corrector's last equation.
#[derive(Clone, Debug)]
pub struct Constraint {
    pub coeffs: Vec<f64>,
    pub target: f64,
}

impl Constraint {
    /// Pins Ω to a fixed value.
    pub fn fixed_omega(dim: usize, omega: f64) -> Self {
        let mut coeffs = vec![0.0; dim + 1];
        coeffs[dim] = 1.0;
        Constraint { coeffs, target: omega }
    }

    fn eval(&self, x: &[f64]) -> f64 {
        dot(&self.coeffs, x) - self.target
    }
}

#[derive(Debug, thiserror::Error)]
pub enum ContinuationError {
    #[error("Newton did not converge after {iterations} iterations (residual {residual_norm:.3e})")]
    NoConvergence { iterations: usize, residual_norm: f64 },
    #[error("bordered Jacobian is singular")]
    Singular,
    #[error("start point violates the residual tolerance ({residual_norm:.3e})")]
    StartInvalid { residual_norm: f64 },
}

fn dot(a: &[f64], b: &[f64]) -> f64 {
    a.iter().zip(b).map(|(x, y)| x * y).sum()
}

fn norm(a: &[f64]) -> f64 {
    dot(a, a).sqrt()
}

/// Bordered system matrix `[J_a, r_Ω; border]` in row-major order.
fn bordered_matrix(system: &AlgebraicSystem, x: &[f64], border: &[f64]) -> Vec<f64> {
    let d = system.dim();
    let (amps, omega) = x.split_at(d);
    let (jac, domega) = system.jacobian(omega[0], amps);
    let n = d + 1;
    let mut m = vec![0.0; n * n];
    for row in 0..d {
        m[row * n..row * n + d].copy_from_slice(&jac[row * d..(row + 1) * d]);
        m[row * n + d] = domega[row];
    }
    m[d * n..d * n + n].copy_from_slice(border);
    m
}

/// Newton corrector: drives the residual and one affine constraint below
/// `config.newton_tol` in max-norm. An already-converged guess is returned
/// unchanged (zero iterations). Returns the iteration count alongside the
/// point.
pub fn newton_correct(
    system: &AlgebraicSystem,
    guess: &SolutionPoint,
    constraint: &Constraint,
    config: &ContinuationConfig,
) -> Result<(SolutionPoint, usize), ContinuationError> {
    let d = system.dim();
    assert_eq!(constraint.coeffs.len(), d + 1, "constraint dimension mismatch");
    let mut x = guess.state();
    for iter in 0..=config.max_newton_iters {
        let (amps, omega) = x.split_at(d);
        let r = system.residual(omega[0], amps);
        let g = constraint.eval(&x);
        let err = r.iter().fold(g.abs(), |acc, v| acc.max(v.abs()));
        if err < config.newton_tol {
            return Ok((SolutionPoint::from_state(system, &x), iter));
        }
        if iter == config.max_newton_iters {
            return Err(ContinuationError::NoConvergence {
                iterations: iter,
                residual_norm: err,
            });
        }
        let m = bordered_matrix(system, &x, &constraint.coeffs);
        let mut rhs: Vec<f64> = r.iter().map(|v| -v).collect();
        rhs.push(-g);
        let delta = linalg::solve(&m, &rhs, d + 1).map_err(|_| ContinuationError::Singular)?;
        if delta.iter().any(|v| !v.is_finite()) {
            return Err(ContinuationError::Singular);
        }
        for (xi, di) in x.iter_mut().zip(&delta) {
            *xi += di;
        }
    }
    unreachable!()
}

/// Unit tangent of the curve at `x`, from the bordered solve with the given
/// border row (previous tangent, or the Ω unit row at the start).
fn tangent_at(system: &AlgebraicSystem, x: &[f64], border: &[f64]) -> Result<Vec<f64>, ContinuationError> {
    let n = system.dim() + 1;
    let m = bordered_matrix(system, x, border);
    let mut rhs = vec![0.0; n];
    rhs[n - 1] = 1.0;
    let mut t = linalg::solve(&m, &rhs, n).map_err(|_| ContinuationError::Singular)?;
    let len = norm(&t);
    if !len.is_finite() || len == 0.0 {
        return Err(ContinuationError::Singular);
    }
    for v in &mut t {
        *v /= len;
    }
    Ok(t)
}

/// Determinant of the amplitude Jacobian at a point.
fn amplitude_det(system: &AlgebraicSystem, point: &SolutionPoint) -> f64 {
    let d = system.dim();
    let (jac, _) = system.jacobian(point.omega, &point.amplitudes);
    linalg::det(&jac, d)
}

/// Flips every amplitude sign when the largest-magnitude amplitude is
/// negative, fixing the overall ℤ₂ representative.
pub fn canonicalize_sign(point: &mut SolutionPoint) {
    let largest = point
        .amplitudes
        .iter()
        .cloned()
        .max_by(|a, b| a.abs().partial_cmp(&b.abs()).unwrap())
        .unwrap_or(0.0);
    if largest < 0.0 {
        for a in &mut point.amplitudes {
            *a = -*a;
        }
    }
}

/// Traces the solution curve through `start` in the given Ω direction
/// (`±1`). Terminates on `max_points`, on leaving the Ω window, on loop
/// closure, or on step underflow (stall marker).
pub fn trace_curve(
    system: &AlgebraicSystem,
    start: &SolutionPoint,
    direction: f64,
    config: &ContinuationConfig,
) -> Result<ContinuationCurve, ContinuationError> {
    let verified = system.residual_norm(start.omega, &start.amplitudes);
    if verified >= config.newton_tol {
        return Err(ContinuationError::StartInvalid { residual_norm: verified });
    }
    let d = system.dim();
    let n = d + 1;
    let mut points = vec![SolutionPoint::new(system, start.omega, start.amplitudes.clone())];
    let mut markers = Vec::new();

    // First tangent: border with the Ω unit row, orient along `direction`.
    let x0 = points[0].state();
    let mut border = vec![0.0; n];
    border[d] = 1.0;
    let mut t = tangent_at(system, &x0, &border)?;
    let orient = if t[d] != 0.0 {
        direction * t[d].signum()
    } else {
        let largest = t.iter().cloned().fold(0.0f64, |a, b| if b.abs() > a.abs() { b } else { a });
        direction * largest.signum()
    };
    for v in &mut t {
        *v *= orient;
    }
    let t0 = t.clone();

    let mut x = x0;
    let mut h = config.initial_step;
    let mut det_prev = amplitude_det(system, &points[0]);
    let mut fold_at_last = false;
    let arm_radius = (10.0 * config.initial_step).max(2.0 * config.max_step);
    let mut armed = false;

    while points.len() < config.max_points {
        let pred: Vec<f64> = x.iter().zip(&t).map(|(xi, ti)| xi + h * ti).collect();
        let constraint = Constraint { coeffs: t.clone(), target: dot(&t, &pred) };
        let guess = SolutionPoint::from_state(system, &pred);
        match newton_correct(system, &guess, &constraint, config) {
            Err(_) => {
                h *= 0.5;
                if h < config.min_step {
                    markers.push((points.len() - 1, MarkerKind::Stall));
                    break;
                }
            }
            Ok((new_point, iters)) => {
                let x_new = new_point.state();
                let t_new = match tangent_at(system, &x_new, &t) {
                    Ok(t_new) => t_new,
                    Err(_) => t.clone(), // singular at an exact branch point; keep heading
                };
                let idx = points.len();

                let fold_here = t_new[d] * t[d] < 0.0;
                if fold_here {
                    markers.push((idx, MarkerKind::Fold));
                }
                let det_new = amplitude_det(system, &new_point);
                if det_new * det_prev < 0.0 && !fold_here && !fold_at_last {
                    markers.push((idx, MarkerKind::BifurcationCandidate));
                }

                let dist0: f64 = x_new
                    .iter()
                    .zip(points[0].state().iter())
                    .map(|(a, b)| (a - b) * (a - b))
                    .sum::<f64>()
                    .sqrt();
                points.push(new_point);
                det_prev = det_new;
                fold_at_last = fold_here;

                if !armed && dist0 > arm_radius {
                    armed = true;
                }
                if armed && dist0 < 1.5 * h && dot(&t_new, &t0) > 0.5 {
                    markers.push((idx, MarkerKind::ClosedLoop));
                    break;
                }
                let omega = x_new[d];
                if omega < config.omega_min || omega > config.omega_max {
                    break;
                }

                x = x_new;
                t = t_new;
                if iters <= 4 {
                    h = (h * 1.3).min(config.max_step);
                }
            }
        }
    }

    if !markers.iter().any(|(_, k)| *k == MarkerKind::ClosedLoop) {
        if let Some(idx) = projected_loop_index(system, &points, &markers) {
            markers.push((idx, MarkerKind::ClosedLoop));
        }
    }
    markers.sort_by_key(|(i, _)| *i);

    Ok(ContinuationCurve { system: system.clone(), points, markers })
}

/// Detects a branch resolving into a loop: the (Ω, E) projection of the
/// curve crosses itself transversally with at least one fold between the
/// two passages. Sign flips collapse under the energy, so this is where
/// loop resolution is visible; an exactly retraced arc (coincident
/// projection, as for an ineffective perturbation) never crosses.
fn projected_loop_index(
    system: &AlgebraicSystem,
    points: &[SolutionPoint],
    markers: &[(usize, MarkerKind)],
) -> Option<usize> {
    let folds: Vec<usize> = markers
        .iter()
        .filter(|(_, k)| *k == MarkerKind::Fold)
        .map(|(i, _)| *i)
        .collect();
    if folds.is_empty() || points.len() < 8 {
        return None;
    }
    let proj: Vec<(f64, f64)> = points
        .iter()
        .map(|p| (p.omega, crate::galerkin::energy(p.omega, &p.amplitudes, system.span())))
        .collect();

    // Bucket segments by Ω interval so only plausibly overlapping pairs are
    // tested.
    let (mut lo, mut hi) = (f64::INFINITY, f64::NEG_INFINITY);
    for &(w, _) in &proj {
        lo = lo.min(w);
        hi = hi.max(w);
    }
    if !(hi > lo) {
        return None;
    }
    let cells = 256usize;
    let cell_of = |w: f64| (((w - lo) / (hi - lo) * cells as f64) as usize).min(cells - 1);
    let mut buckets: Vec<Vec<usize>> = vec![Vec::new(); cells];
    for i in 0..proj.len() - 1 {
        let (a, b) = (cell_of(proj[i].0), cell_of(proj[i + 1].0));
        for c in a.min(b)..=a.max(b) {
            buckets[c].push(i);
        }
    }

    let mut best: Option<usize> = None;
    for bucket in &buckets {
        for (pos, &i) in bucket.iter().enumerate() {
            for &j in &bucket[pos + 1..] {
                let (i, j) = (i.min(j), i.max(j));
                if j <= i + 3 {
                    continue;
                }
                // A genuine excursion: some fold strictly between.
                if !folds.iter().any(|&f| f > i && f <= j) {
                    continue;
                }
                if !segments_cross(proj[i], proj[i + 1], proj[j], proj[j + 1]) {
                    continue;
                }
                // The two passages must be genuinely different solution arcs
                // modulo the overall sign flip, and the circuit between them
                // must travel. A trunk dipping through the zero pitchfork
                // retraces itself up to sign and is not a loop.
                let scale = points
                    .iter()
                    .map(|p| {
                        (p.omega * p.omega
                            + p.amplitudes.iter().map(|a| a * a).sum::<f64>())
                        .sqrt()
                    })
                    .fold(1.0f64, f64::max);
                let separation = sign_quotient_distance(&points[i], &points[j])
                    .min(sign_quotient_distance(&points[i + 1], &points[j + 1]));
                let extent = (i + 1..=j)
                    .map(|k| sign_quotient_distance(&points[i], &points[k]))
                    .fold(0.0f64, f64::max);
                if separation > 0.05 * scale && extent > 0.1 * scale {
                    best = Some(best.map_or(j + 1, |b: usize| b.min(j + 1)));
                }
            }
        }
    }
    best
}

/// Distance between two solution points modulo the overall ℤ₂ flip.
fn sign_quotient_distance(a: &SolutionPoint, b: &SolutionPoint) -> f64 {
    let mut direct = (a.omega - b.omega).powi(2);
    let mut flipped = direct;
    for (x, y) in a.amplitudes.iter().zip(&b.amplitudes) {
        direct += (x - y) * (x - y);
        flipped += (x + y) * (x + y);
    }
    direct.sqrt().min(flipped.sqrt())
}

/// Proper transversal intersection of segments `a0a1` and `b0b1`: strict
/// interior crossing, rejecting near-parallel overlaps.
fn segments_cross(a0: (f64, f64), a1: (f64, f64), b0: (f64, f64), b1: (f64, f64)) -> bool {
    // Normalize scales so the transversality threshold is meaningful.
    let sx = (a1.0 - a0.0).abs().max((b1.0 - b0.0).abs()).max(1e-300);
    let sy = (a1.1 - a0.1).abs().max((b1.1 - b0.1).abs()).max(1e-300);
    let map = |p: (f64, f64)| ((p.0 - a0.0) / sx, (p.1 - a0.1) / sy);
    let (p0, p1, q0, q1) = (map(a0), map(a1), map(b0), map(b1));
    let d1 = (p1.0 - p0.0, p1.1 - p0.1);
    let d2 = (q1.0 - q0.0, q1.1 - q0.1);
    let denom = d1.0 * d2.1 - d1.1 * d2.0;
    let len_sq = ((d1.0 * d1.0 + d1.1 * d1.1) * (d2.0 * d2.0 + d2.1 * d2.1)).sqrt();
    if denom.abs() <= 1e-6 * len_sq.max(1e-300) {
        return false;
    }
    let rhs = (q0.0 - p0.0, q0.1 - p0.1);
    let t = (rhs.0 * d2.1 - rhs.1 * d2.0) / denom;
    let u = (rhs.0 * d1.1 - rhs.1 * d1.0) / denom;
    let eps = 1e-9;
    t > eps && t < 1.0 - eps && u > eps && u < 1.0 - eps
}

/// Locates branch points along a curve: sign changes of the amplitude
/// Jacobian determinant between consecutive points, excluding folds, each
/// refined by bisection on arc length to Ω resolution `1e−8`.
pub fn detect_bifurcations(curve: &ContinuationCurve) -> Vec<SolutionPoint> {
    let system = &curve.system;
    let config = ContinuationConfig::default();
    let dets: Vec<f64> = curve.points.iter().map(|p| amplitude_det(system, p)).collect();
    let fold_indices: Vec<usize> = curve
        .markers
        .iter()
        .filter(|(_, k)| *k == MarkerKind::Fold)
        .map(|(i, _)| *i)
        .collect();

    let mut found: Vec<SolutionPoint> = Vec::new();
    for i in 0..curve.points.len().saturating_sub(1) {
        if dets[i] * dets[i + 1] >= 0.0 {
            continue;
        }
        // A fold flips the determinant too; skip segments adjacent to one.
        if fold_indices.iter().any(|&f| f == i || f == i + 1) {
            continue;
        }
        let mut a = curve.points[i].state();
        let mut b = curve.points[i + 1].state();
        let mut det_a = dets[i];
        let mut refined = None;
        for _ in 0..80 {
            if (a.last().unwrap() - b.last().unwrap()).abs() <= 1e-8 {
                break;
            }
            let mid: Vec<f64> = a.iter().zip(&b).map(|(x, y)| 0.5 * (x + y)).collect();
            let mut secant: Vec<f64> = b.iter().zip(&a).map(|(x, y)| x - y).collect();
            let len = norm(&secant);
            if len == 0.0 {
                break;
            }
            for v in &mut secant {
                *v /= len;
            }
            let constraint = Constraint { coeffs: secant.clone(), target: dot(&secant, &mid) };
            let guess = SolutionPoint::from_state(system, &mid);
            let corrected = match newton_correct(system, &guess, &constraint, &config) {
                Ok((p, _)) => p,
                Err(_) => break,
            };
            let det_mid = amplitude_det(system, &corrected);
            let xm = corrected.state();
            if det_mid * det_a < 0.0 {
                b = xm;
            } else {
                a = xm;
                det_a = det_mid;
            }
            refined = Some(corrected);
        }
        // When the first midpoint correction fails (the bracket is already
        // at resolution, or the Jacobian is singular right at the point),
        // fall back to the converged bracket endpoint rather than an
        // uncorrected midpoint.
        let point = refined.unwrap_or_else(|| SolutionPoint::from_state(system, &a));
        if found
            .iter()
            .all(|p: &SolutionPoint| (p.omega - point.omega).abs() > 1e-8)
        {
            found.push(point);
        }
    }
    found
}

/// Near-kernel direction of the amplitude Jacobian via inverse iteration.
fn kernel_direction(system: &AlgebraicSystem, point: &SolutionPoint) -> Option<Vec<f64>> {
    let d = system.dim();
    let (jac, _) = system.jacobian(point.omega, &point.amplitudes);
    let scale = jac.iter().fold(0.0f64, |a, v| a.max(v.abs())).max(1.0);
    let factor = Lu::factor(jac.clone(), d).or_else(|_| {
        let mut ridged = jac.clone();
        for i in 0..d {
            ridged[i * d + i] += 1e-12 * scale;
        }
        Lu::factor(ridged, d)
    });
    let lu = factor.ok()?;
    let mut v = vec![1.0 / (d as f64).sqrt(); d];
    for _ in 0..6 {
        let mut y = lu.solve(&v);
        let len = norm(&y);
        if !len.is_finite() || len == 0.0 {
            return None;
        }
        for yi in &mut y {
            *yi /= len;
        }
        v = y;
    }
    Some(v)
}

/// Seeds new solution points off a bifurcation candidate: walks `±ε` along
/// the amplitude-Jacobian kernel with a transversal pin and keeps distinct
/// converged points. Fold candidates (kernel parallel to the curve tangent)
/// yield an empty list.
pub fn switch_branch(
    system: &AlgebraicSystem,
    point: &SolutionPoint,
    config: &ContinuationConfig,
) -> Vec<SolutionPoint> {
    let d = system.dim();
    let Some(kernel) = kernel_direction(system, point) else {
        return Vec::new();
    };

    // Fold test: at a fold the curve tangent is amplitude-parallel to the
    // kernel with a vanishing Ω component.
    let x = point.state();
    let mut border = vec![0.0; d + 1];
    border[d] = 1.0;
    let tangent = tangent_at(system, &x, &border)
        .or_else(|_| {
            let mut b2 = kernel.clone();
            b2.push(0.0);
            tangent_at(system, &x, &b2)
        })
        .ok();
    if let Some(t) = &tangent {
        let t_amp = &t[..d];
        let t_amp_norm = norm(t_amp);
        if t_amp_norm > 0.0 {
            let cosine = dot(t_amp, &kernel).abs() / t_amp_norm;
            if cosine > 0.9 && t[d].abs() < 0.1 {
                return Vec::new();
            }
        }
    }

    let amp_scale = norm(&point.amplitudes).max(1.0);
    let eps = config.switch_offset * amp_scale;
    let base = dot(&kernel, &point.amplitudes);
    let mut results: Vec<SolutionPoint> = Vec::new();
    for sign in [1.0, -1.0] {
        let mut seed = point.amplitudes.clone();
        for (s, k) in seed.iter_mut().zip(&kernel) {
            *s += sign * eps * k;
        }
        let mut coeffs = kernel.clone();
        coeffs.push(0.0);
        let constraint = Constraint { coeffs, target: base + sign * eps };
        let guess = SolutionPoint::new(system, point.omega, seed);
        if let Ok((found, _)) = newton_correct(system, &guess, &constraint, config) {
            let dist_orig: f64 = found
                .amplitudes
                .iter()
                .zip(&point.amplitudes)
                .map(|(a, b)| (a - b) * (a - b))
                .sum::<f64>()
                .sqrt();
            if dist_orig <= 1e-6 {
                continue;
            }
            let distinct = results.iter().all(|p| {
                let dd: f64 = p
                    .amplitudes
                    .iter()
                    .zip(&found.amplitudes)
                    .map(|(a, b)| (a - b) * (a - b))
                    .sum::<f64>()
                    .sqrt();
                dd + (p.omega - found.omega).abs() > 1e-6
            });
            if distinct {
                results.push(found);
            }
        }
    }
    results
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::modes::ModeSet;
    use crate::galerkin::Nonlinearity;

    fn one_mode() -> AlgebraicSystem {
        AlgebraicSystem::new(ModeSet::from_pairs(&[(0, 0)]), Nonlinearity::Defocusing)
    }

    #[test]
    fn corrector_hits_trunk_point() {
        let sys = one_mode();
        let config = ContinuationConfig::default();
        let guess = SolutionPoint::new(&sys, 2.0, vec![2.3]);
        let constraint = Constraint::fixed_omega(1, 2.0);
        let (point, _) = newton_correct(&sys, &guess, &constraint, &config).unwrap();
        let expected = 4.0 / 3.0 * 3.0f64.sqrt();
        assert!((point.amplitudes[0] - expected).abs() < 1e-10);
        assert!(point.residual_norm < 1e-10);
    }

    #[test]
    fn corrector_accepts_exact_solution_unchanged() {
        let sys = one_mode();
        let config = ContinuationConfig::default();
        let a = 4.0 / 3.0 * 3.0f64.sqrt();
        let exact = SolutionPoint::new(&sys, 2.0, vec![a]);
        let constraint = Constraint::fixed_omega(1, 2.0);
        let (point, iters) = newton_correct(&sys, &exact, &constraint, &config).unwrap();
        assert_eq!(iters, 0);
        assert_eq!(point.amplitudes, exact.amplitudes);
    }

    #[test]
    fn corrector_reports_divergence() {
        let sys = one_mode();
        let config = ContinuationConfig { max_newton_iters: 8, ..Default::default() };
        // A guess eight orders of magnitude off cannot converge within the
        // iteration budget; the caller is expected to halve its step.
        let guess = SolutionPoint::new(&sys, 2.0, vec![1e8]);
        let constraint = Constraint::fixed_omega(1, 2.0);
        match newton_correct(&sys, &guess, &constraint, &config) {
            Err(ContinuationError::NoConvergence { .. }) => {}
            other => panic!("expected NoConvergence, got {other:?}"),
        }
    }

    #[test]
    fn trunk_trace_matches_closed_form() {
        let sys = one_mode();
        let config = ContinuationConfig { omega_max: 5.0, ..Default::default() };
        let omega0 = 1.01;
        let a0 = 4.0 / 3.0 * (omega0 * omega0 - 1.0f64).sqrt();
        let start = SolutionPoint::new(&sys, omega0, vec![a0]);
        let curve = trace_curve(&sys, &start, 1.0, &config).unwrap();
        assert!(curve.points.len() > 50);
        for p in &curve.points {
            if p.omega > 5.0 {
                break;
            }
            let expected = 4.0 / 3.0 * (p.omega * p.omega - 1.0f64).sqrt();
            assert!(
                (p.amplitudes[0] - expected).abs() < 1e-8,
                "at omega={} got {} expected {}",
                p.omega,
                p.amplitudes[0],
                expected
            );
            assert!(p.residual_norm < 1e-10);
        }
        assert!(curve.points.last().unwrap().omega >= 5.0);
        assert!(!curve.has_marker(MarkerKind::ClosedLoop));
    }

    #[test]
    fn no_interior_bifurcation_on_one_mode_trunk() {
        let sys = one_mode();
        let config = ContinuationConfig { omega_max: 3.0, ..Default::default() };
        let omega0 = 1.05;
        let a0 = 4.0 / 3.0 * (omega0 * omega0 - 1.0f64).sqrt();
        let start = SolutionPoint::new(&sys, omega0, vec![a0]);
        let curve = trace_curve(&sys, &start, 1.0, &config).unwrap();
        assert!(detect_bifurcations(&curve).is_empty());
    }

    #[test]
    fn invalid_start_rejected() {
        let sys = one_mode();
        let config = ContinuationConfig::default();
        let bad = SolutionPoint::new(&sys, 2.0, vec![1.0]);
        match trace_curve(&sys, &bad, 1.0, &config) {
            Err(ContinuationError::StartInvalid { .. }) => {}
            other => panic!("expected StartInvalid, got {other:?}"),
        }
    }
}
