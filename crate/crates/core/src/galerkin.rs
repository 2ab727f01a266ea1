//! Assembly of finite Galerkin systems: residual, Jacobian, energy, the
//! reducibility pattern check, and the defocusing↔focusing coefficient map.
//!
//! Projecting the cubic wave equation onto `cos((2m+1)τ) sin((2n+1)x)` and
//! multiplying every equation by `64/π²` yields, for each mode `k` of the
//! span,
//!
//! ```text
//! 16((2n_k+1)² − (2m_k+1)²Ω²) a_k  +  s · Σ c_ijk a_i a_j a_k  =  0
//! ```
//!
//! with integer cubic coefficients `c_ijk` built from the overlap integrals
//! and `s = +1` (defocusing) or `−1` (focusing). The integer coefficient
//! table is assembled once per span; all floating evaluation then walks the
//! table in canonical monomial order so results are bit-reproducible.

use crate::modes::{cos_overlap, sin_overlap, ModeIndex, ModeSet};
use std::f64::consts::PI;
use std::fmt;

/// Sign of the cubic term in `Ω²∂²τu − ∂²xu ± u³ = 0`.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Nonlinearity {
    Defocusing,
    Focusing,
}

impl Nonlinearity {
    fn sign(self) -> f64 {
        match self {
            Nonlinearity::Defocusing => 1.0,
            Nonlinearity::Focusing => -1.0,
        }
    }
}

/// One integer cubic monomial `coeff · a_i a_j a_k` (indices sorted) in a
/// given equation of the assembled system.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct CubicTerm {
    pub equation: usize,
    pub monomial: [usize; 3],
    pub coeff: i64,
}

/// A finite Galerkin system over a [`ModeSet`] with its integer cubic
/// coefficient table. Immutable after construction; evaluations are pure.
#[derive(Clone, Debug)]
pub struct AlgebraicSystem {
    span: ModeSet,
    nonlinearity: Nonlinearity,
    cubic: Vec<CubicTerm>,
    /// Range of `cubic` belonging to each equation, for fast evaluation.
    eq_ranges: Vec<std::ops::Range<usize>>,
}

/// Witness for a failed reducibility check: the first monomial (canonical
/// order) whose integer coefficient differs from the 9/12 diagonal pattern.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PatternWitness {
    pub equation: ModeIndex,
    pub monomial: [ModeIndex; 3],
    pub coeff: i64,
    pub expected: i64,
}

impl fmt::Display for PatternWitness {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "equation {}: monomial a{}a{}a{} has coefficient {} (expected {})",
            self.equation, self.monomial[0], self.monomial[1], self.monomial[2], self.coeff, self.expected
        )
    }
}

impl AlgebraicSystem {
    /// Assembles the cubic coefficient table for `span`.
    pub fn new(span: ModeSet, nonlinearity: Nonlinearity) -> Self {
        let n = span.len();
        let modes = span.modes();
        let mut cubic = Vec::new();
        let mut eq_ranges = Vec::with_capacity(n);
        for eq in 0..n {
            let start = cubic.len();
            let (cl, dl) = (modes[eq].temporal_factor(), modes[eq].spatial_factor());
            for i in 0..n {
                for j in i..n {
                    for k in j..n {
                        let orderings = distinct_orderings(i, j, k);
                        let c = cos_overlap(
                            modes[i].temporal_factor(),
                            modes[j].temporal_factor(),
                            modes[k].temporal_factor(),
                            cl,
                        )
                        .as_i64();
                        if c == 0 {
                            continue;
                        }
                        let s = sin_overlap(
                            modes[i].spatial_factor(),
                            modes[j].spatial_factor(),
                            modes[k].spatial_factor(),
                            dl,
                        )
                        .as_i64();
                        let coeff = orderings * c * s;
                        if coeff != 0 {
                            cubic.push(CubicTerm { equation: eq, monomial: [i, j, k], coeff });
                        }
                    }
                }
            }
            eq_ranges.push(start..cubic.len());
        }
        AlgebraicSystem { span, nonlinearity, cubic, eq_ranges }
    }

    /// Defocusing system over the N×N diagonal truncation.
    pub fn truncated(n: u32) -> Self {
        AlgebraicSystem::new(crate::modes::diagonal_truncation(n), Nonlinearity::Defocusing)
    }

    pub fn span(&self) -> &ModeSet {
        &self.span
    }

    pub fn dim(&self) -> usize {
        self.span.len()
    }

    pub fn nonlinearity(&self) -> Nonlinearity {
        self.nonlinearity
    }

    /// The integer cubic table in canonical `(equation, monomial)` order.
    pub fn cubic_terms(&self) -> &[CubicTerm] {
        &self.cubic
    }

    /// Integer cubic coefficient of `a_i a_j a_k` (indices in any order) in
    /// the given equation; zero when absent.
    pub fn cubic_coeff(&self, equation: usize, monomial: [usize; 3]) -> i64 {
        let mut key = monomial;
        key.sort_unstable();
        self.cubic[self.eq_ranges[equation].clone()]
            .iter()
            .find(|t| t.monomial == key)
            .map(|t| t.coeff)
            .unwrap_or(0)
    }

    /// Residual of every equation at `(omega, amplitudes)`, in deterministic
    /// summation order. Panics on dimension mismatch.
    pub fn residual(&self, omega: f64, amplitudes: &[f64]) -> Vec<f64> {
        let n = self.dim();
        assert_eq!(amplitudes.len(), n, "amplitude vector does not match span");
        let w = omega * omega;
        let sign = self.nonlinearity.sign();
        let modes = self.span.modes();
        let mut out = Vec::with_capacity(n);
        for eq in 0..n {
            let c = modes[eq].temporal_factor() as f64;
            let d = modes[eq].spatial_factor() as f64;
            let mut r = 16.0 * (d * d - c * c * w) * amplitudes[eq];
            for term in &self.cubic[self.eq_ranges[eq].clone()] {
                let [i, j, k] = term.monomial;
                r += sign * term.coeff as f64 * amplitudes[i] * amplitudes[j] * amplitudes[k];
            }
            out.push(r);
        }
        out
    }

    /// Max-norm of the residual.
    pub fn residual_norm(&self, omega: f64, amplitudes: &[f64]) -> f64 {
        self.residual(omega, amplitudes)
            .iter()
            .fold(0.0, |acc, r| acc.max(r.abs()))
    }

    /// Analytic Jacobian: the matrix of amplitude derivatives (row-major,
    /// `dim × dim`) and the vector of Ω derivatives.
    pub fn jacobian(&self, omega: f64, amplitudes: &[f64]) -> (Vec<f64>, Vec<f64>) {
        let n = self.dim();
        assert_eq!(amplitudes.len(), n, "amplitude vector does not match span");
        let w = omega * omega;
        let sign = self.nonlinearity.sign();
        let modes = self.span.modes();
        let mut jac = vec![0.0; n * n];
        let mut domega = vec![0.0; n];
        for eq in 0..n {
            let c = modes[eq].temporal_factor() as f64;
            let d = modes[eq].spatial_factor() as f64;
            jac[eq * n + eq] += 16.0 * (d * d - c * c * w);
            domega[eq] = -32.0 * c * c * omega * amplitudes[eq];
            for term in &self.cubic[self.eq_ranges[eq].clone()] {
                let [i, j, k] = term.monomial;
                let coeff = sign * term.coeff as f64;
                // d(a_i a_j a_k)/da_t summed over repeated indices.
                jac[eq * n + i] += coeff * amplitudes[j] * amplitudes[k];
                jac[eq * n + j] += coeff * amplitudes[i] * amplitudes[k];
                jac[eq * n + k] += coeff * amplitudes[i] * amplitudes[j];
            }
        }
        (jac, domega)
    }

    /// True iff the cubic part of every equation `k` is exactly
    /// `a_k(9a_k² + 12 Σ_{j≠k} a_j²)` as an integer polynomial identity;
    /// otherwise the first offending monomial.
    pub fn reducible_pattern_check(&self) -> Result<(), PatternWitness> {
        let n = self.dim();
        let modes = self.span.modes();
        for eq in 0..n {
            // Walk all monomials of this equation: present ones from the
            // table, plus expected ones that might be missing entirely.
            for i in 0..n {
                for j in i..n {
                    for k in j..n {
                        let mono = [i, j, k];
                        let expected = if i == eq && j == eq && k == eq {
                            9
                        } else if (i == j && k == eq)
                            || (j == k && i == eq)
                            || (i == k && j == eq)
                        {
                            12
                        } else {
                            0
                        };
                        let actual = self.cubic_coeff(eq, mono);
                        if actual != expected {
                            return Err(PatternWitness {
                                equation: modes[eq],
                                monomial: [modes[i], modes[j], modes[k]],
                                coeff: actual,
                                expected,
                            });
                        }
                    }
                }
            }
        }
        Ok(())
    }
}

fn distinct_orderings(i: usize, j: usize, k: usize) -> i64 {
    if i == j && j == k {
        1
    } else if i == j || j == k || i == k {
        3
    } else {
        6
    }
}

/// Conserved energy of a coefficient vector over `span`:
/// `(π/4) Ω² Σ_n (Σ_m a_{mn} (−1)^m (2m+1))²`, grouped by spatial index.
pub fn energy(omega: f64, amplitudes: &[f64], span: &ModeSet) -> f64 {
    assert_eq!(amplitudes.len(), span.len(), "amplitude vector does not match span");
    let mut spatial: Vec<(u32, f64)> = Vec::new();
    for (mode, &a) in span.iter().zip(amplitudes) {
        let signed = a * (if mode.m % 2 == 0 { 1.0 } else { -1.0 }) * mode.temporal_factor() as f64;
        match spatial.iter_mut().find(|(n, _)| *n == mode.n) {
            Some((_, sum)) => *sum += signed,
            None => spatial.push((mode.n, signed)),
        }
    }
    let total: f64 = spatial.iter().map(|(_, s)| s * s).sum();
    0.25 * PI * omega * omega * total
}

/// Image of a coefficient vector under the map relating defocusing and
/// focusing solutions: `Ω → 1/Ω`, mode `(m,n) → (n,m)`, coefficient
/// `a_{mn} → −(−1)^{m+n} a_{mn}/Ω` placed at the transposed position.
///
/// Returns the transposed span together with the new frequency and the new
/// amplitude vector in the transposed span's canonical order. Panics when
/// `omega` is zero.
pub fn focusing_map(omega: f64, amplitudes: &[f64], span: &ModeSet) -> (f64, Vec<f64>, ModeSet) {
    assert_eq!(amplitudes.len(), span.len(), "amplitude vector does not match span");
    assert!(omega != 0.0, "focusing map undefined at omega = 0");
    let image_span = span.transposed();
    let mut image = vec![0.0; amplitudes.len()];
    for (mode, &a) in span.iter().zip(amplitudes) {
        let sign = if (mode.m + mode.n) % 2 == 0 { -1.0 } else { 1.0 };
        let target = image_span
            .position(mode.transposed())
            .expect("transposed mode present in transposed span");
        image[target] = sign * a / omega;
    }
    (1.0 / omega, image, image_span)
}
