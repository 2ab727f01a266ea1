//! Odd-harmonic Fourier modes and the exact trigonometric overlap integrals
//! behind the cubic-term projection.
//!
//! A mode `(m, n)` stands for `cos((2m+1)τ) sin((2n+1)x)`; the temporal
//! factor `2m+1` and spatial factor `2n+1` are always odd. The quartic
//! overlap integrals of four cosines (or four sines) over `[0, π]` evaluate
//! to integer multiples of `π/8` through Kronecker-delta bookkeeping, and
//! this module keeps those integers exact.

use serde::{Deserialize, Serialize};
use std::fmt;

/// Temporal/spatial index pair `(m, n)` of the mode
/// `cos((2m+1)τ) sin((2n+1)x)`.
#[derive(Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub struct ModeIndex {
    pub m: u32,
    pub n: u32,
}

impl ModeIndex {
    pub const fn new(m: u32, n: u32) -> Self {
        ModeIndex { m, n }
    }

    /// The fundamental mode `cos τ sin x`.
    pub const FUNDAMENTAL: ModeIndex = ModeIndex { m: 0, n: 0 };

    /// Temporal frequency factor `2m+1`.
    pub fn temporal_factor(&self) -> i64 {
        2 * self.m as i64 + 1
    }

    /// Spatial wavenumber factor `2n+1`.
    pub fn spatial_factor(&self) -> i64 {
        2 * self.n as i64 + 1
    }

    /// Transposed mode `(n, m)`.
    pub fn transposed(&self) -> ModeIndex {
        ModeIndex { m: self.n, n: self.m }
    }
}

impl fmt::Debug for ModeIndex {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({},{})", self.m, self.n)
    }
}

impl fmt::Display for ModeIndex {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({},{})", self.m, self.n)
    }
}

/// Ordered collection of distinct modes, canonically sorted lexicographically
/// by `(m, n)`.
#[derive(Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct ModeSet {
    modes: Vec<ModeIndex>,
}

/// Error raised when constructing a [`ModeSet`] with repeated entries.
#[derive(Debug, thiserror::Error, PartialEq, Eq)]
#[error("duplicate mode {0} in mode set")]
pub struct DuplicateMode(pub ModeIndex);

impl ModeSet {
    /// Sorts the input into canonical order; duplicates are an error.
    pub fn new(mut modes: Vec<ModeIndex>) -> Result<Self, DuplicateMode> {
        modes.sort();
        for pair in modes.windows(2) {
            if pair[0] == pair[1] {
                return Err(DuplicateMode(pair[0]));
            }
        }
        Ok(ModeSet { modes })
    }

    /// Convenience constructor from `(m, n)` pairs; panics on duplicates.
    pub fn from_pairs(pairs: &[(u32, u32)]) -> Self {
        ModeSet::new(pairs.iter().map(|&(m, n)| ModeIndex::new(m, n)).collect())
            .expect("duplicate mode")
    }

    pub fn modes(&self) -> &[ModeIndex] {
        &self.modes
    }

    pub fn len(&self) -> usize {
        self.modes.len()
    }

    pub fn is_empty(&self) -> bool {
        self.modes.is_empty()
    }

    pub fn contains(&self, mode: ModeIndex) -> bool {
        self.modes.binary_search(&mode).is_ok()
    }

    /// Position of `mode` in canonical order.
    pub fn position(&self, mode: ModeIndex) -> Option<usize> {
        self.modes.binary_search(&mode).ok()
    }

    pub fn iter(&self) -> std::slice::Iter<'_, ModeIndex> {
        self.modes.iter()
    }

    /// The set with every mode transposed `(m,n) → (n,m)`, re-sorted.
    pub fn transposed(&self) -> ModeSet {
        ModeSet::new(self.modes.iter().map(|m| m.transposed()).collect())
            .expect("transposition preserves distinctness")
    }

    /// Subset with the modes at `keep` positions removed.
    pub fn without(&self, drop: &[usize]) -> ModeSet {
        let modes = self
            .modes
            .iter()
            .enumerate()
            .filter(|(i, _)| !drop.contains(i))
            .map(|(_, &m)| m)
            .collect();
        ModeSet::new(modes).expect("subset of distinct modes")
    }
}

impl fmt::Debug for ModeSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_set().entries(self.modes.iter()).finish()
    }
}

impl fmt::Display for ModeSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{{")?;
        for (i, m) in self.modes.iter().enumerate() {
            if i > 0 {
                write!(f, ",")?;
            }
            write!(f, "{m}")?;
        }
        write!(f, "}}")
    }
}

/// Value of a quartic overlap integral, in units of `π/8`. The delta
/// formulas only ever produce small integers.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct OverlapValue(pub i64);

impl OverlapValue {
    pub fn as_i64(self) -> i64 {
        self.0
    }

    /// The actual integral value `self · π/8`.
    pub fn to_f64(self) -> f64 {
        self.0 as f64 * std::f64::consts::PI / 8.0
    }
}

fn check_odd_positive(args: [i64; 4]) {
    for v in args {
        assert!(v > 0 && v % 2 == 1, "overlap index {v} must be an odd positive integer");
    }
}

/// `∫₀^π cos(ix) cos(jx) cos(kx) cos(lx) dx` in units of `π/8`.
///
/// All seven delta patterns enter with a plus sign; the result is symmetric
/// under any permutation of the arguments. Non-odd or non-positive input is
/// a caller bug and panics.
pub fn cos_overlap(i: i64, j: i64, k: i64, l: i64) -> OverlapValue {
    check_odd_positive([i, j, k, l]);
    let d = |s: i64| (s == l) as i64;
    OverlapValue(
        d(-i + j + k) + d(i - j + k) + d(i + j - k) + d(i + j + k)
            + d(-i - j + k)
            + d(-i + j - k)
            + d(i - j - k),
    )
}

/// `∫₀^π sin(ix) sin(jx) sin(kx) sin(lx) dx` in units of `π/8`.
///
/// Same deltas as [`cos_overlap`] with sign pattern `(+,+,+,−,−,−,−)`;
/// symmetric under permutations. Panics on non-odd or non-positive input.
pub fn sin_overlap(i: i64, j: i64, k: i64, l: i64) -> OverlapValue {
    check_odd_positive([i, j, k, l]);
    let d = |s: i64| (s == l) as i64;
    OverlapValue(
        d(-i + j + k) + d(i - j + k) + d(i + j - k)
            - d(i + j + k)
            - d(-i - j + k)
            - d(-i + j - k)
            - d(i - j - k),
    )
}

/// The N×N diagonal truncation `{(m,n) : 0 ≤ m,n < N}` in canonical order.
pub fn diagonal_truncation(n: u32) -> ModeSet {
    assert!(n >= 1, "truncation must be at least 1");
    let mut modes = Vec::with_capacity((n * n) as usize);
    for m in 0..n {
        for k in 0..n {
            modes.push(ModeIndex::new(m, k));
        }
    }
    ModeSet::new(modes).expect("grid modes are distinct")
}
