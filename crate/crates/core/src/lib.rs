//! Bifurcation structure of time-periodic solutions to the cubic wave
//! equation on an interval with Dirichlet boundary conditions.
//!
//! The crate decomposes the problem into:
//!
//! * [`modes`] — odd-harmonic Fourier modes and the exact trigonometric
//!   overlap integrals that drive the cubic-term projection,
//! * [`galerkin`] — assembly of residual, Jacobian and energy of any finite
//!   Galerkin system, plus the coefficient-level symmetry maps,
//! * [`reducible`] — closed-form branch solutions of reducible systems and
//!   their exact positivity domains and case classification,
//! * [`tree`] — construction of the N-reducible tree (trunks, branches,
//!   shoots) and its structural statistics,
//! * [`continuation`] — pseudo-arc-length continuation with bifurcation
//!   detection and branch switching,
//! * [`realroots`] — exact univariate polynomial machinery (discriminants,
//!   Descartes bounds, Sturm sequences, root isolation),
//! * [`scenarios`] — reproducible end-to-end studies tying the pieces
//!   together, consumed by the CLI.
//!
//! All floating-point evaluation is double precision with deterministic
//! summation order; everything that can be exact (overlap integrals,
//! branch coefficients, domain endpoints, root counts) is kept in
//! arbitrary-precision rational arithmetic.

pub mod continuation;
pub mod exact;
pub mod galerkin;
pub mod linalg;
pub mod modes;
pub mod realroots;
pub mod reducible;
pub mod scan;
pub mod scenarios;
pub mod tree;

pub use continuation::{ContinuationConfig, ContinuationCurve, MarkerKind, SolutionPoint};
pub use exact::{OmegaInterval, Rat, SqrtRat};
pub use galerkin::{AlgebraicSystem, Nonlinearity};
pub use modes::{ModeIndex, ModeSet, OverlapValue};
pub use realroots::IntPolynomial;
pub use reducible::BranchSolution;
pub use tree::{ReducibleTree, TreeElement};
