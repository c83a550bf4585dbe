//! Computational toolkit for growth analysis of functions on the unit circle
//! and the pluripolarity-style certificates built on top of it.
//!
//! The pipeline:
//!
//! 1. [`circle`] — coefficient rules (explicit lists, decaying parametric
//!    families, synthetic norm tables) and certified derivative norms M_j.
//! 2. [`scales`] — the growth scale tau(r) = inf_j M_j / r^j and the derived
//!    per-degree scales t_n and theta_n with their diagnostic tables.
//! 3. [`quasi`] — quasianalyticity tests: divergence of the log-integral,
//!    Gevrey-class membership, and Bernstein-style approximation roots.
//! 4. [`interp`] — trigonometric interpolation at roots of unity plus one
//!    off-grid node, with certified uniform error bounds on annuli.
//! 5. [`annulus`] — Green functions of circular annuli via a covering-map
//!    series, cross-checked by a finite-difference solver.
//! 6. [`certify`] — assembled certificates combining the routes above, for
//!    scalar and vector-valued data.
//!
//! All public computations either return certified results (every truncation
//! backed by a proven tail bound) or report failure; nothing is silently
//! approximated. Reruns are byte-identical: summation orders are fixed,
//! compensated summation is used throughout, and all sampling is seeded.

pub mod annulus;
pub mod certify;
pub mod circle;
pub mod interp;
pub mod num;
pub mod quasi;
pub mod scales;

pub use circle::{CoefficientRule, FunctionSpec, NormSequence};
