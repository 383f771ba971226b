//! Small-divisor laboratory for Kronecker foliations of the 2-torus.
//!
//! The leaves of the foliation with slope `alpha` are the orbits of
//! `X = d/dx + alpha d/dy`. A foliated 1-form `f dx` is exact when `f = Xg`,
//! which in Fourier space reads `f_{m,n} = 2 pi i (m + alpha n) g_{m,n}`.
//! How fast the divisors `m + alpha n` approach zero decides whether the
//! foliated cohomology is Hausdorff; this crate computes those divisors
//! rigorously and builds on them:
//!
//! - [`diophantine`]: slopes, continued fractions, witnesses, gap scans
//! - [`fourier`]: finitely supported series and the action of `X`
//! - [`cohomology`]: the cohomological equation and truncated cohomology
//! - [`counterexample`]: a smooth family of exact forms with no continuous
//!   family of primitives, for Liouville slopes
//! - [`kunneth`]: dimension checks for products of foliations

pub mod arith;
pub mod cohomology;
pub mod counterexample;
pub mod diophantine;
pub mod error;
pub mod fourier;
pub mod kunneth;
pub mod report;

pub use error::{Error, Result};
