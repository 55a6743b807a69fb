//! # fluctlab
//!
//! A numerical laboratory for the fine behavior of convergent averaging
//! processes: Birkhoff averages along rotation orbits, subsequence and moving
//! averages, binomially weighted averages, averages along uniformly
//! distributed sequences, dyadic martingales, and approximate-identity
//! convolutions.
//!
//! The averages in question converge, but the *way* they converge is
//! delicate: they are never eventually monotone, they may or may not change
//! sign around the limit infinitely often, and which of these happens is
//! controlled by concrete structure (flat-top transfer functions, recurrence
//! properties of index sequences, eigenvalues of the dynamics). This crate
//! builds all of those objects with exact arithmetic — dyadic points on the
//! circle, rational piecewise functions, integer-weighted martingales — so
//! that every sign, gap, and monotone run it reports is a theorem about the
//! quantized system rather than a floating-point accident.
//!
//! ## Layout
//!
//! - [`torus`] — exact circle arithmetic, rotations, orbit streams, greedy
//!   descent indices.
//! - [`observables`] — rational piecewise-affine functions on the circle,
//!   coboundaries, flat-top ("barrier") detection, Rademacher functions.
//! - [`averaging`] — Cesàro, subsequence, moving, binomial, and
//!   uniform-distribution averages, with exact and compensated-float engines.
//! - [`fluctuation`] — sign-change / monotone-run / gap-event statistics and
//!   transfer-function recovery from running minima.
//! - [`martingale`] — exact dyadic conditional expectations and random-walk
//!   sign statistics.
//! - [`convolution`] — exact box-kernel convolution of compactly supported
//!   piecewise functions and divergence-ratio experiments.
//! - [`recurrence`] — integer sequence generators, exact arc unions on the
//!   circle, complete-recurrence trajectories.
//! - [`witnesses`] — a catalog of prebuilt experiments, each reporting
//!   pass/fail against the claim it checks.
//! - [`cli`] — the `fluctlab` command-line front end.
//!
//! ## Examples
//!
//! Each major capability has a runnable example:
//!
//! ```text
//! cargo run --release --example orbit_basics
//! cargo run --release --example cesaro_fluctuation
//! cargo run --release --example barrier_vs_sawtooth
//! cargo run --release --example monotone_subsequence
//! cargo run --release --example moving_identity
//! cargo run --release --example martingale_walk
//! cargo run --release --example convolution_blowup
//! cargo run --release --example complete_recurrence
//! cargo run --release --example eigenvalue_flip
//! cargo run --release --example ud_dichotomy
//! cargo run --release --example transfer_recovery
//! ```

pub mod error;
pub mod rat;
pub mod observables;
pub mod sequences;
pub mod torus;

pub use error::{Error, Result};
