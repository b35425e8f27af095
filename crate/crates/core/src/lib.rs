//! Analytic and Monte Carlo toolkit for super-resolving phase interferometry
//! with coherent states and binned homodyne detection.
//!
//! A coherent state of mean photon number `N` runs through a two-arm
//! interferometer with phase `phi`; the phase quadrature of one output port
//! is measured by homodyne detection and the continuous outcomes are
//! binarized: outcomes falling inside one or more acceptance windows count
//! as a hit, everything else as a miss. The mean of the resulting two-valued
//! observable oscillates with `phi` in fringes that are narrower than the
//! classical intensity fringe, while the phase sensitivity stays at the shot
//! noise level.
//!
//! The crate is organised around that pipeline:
//!
//! * [`quadmodel`] — Gaussian quadrature statistics of the output port and
//!   the classical intensity baseline,
//! * [`binning`] — binary and multi-window acceptance schemes with their
//!   analytic response, variance, sensitivity, resolution, visibility and
//!   the window-spacing optimizer,
//! * [`mcsim`] — a seeded, reproducible Monte Carlo engine that plays the
//!   role of the experiment,
//! * [`numerics`] — shared numeric kernels (error function, adaptive
//!   quadrature, root finding, 1-D minimization, peak detection) that also
//!   serve as independent oracles in the test suite.
//!
//! The library is `no_std`-compatible (it allocates but performs no IO);
//! file formats and the command line front end live in the companion
//! `superfringe-cli` crate.

#![cfg_attr(not(test), no_std)]

extern crate alloc;

pub mod binning;
mod math;
pub mod mcsim;
pub mod numerics;
pub mod quadmodel;

pub use binning::{BinaryScheme, Binning, MultiScheme, ScanSummary, Scheme};
pub use mcsim::{EmpiricalCurve, McConfig};
pub use quadmodel::{CoherentSource, PhaseGrid};
