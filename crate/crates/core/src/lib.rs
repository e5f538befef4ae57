//! High-precision eigensolvers for two exactly reducible two-body models:
//! a pair of coupled harmonic oscillators and the harmonium atom (two
//! electrons in a harmonic trap).

pub mod cli;
pub mod harmonium_rpm;
pub mod harmonium_rr;
pub mod numerics;
pub mod oscillator_exact;
pub mod oscillator_variational;
pub mod reduction;
