//! Geometric models of binary classification in high dimension.
//!
//! The library builds three data models (two overlapping balls, two separated
//! half-balls, and a general nonlinear-surface model), evaluates the
//! closed-form concentration bounds on their accuracy, adversarial
//! susceptibility, random destabilisation, and attack universality, and
//! verifies those bounds against exact geometry and deterministic parallel
//! Monte Carlo estimation.

pub mod attacks;
pub mod bounds;
pub mod geometry;
pub mod harness;
pub mod models;
pub mod montecarlo;
