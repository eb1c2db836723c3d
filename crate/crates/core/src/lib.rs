//! Refined tropical counts of rational curves in lattices of arbitrary rank,
//! quantum indices and logarithmic areas of real rational curves, and a
//! numerical quadrature cross-check.

pub mod cli;
pub mod config;
pub mod geometry;
pub mod lattice;
pub mod quadrature;
pub mod laurent;
pub mod tropical;
