//! Rational tropical curves with `ω`-moment constraints and their refined count.

mod correspondence;
mod harness;
mod solve;
mod tree;

pub use correspondence::{correspondence, Correspondence};
pub use harness::{
    draw_constraints, invariance_harness, invariance_harness_with, InvarianceReport, SamplingConfig, TrialOutcome,
    MAX_RESAMPLES,
};
pub use solve::{
    check_genericity, count, evaluate_constraints, moment_defect, multiplicity, solve_type, tropical_menelaus_check,
    CountResult, TropicalConstraints, TropicalSolution, VertexFrame,
};
pub use tree::{
    edge_slopes, enumerate_types, leaves_below, outgoing_slopes, type_count, CombinatorialType,
    Rooted,
};

use thiserror::Error;

use crate::laurent::LaurentError;
use crate::lattice::{Bivector, LatticeError};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum EngineError {
    /// The constraints sit on a wall: a contracted edge or a positive-dimensional solution set.
    #[error("degenerate constraints: {0}")]
    DegenerateConstraints(String),
    #[error("flat vertex: outgoing slopes are collinear")]
    FlatVertex,
    #[error("ω vanishes on the non-flat vertex frame {0}")]
    GenericityViolation(Bivector),
    #[error("no generic constraints found after {0} draws")]
    ExhaustedResampling(usize),
    #[error("shape mismatch: {0}")]
    Shape(String),
    #[error(transparent)]
    Lattice(#[from] LatticeError),
    #[error(transparent)]
    Laurent(#[from] LaurentError),
}

impl EngineError {
    /// Stable machine-readable name for reports.
    pub fn kind(&self) -> &'static str {
        match self {
            EngineError::DegenerateConstraints(_) => "DegenerateConstraints",
            EngineError::FlatVertex => "FlatVertex",
            EngineError::GenericityViolation(_) => "GenericityViolation",
            EngineError::ExhaustedResampling(_) => "ExhaustedResampling",
            EngineError::Shape(_) => "Shape",
            EngineError::Lattice(_) => "Lattice",
            EngineError::Laurent(LaurentError::NotDivisible) => "NotDivisible",
            EngineError::Laurent(_) => "Laurent",
        }
    }
}
