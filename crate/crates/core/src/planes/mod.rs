//! Projective and affine planes: construction, verification, transforms
//! and serialization.

mod axioms;
mod build;
mod desargues;
pub mod io;
mod structure;
mod subset;
mod transform;

pub use axioms::{verify_axioms, AxiomReport, Violation, MAX_REPORTED};
pub use build::{
    build_desarguesian_affine, build_desarguesian_projective, build_translation_plane,
    MAX_PROJECTIVE_POINTS, MAX_TRANSLATION_ORDER,
};
pub use desargues::{desargues_violation, DesarguesWitness};
pub use structure::{IncidenceStructure, PlaneKind, Provenance};
pub use subset::{LineSet, Lines, PointSet, Points, Side, Subset};
pub use transform::{complete, dualize, restrict};

use thiserror::Error;

use crate::algebra::AlgebraError;

#[derive(Debug, Error)]
pub enum PlaneError {
    #[error("plane of order {order} exceeds the supported size")]
    SizeOutOfRange { order: usize },
    #[error(transparent)]
    InvalidQuasifield(AlgebraError),
    #[error("not an affine plane: {0}")]
    NotAffine(String),
    #[error("not a projective plane")]
    NotProjective,
    #[error("{what} index {index} out of range (< {bound})")]
    IndexOutOfRange {
        what: &'static str,
        index: usize,
        bound: usize,
    },
    #[error("set belongs to a different structure")]
    StructureMismatch,
    #[error("parse error at line {line}, column {column}: {message}")]
    Parse {
        line: usize,
        column: usize,
        message: String,
    },
    #[error("axiom check failed: {0}")]
    Axiom(Box<AxiomReport>),
    #[error(transparent)]
    Io(#[from] std::io::Error),
}
