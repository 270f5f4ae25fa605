//! Exact integer linear algebra: matrices, Smith normal form, chain
//! complexes, homology with canonical generators and induced maps.

mod bigstr;
mod complex;
mod group;
mod matrix;
mod snf;

pub use complex::{
    compose_reduced, induced_map, reduce_rows, verify_complex, ChainComplex, ChainMap, Homology,
};
pub(crate) use complex::induced_on;
pub use group::AbelianGroup;
pub use matrix::IntMatrix;
pub use snf::{smith_normal_form, Snf};

use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum ChainError {
    #[error("matrix {rows}x{cols} needs {} entries, got {len}", rows * cols)]
    EntryCount { rows: usize, cols: usize, len: usize },
    #[error("cannot multiply {left:?} by {right:?}")]
    Shape {
        left: (usize, usize),
        right: (usize, usize),
    },
    #[error("matrix {0:?} is not square")]
    NotSquare((usize, usize)),
    #[error("expected {expected} boundary matrices, found {found}")]
    BoundaryCount { expected: usize, found: usize },
    #[error("boundary in degree {degree} has shape {found:?}, expected {expected:?}")]
    BoundaryShape {
        degree: usize,
        expected: (usize, usize),
        found: (usize, usize),
    },
    #[error("boundary composite is nonzero in degree {degree}")]
    NotAComplex { degree: usize },
    #[error("chain map component in degree {degree} has shape {found:?}, expected {expected:?}")]
    MapShape {
        degree: usize,
        expected: (usize, usize),
        found: (usize, usize),
    },
    #[error("chain map does not commute with the boundary in degree {degree}")]
    NotAChainMap { degree: usize },
}
