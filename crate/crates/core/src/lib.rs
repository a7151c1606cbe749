//! Exceptional Hermite polynomials: exact Wronskian construction, the
//! trivial-monodromy characterization of the exceptional subspace, and
//! quadrature experiments in the weighted Hilbert space.

pub mod error;
pub mod exactpoly;
pub mod hermite;
pub mod l2lab;
pub mod partitions;

pub use error::{Error, Result};
pub use exactpoly::{ExactPoly, Rational, RationalFunction, SquareFreeDecomposition};
pub use hermite::{DegreeSequence, ExceptionalBasis, Membership};
pub use partitions::{KSet, Partition, PartitionFilter};
pub mod monodromy;
pub mod mp;
