//! Exact computations around the coherent cohomology of super Grassmannians.
//!
//! The crate is organised bottom-up:
//!
//! - [`linalg`]: exact rational matrices, fraction-free rank and determinants.
//! - [`partition`]: partitions, Schur-functor dimensions, Gaussian binomials and
//!   Littlewood–Richardson products truncated to a box.
//! - [`poly`]: multivariate rational polynomials, monic division over a
//!   coefficient ring, graded quotient dimensions and factorization over ℚ.
//! - [`lascoux`]: closed-form Betti tables of determinantal varieties.
//! - [`oracle`]: brute-force Koszul homology, used to check [`lascoux`].
//! - [`grassmann`]: the Schubert-basis cohomology ring of a Grassmannian.
//! - [`supergrass`]: cohomology of the structure sheaf of `Gr_{r|s}(C^{n|m})`.
//! - [`rings`]: splitting rings, factorization rings, Sylvester matrices and
//!   discriminants.
//! - [`pairs`]: classification of pairs of maps `f: V0 → V1`, `g: V1 → V0`.
//!
//! Everything is exact; there is no floating point anywhere.

pub mod error;
pub mod grassmann;
pub mod lascoux;
pub mod linalg;
pub mod oracle;
pub mod pairs;
pub mod partition;
pub mod poly;
pub mod rings;
pub mod supergrass;

pub use error::{Error, Result};
pub use grassmann::{CohomologyClass, GrassSpec};
pub use lascoux::{BettiEntry, BettiTable, DetVarSpec, RepPair};
pub use linalg::{QMatrix, Q};
pub use oracle::{OracleJob, TorDims};
pub use pairs::{Indecomposable, IndecompMultiset, MatrixPair};
pub use partition::{BoxBound, GradedDims, Partition};
pub use poly::{MultiPoly, QPoly, UniPoly};
pub use rings::{FactRing, SplitRing, SylvesterMatrix};
pub use supergrass::{CohomologyReport, SuperGrassSpec};
