//! Exact tools for linear spaces of square matrices whose commutators have
//! bounded rank: exact linear algebra over Q and F_p, subspace arithmetic,
//! randomized commutator-rank estimates with exact witnesses, the extremal
//! constructions, simultaneous triangularization, an exhaustive search over
//! triangular-conjugation-invariant spaces, and structure checks.

pub mod borel_search;
pub mod commrank;
pub mod constructions;
pub mod error;
pub mod exact_linalg;
pub mod rng;
pub mod subspace;
pub mod triangularize;
pub mod verify;

pub use borel_search::{InvariantSpaceSpec, RuleSet, SearchReport};
pub use commrank::{CommutatorProfile, RankVerdict};
pub use error::{Error, Result};
pub use exact_linalg::{AlgebraicNumber, Field, Fp, Mat, Poly, Rational};
pub use subspace::{MatrixSubspace, RectSubspace, VectorSpace};
pub use triangularize::{Triangularization, TriangularizationResult, TriangularizeError};
pub use verify::{StructureStatus, StructureVerdict};
