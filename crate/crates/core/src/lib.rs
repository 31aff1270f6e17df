//! Inclusion matrices of orthogonal arrays and Latin trades.
//!
//! * [`tuples`]: lexicographic indexing of tuples, position sets and row keys.
//! * [`inclusion_matrix`]: the sparse 0/1 matrix `M_t(v, k)` and its column identities.
//! * [`exact_linalg`]: exact rational rank and independence checks.
//! * [`frequency`]: sparse integer vectors on `V^k`.
//! * [`oa`]: orthogonal array verification, by counting and by matrix equation.
//! * [`trades`]: partial Latin squares, trades, intercalate bases and decomposition.
//! * [`formats`]: text file formats and matrix exports.
//! * [`cli`]: the `oatrade` command line.

pub mod cli;
pub mod error;
pub mod exact_linalg;
pub mod formats;
pub mod frequency;
pub mod inclusion_matrix;
pub mod oa;
pub mod trades;
pub mod tuples;

pub use error::{Error, Result};
pub use exact_linalg::ExactMatrix;
pub use frequency::FrequencyVector;
pub use inclusion_matrix::{InclusionMatrix, SignedColumnCombination};
pub use oa::OrthogonalArray;
pub use trades::{GenIntercalate, LatinTrade, PartialLatinSquare, SignedCombination};
pub use tuples::{KTuple, PositionSet, RowKey};
