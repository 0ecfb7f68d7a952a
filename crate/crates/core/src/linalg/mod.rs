//! Dense linear algebra over GF(2^m): rank, echelon forms, solving, and
//! incremental rank tracking as codeword symbols arrive.

mod bits;
mod dense;
mod tracker;

pub use bits::{BitMatrix, BitVec};
pub use dense::{solve, Echelon, Matrix};
pub use tracker::{Offer, RankTracker};

pub(crate) use dense::nullspace_from_echelon;
