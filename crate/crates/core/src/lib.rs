//! Coded multi-source content delivery.
//!
//! * [`gf`]: arithmetic in GF(2^m) and the coefficient-vector and
//!   multiplication-matrix maps.
//! * [`linalg`]: dense matrices over GF(2^m), bit-packed GF(2) matrices and
//!   an incremental [`RankTracker`].
//! * [`codes`]: Reed-Solomon, random linear and AR4JA LDPC codes.
//! * [`lifting`]: binary images of codes over extension fields.
//! * [`coupon`]: exact and asymptotic analysis of same-code delivery.
//! * [`delivery`]: Monte-Carlo simulation of same-code and mixed-code
//!   sessions.

pub mod codes;
pub mod coupon;
pub mod delivery;
pub mod error;
pub mod gf;
pub mod lifting;
pub mod linalg;
pub mod seed;

pub use codes::{CodeKind, CodeSpec};
pub use error::{Error, Result};
pub use gf::{Field, FieldElement};
pub use lifting::LiftedCode;
pub use linalg::{BitMatrix, BitVec, Matrix, Offer, RankTracker};
