//! Exact computations with Boolean inverse ∧-monoids and their groupoids.
//!
//! Two engines share one calculus ([`algebra::BooleanInverseMonoid`]):
//!
//! * the finite engine ([`finite::FinBim`]): monoids of local bisections of
//!   finite discrete groupoids, where the duality with groupoids can be
//!   checked end to end ([`duality`]) and monoid classes decided exactly
//!   ([`checkers`]);
//! * the Cuntz engine ([`cuntz`]): prefix-exchange maps on n-ary Cantor
//!   space, whose units form the Thompson groups, with constructive witness
//!   generators and machine-checkable certificates.

pub mod algebra;
pub mod checkers;
pub mod corpus;
pub mod cuntz;
pub mod duality;
pub mod error;
pub mod finite;
pub mod groupoid;
pub mod munn;
pub mod perm;
pub mod verify;

pub use algebra::{Basic, BasicDecomposition, BooleanInverseMonoid, Pencil};
pub use cuntz::{ClopenSet, CuntzElement, CuntzMonoid};
pub use error::{Error, Result};
pub use finite::FinBim;
pub use groupoid::{FiniteGroupoid, LocalBisection};
pub use perm::Permutation;
