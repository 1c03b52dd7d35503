//! Exact computations around elementary divisor rings, Hermite rings and unimodular
//! 2×2 matrices over small commutative rings.

pub mod classify;
pub mod constructive;
pub mod error;
pub mod lab;
pub mod lift;
pub mod mat;
pub mod orbit;
pub mod ring;
pub mod search;
pub mod units;

pub use error::{Error, Result};
pub use ring::{make_finite_ring, make_ring, Elem, FiniteRing, RingHandle};
pub use search::{SearchRing, Truth, Verdict};
