//! Exact integer linear algebra: Hermite and Smith normal forms, integer
//! solutions of `A·x = b`, and lattice bases of integer kernels.
//!
//! Everything is generic over an exact integer type; [`IntMatrix`] fixes it to
//! arbitrary precision.

mod matrix;
mod normal_form;
mod solve;

pub use matrix::Matrix;
pub use normal_form::{hnf, hnf_reduce, pivots, snf};
pub use solve::{solve, Solution};

use num_integer::Integer;
use num_traits::Signed;
use std::fmt::Debug;

/// Exact signed integers.
pub trait Int: Integer + Signed + Clone + Debug {}

impl<T: Integer + Signed + Clone + Debug> Int for T {}

pub type IntMatrix = Matrix<num_bigint::BigInt>;
