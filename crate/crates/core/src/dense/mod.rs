//! Dense matrices, vectors and the two factorizations everything else is
//! built on.

mod eigh;
mod matrix;
mod svd;
mod vector;

pub use eigh::{eigh, eigh_with, Eigen};
pub use matrix::Matrix;
pub use svd::{svd, Svd};
pub use vector::Vector;
