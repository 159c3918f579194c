//! Exact field arithmetic and linear algebra.

mod matrix;
mod scalar;
mod sparse;

pub use matrix::{subquotient_dim, Matrix};
pub use scalar::{Field, Rat, Scalar};
pub use sparse::{axpy, scale, sparse_from_dense, sparse_to_dense, Accum, Echelon, Insert, SparseVec};

/// Dense vector of scalars.
pub type Vector = Vec<Scalar>;

pub fn zero_vector(field: Field, n: usize) -> Vector {
    vec![field.zero(); n]
}

pub fn is_zero_vector(v: &[Scalar]) -> bool {
    v.iter().all(Scalar::is_zero)
}

mod search;
pub use search::{find_nonvanishing_point, GRID_BUDGET};
