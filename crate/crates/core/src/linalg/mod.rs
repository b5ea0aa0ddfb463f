//! Exact linear algebra: matrices, certified ranks, Gram matrices and spans.

mod bareiss;
mod gram;
mod matrix;
pub mod modular;
mod rank;
mod span;

pub use bareiss::bareiss_rank;
pub use gram::{gram, gram_by_sparse_dots, GramMatrix};
pub use matrix::{IntMatrix, QMatrix};
pub use rank::{rank_int, rank_q, RankMethod, RankOptions, RankResult};
pub use span::{
    family_rank, intersection, intersection_dimension, intersection_family, kernel_basis, projection_matrix, rref,
    span_contains, IntersectionRanks, DEFAULT_DENSE_LIMIT,
};
pub(crate) use span::check_dense;
