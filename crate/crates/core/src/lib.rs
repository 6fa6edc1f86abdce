// `!(x > 0.0)` is used on purpose so NaN fails validation.
#![allow(clippy::neg_cmp_op_on_partial_ord)]

pub mod analytics;
pub mod bootstrap;
pub mod classifier;
pub mod cli;
pub mod corpus;
pub mod evalkit;
pub mod extract;
pub mod facet;
pub mod labeler;
pub mod patterns;

pub use facet::Facet;

#[cfg(test)]
pub(crate) mod testutil;
