//! Exact computation of fundamental groups of complements of plane curves.

pub mod catalog;
pub mod geometry;
pub mod group;
pub mod monodromy;
pub mod numeric;
pub mod pipeline;
pub mod poly;
pub mod roots;
