//! Independent oracles, polygon generation, and randomized search.

pub mod brute;
pub mod counterexample;
pub mod equivalence;
pub mod fuzz;
pub mod generate;
pub mod twin;
