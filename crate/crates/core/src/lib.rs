//! Exact-arithmetic engine for two-pile subtraction games whose P-positions
//! are (or fail to be) pairs of complementary Beatty sequences.

pub mod classifier;
pub mod export;
pub mod games;
pub mod quadfield;
pub mod solver;
