//! Place-difference-value patterns over permutations and words.

pub mod checks;
pub mod cli;
pub mod dsl;
pub mod enumerate;
pub mod formulas;
pub mod intset;
pub mod matcher;
pub mod pattern;
pub mod problems;
pub mod transfer;
