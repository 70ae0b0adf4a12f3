//! Slow, direct reference implementations for cross-checking `crn-persist`.
//!
//! Nothing here shares code with the main crate. Networks are plain lists of
//! `(source, target)` integer pairs.

pub mod geom;
pub mod random;
pub mod structure;
pub mod sweep;

/// A reaction as `(source, target)` coordinate vectors.
pub type Pair = (Vec<i64>, Vec<i64>);
