//! Structural analysis, invariant polygons and persistence checks for reaction networks.

pub mod bundled;
pub mod dynamics;
pub mod endo;
pub mod exact;
pub mod gac3;
pub mod graph;
pub mod netmodel;
pub mod polygon;
pub mod svg;
pub mod verify;
