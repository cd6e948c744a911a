//! Fans of toric Calabi–Yau threefolds, their curve classes, toric graphs and
//! the flop and blowup surgeries.

pub mod fan;
pub mod graph;
pub mod lattice;

pub use fan::{edge, ks_fan, CurveClass, Edge, Fan, Flop, Point, SurfaceFan, ValidationReport, Violation};
pub use graph::{GraphEdge, Leg, Slot, ToricGraph, TriVertex};
pub use lattice::{homology_basis, LatticeBasis};
