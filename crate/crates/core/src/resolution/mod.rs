//! Monomial-labeled complexes, their homogenized chain complexes, and the
//! constructions of graph trees supporting minimal resolutions.

mod free;
mod labeled;
mod tree;

pub use free::{frame, frame_to_graph, homogenize, taylor, Entry, Frame, FrameGraph, FreeComplex};
pub use labeled::{lcm_lattice, LabeledComplex, LATTICE_GUARD};
pub use tree::{build_tree, edge_labels, enumerate_trees, floystad_tree, trees_for, JointChoice};
