//! Monomial ideals of projective dimension at most one, quasi-forests, and the
//! graph trees that support their minimal free resolutions.
//!
//! Every construction comes with an independent check: leaf orders against
//! induced-subcomplex leaves, duality against the definitions, and tree
//! resolutions against an exact lcm-lattice homology computation of the
//! multigraded Betti numbers.

pub mod bits;
pub mod census;
pub mod complex;
pub mod duality;
pub mod error;
pub mod homology;
pub mod io;
pub mod monomial;
pub mod random;
pub mod resolution;
pub mod verify;

pub use complex::{LeafOrderMode, SimplicialComplex};
pub use error::{Error, Result};
pub use monomial::{Monomial, MonomialIdeal, Restriction, VariableSet};
