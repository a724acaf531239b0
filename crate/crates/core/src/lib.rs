//! Diagram monoids and their Ehresmann structure.
//!
//! Partition, Brauer, rook and relation monoids are built as Cayley tables;
//! on top of those sit Green's relations, the Ehresmann analyzer for a chosen
//! semilattice of idempotents, the Ehresmann category, and exact-rational
//! semigroup and category algebras.

#![no_std]

extern crate alloc;

pub mod category;
pub mod dsu;
pub mod ehresmann;
pub mod error;
pub mod green;
pub mod monoid;
pub mod order;
pub mod partition;
pub mod rational;
pub mod relation;
pub mod zoo;

pub use ehresmann::{Axiom, EhresmannReport, Semilattice, Side, Witness};
pub use error::{Error, Result};
pub use monoid::{Element, FiniteMonoid, MulTable};
pub use order::PartialOrder;
pub use partition::{Partition, SetPartition, Subset, Vertex};
pub use rational::{Rational, RationalMatrix};
pub use relation::BinaryRelation;
