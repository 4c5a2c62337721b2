//! Representations of acyclic quivers over prime fields.

pub mod diagram;
pub mod quiver;
pub mod registry;
pub mod rep;

pub use quiver::{validate_quiver, Arrow, DimVec, Quiver, MAX_VERTICES};
pub use registry::{enumerate_iso_classes, Category, CategorySnapshot, HallTable, IsoClassId};
pub use rep::{aut_count, direct_sum, hom_basis, is_isomorphic, quotient_by_subrep, HomBasis, Rep};
