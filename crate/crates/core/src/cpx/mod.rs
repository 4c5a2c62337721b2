//! Periodic and bounded complexes of representations, and the counting formulas of their
//! derived categories.

pub mod complex;
pub mod graded;

pub use complex::{
    alt_hom_direct, alt_hom_product, aut_ct_count, dt_hom_with_cone_count, enumerate_complex_classes, hall_number_ct,
    hom_ct_count, hom_dt_count, homology, ComplexObj, ComplexRegistry,
};
pub use graded::{enumerate_graded, GradedObject, PeriodSpec};
