//! The algebras on graded objects: products, the generator presentations, and the checks that
//! tie them together.

pub mod checks;
pub mod product;
pub mod rewrite;
pub mod scalar;
pub mod vector;

pub use checks::{
    assoc_check, dht_constant_oracle_t1, re1_rhs, relation_check, relation_sides, toen_form_t1, unit_check,
    A1Convention, CheckReport, Mismatch, RelationFamily, RelationInstance,
};
pub use product::{a_prime, aut_dt, bracket, lt_mul_odd, lt_mul_t0, DhaContext, Monomial};
pub use rewrite::{gamma_terms, generator_decomposition, normalize_generator_word, DEFAULT_REWRITE_BUDGET};
pub use scalar::{q_exponent, scalar_ops, sqrt_qpower, QSqrt, ScalarOp};
pub use vector::HallVector;
