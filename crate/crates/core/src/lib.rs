//! Exact computations for finite quantum groupoids (weak Hopf algebras) over
//! cyclotomic fields.

pub mod algebra;
pub mod double;
pub mod examples;
pub mod field;
pub mod invariants;
pub mod linalg;
pub mod modular;
pub mod qt;
pub mod rep;
pub mod roots;
pub mod star;
pub mod tensor;
pub mod wedderburn;
pub mod wha;

pub use field::FieldElement;
pub use linalg::{Matrix, Vector};
