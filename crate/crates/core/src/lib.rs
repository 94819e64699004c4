//! Finite-field polynomial toolkit for studying which factorization patterns
//! the translates `f - t0` take as `t0` ranges over an extension field.

pub mod constructions;
pub mod error;
pub mod field;
pub mod monodromy;
pub mod perm;
pub mod poly;
mod sweep;
pub mod universality;

pub use error::{Error, Result};
pub use field::{FieldElement, FieldSpec};
pub use perm::CycleType;
pub use poly::{FactorDegreeProfile, Polynomial};
