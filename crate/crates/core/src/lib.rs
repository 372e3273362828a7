//! Exact computational toolkit for narrow-sense cyclic and negacyclic BCH
//! codes over odd prime-power fields: field arithmetic, cyclotomic cosets,
//! code construction, weight enumeration, closed-form parameter formulas and
//! a verification harness that checks the formulas against brute force.

mod util;

pub mod error;
pub mod field;

pub use error::{Error, Result};
pub use field::{BaseField, ExtensionField, FieldElement, PrimePower};
pub mod cyclotomic;
pub mod codes;
pub mod analysis;
pub mod formulas;
pub mod harness;
