//! Independence-friendly logic over finite structures: trump semantics,
//! double suits, IFG-cylindric set algebras and their finite universal
//! algebra.

pub mod algebra;
pub mod calc;
pub mod enumeration;
pub mod error;
pub mod model;
pub mod random;
pub mod semantics;
pub mod syntax;
pub mod theorems;
pub mod ualg;

pub use error::{Error, Result};
