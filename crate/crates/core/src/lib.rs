pub mod assignment;
pub mod commutation;
pub mod error;
pub mod families;
pub mod intertwiner;
pub mod linalg;
pub mod matrix;
pub mod pair;
pub mod random;
pub mod realizations;
pub mod resolvent;
pub mod suite;

pub use error::{Error, Result};
pub use matrix::{ComplexMatrix, C64};
pub use pair::OperatorPair;
