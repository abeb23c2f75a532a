//! Dense decompositions consumed by the rest of the crate.

pub mod hermitian;
pub mod lu;
pub mod polar;
pub mod schur;
pub mod spectrum;
pub mod structure;
pub mod svd;

pub use hermitian::hermitian_eig;
pub use lu::{determinant, inverse, lu, Lu};
pub use polar::{polar, PolarParts};
pub use schur::{hessenberg, qr, schur, Schur};
pub use spectrum::{eigenvalues, SpectrumSet};
pub use structure::{classify_structure, StructureFlags};
pub use svd::{spectral_norm, svd, Svd};
