//! Seeded random matrix ensembles.
//!
//! Every draw goes through a [`ChaCha8Rng`] seeded from a 64-bit value, so
//! results are reproducible across platforms and thread schedules.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rand_distr::StandardNormal;

use crate::linalg::qr;
use crate::matrix::{ComplexMatrix, C64};

pub type SeededRng = ChaCha8Rng;

pub fn splitmix64(mut x: u64) -> u64 {
    x = x.wrapping_add(0x9E37_79B9_7F4A_7C15);
    x = (x ^ (x >> 30)).wrapping_mul(0xBF58_476D_1CE4_E5B9);
    x = (x ^ (x >> 27)).wrapping_mul(0x94D0_49BB_1331_11EB);
    x ^ (x >> 31)
}

/// Per-trial seed: `splitmix(splitmix(seed ⊕ trial) ⊕ salt)`.
pub fn trial_seed(seed: u64, salt: u64, trial: u64) -> u64 {
    splitmix64(splitmix64(seed ^ trial) ^ salt)
}

pub fn rng_from_seed(seed: u64) -> SeededRng {
    ChaCha8Rng::seed_from_u64(seed)
}

/// Standard complex Gaussian: real and imaginary parts i.i.d. `N(0, 1/2)`.
pub fn complex_gaussian<R: Rng + ?Sized>(rng: &mut R) -> C64 {
    let re: f64 = rng.sample(StandardNormal);
    let im: f64 = rng.sample(StandardNormal);
    C64::new(re, im) * std::f64::consts::FRAC_1_SQRT_2
}

/// Ginibre sample: i.i.d. standard complex Gaussian entries.
pub fn ginibre<R: Rng + ?Sized>(rng: &mut R, rows: usize, cols: usize) -> ComplexMatrix {
    ComplexMatrix::from_fn(rows, cols, |_, _| complex_gaussian(rng))
}

pub fn hermitian<R: Rng + ?Sized>(rng: &mut R, n: usize) -> ComplexMatrix {
    let g = ginibre(rng, n, n);
    (&g + &g.adjoint()).scale_real(0.5)
}

/// `G G*` with `G` of shape `n × rank`; rank-deficient when `rank < n`.
pub fn psd<R: Rng + ?Sized>(rng: &mut R, n: usize, rank: usize) -> ComplexMatrix {
    let g = ginibre(rng, n, rank.max(1));
    let m = g.dot(&g.adjoint());
    (&m + &m.adjoint()).scale_real(0.5)
}

/// Haar-distributed unitary from the QR factor of a Ginibre sample.
pub fn unitary<R: Rng + ?Sized>(rng: &mut R, n: usize) -> ComplexMatrix {
    qr(&ginibre(rng, n, n)).0
}

/// `U diag(values) U*` for a random unitary `U`.
pub fn normal_with_spectrum<R: Rng + ?Sized>(rng: &mut R, values: &[C64]) -> ComplexMatrix {
    let u = unitary(rng, values.len());
    u.dot(&ComplexMatrix::from_diag(values)).dot(&u.adjoint())
}

pub fn real_diag_hermitian<R: Rng + ?Sized>(rng: &mut R, values: &[f64]) -> ComplexMatrix {
    let u = unitary(rng, values.len());
    u.dot(&ComplexMatrix::from_real_diag(values)).dot(&u.adjoint())
}
