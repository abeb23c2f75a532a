//! Seeded families of pairs for property checks: generic samples, pairs with
//! a known factor, and Hermitian pairs satisfying `AB²A = BA²B`.

use std::f64::consts::PI;

use rand::Rng;

use crate::matrix::pauli::{sigma_x, sigma_y};
use crate::matrix::{ComplexMatrix, C64, ONE};
use crate::pair::OperatorPair;
use crate::random::{complex_gaussian, ginibre, hermitian, unitary};
use crate::realizations::{
    clock_shift_pair, cyclic_shift_diag_pair, jordan_pair, nilpotent_diag_pair_solved, uq_sl2_module,
    UqGenerator,
};

fn conjugate(u: &ComplexMatrix, m: &ComplexMatrix) -> ComplexMatrix {
    u.dot(m).dot(&u.adjoint())
}

fn conjugated<R: Rng + ?Sized>(rng: &mut R, pair: OperatorPair) -> OperatorPair {
    let u = unitary(rng, pair.dim());
    OperatorPair::new(
        conjugate(&u, pair.a()),
        conjugate(&u, pair.b()),
        pair.declared_lambda(),
        format!("{} (conjugated)", pair.label()),
    )
    .expect("conjugation keeps dimensions")
}

fn real_values<R: Rng + ?Sized>(rng: &mut R, n: usize, lo: f64, hi: f64) -> Vec<f64> {
    (0..n).map(|_| rng.random_range(lo..hi)).collect()
}

/// A factor drawn from unit-modulus, `|λ| ∈ {1/3, 3}` and generic complex values.
pub fn random_factor<R: Rng + ?Sized>(rng: &mut R) -> C64 {
    match rng.random_range(0..4) {
        0 => C64::from_polar(1.0, rng.random_range(0.0..2.0 * PI)),
        1 => C64::from_polar(3.0, rng.random_range(0.0..2.0 * PI)),
        2 => C64::from_polar(1.0 / 3.0, rng.random_range(0.0..2.0 * PI)),
        _ => C64::from_polar(rng.random_range(0.2..4.0), rng.random_range(0.0..2.0 * PI)),
    }
}

/// Generic pair with i.i.d. Gaussian entries.
pub fn ginibre_pair<R: Rng + ?Sized>(rng: &mut R, n: usize) -> OperatorPair {
    OperatorPair::new(ginibre(rng, n, n), ginibre(rng, n, n), None, format!("ginibre n={n}"))
        .expect("square")
}

pub fn hermitian_pair<R: Rng + ?Sized>(rng: &mut R, n: usize) -> OperatorPair {
    OperatorPair::new(hermitian(rng, n), hermitian(rng, n), None, format!("hermitian n={n}"))
        .expect("square")
}

/// A pair with a declared factor, drawn from the structured families.
/// Nilpotent families stay triangular so their spectra are exact.
pub fn lambda_pair<R: Rng + ?Sized>(rng: &mut R, max_dim: usize) -> OperatorPair {
    let max_dim = max_dim.max(2);
    let n = rng.random_range(2..=max_dim);
    match rng.random_range(0..8) {
        0 => conjugated(rng, clock_shift_pair(n).expect("n ≥ 2")),
        1 => {
            let k = rng.random_range(1..n);
            let lambda = C64::from_polar(1.0, 2.0 * PI * k as f64 / n as f64);
            conjugated(rng, cyclic_shift_diag_pair(n, lambda).expect("root of unity"))
        }
        2 => {
            let betas: Vec<C64> = (0..n).map(|_| complex_gaussian(rng)).collect();
            let pivot = rng.random_range(1..n);
            nilpotent_diag_pair_solved(&betas, pivot, random_factor(rng)).expect("valid pivot")
        }
        3 => {
            let dim = rng.random_range(2..=3usize.min(max_dim));
            let (x, y, z) = (complex_gaussian(rng), complex_gaussian(rng), complex_gaussian(rng));
            jordan_pair(dim, x, y, z, random_factor(rng)).expect("nonzero factor")
        }
        4 => {
            let q = C64::from_polar(rng.random_range(0.5..2.0), rng.random_range(0.3..PI - 0.3));
            let generator = if rng.random_bool(0.5) { UqGenerator::E } else { UqGenerator::F };
            let eps = if rng.random_bool(0.5) { 1 } else { -1 };
            uq_sl2_module(n - 1, q, eps)
                .expect("q² ≠ 1")
                .pair(generator)
                .expect("square")
        }
        5 => {
            let u = unitary(rng, n);
            let d1: Vec<C64> = (0..n).map(|_| complex_gaussian(rng)).collect();
            let d2: Vec<C64> = (0..n).map(|_| complex_gaussian(rng)).collect();
            OperatorPair::new(
                conjugate(&u, &ComplexMatrix::from_diag(&d1)),
                conjugate(&u, &ComplexMatrix::from_diag(&d2)),
                Some(ONE),
                "commuting normal",
            )
            .expect("square")
        }
        6 => {
            let m = (n / 2).max(1);
            let d1: Vec<C64> = (0..m).map(|_| complex_gaussian(rng)).collect();
            let d2: Vec<C64> = (0..m).map(|_| complex_gaussian(rng)).collect();
            let d1 = ComplexMatrix::from_diag(&d1);
            let d2 = ComplexMatrix::from_diag(&d2);
            let pair = OperatorPair::new(sigma_x().kron(&d1), sigma_y().kron(&d2), Some(-ONE), "pauli tensor")
                .expect("square");
            conjugated(rng, pair)
        }
        _ => {
            let p = clock_shift_pair(n).expect("n ≥ 2");
            let alpha = complex_gaussian(rng);
            let beta = complex_gaussian(rng);
            conjugated(rng, p.scaled(alpha, beta))
        }
    }
}

/// Hermitian pair with `AB²A = BA²B`: commuting pairs, Pauli-type blocks
/// `(σ_x ⊗ D₁, W ⊗ D₂)` with `W = (σ_x + σ_y)/√2`, and direct sums of the
/// two, all conjugated by a random unitary.
pub fn norm_condition_pair<R: Rng + ?Sized>(rng: &mut R, max_dim: usize) -> OperatorPair {
    let max_dim = max_dim.max(2);
    let commuting = |rng: &mut R, n: usize, psd: bool| {
        let lo = if psd { 0.0 } else { -2.0 };
        let mut d1 = real_values(rng, n, lo, 2.0);
        if rng.random_bool(0.3) {
            d1[0] = 0.0;
        }
        let d2 = real_values(rng, n, -2.0, 2.0);
        (ComplexMatrix::from_real_diag(&d1), ComplexMatrix::from_real_diag(&d2))
    };
    let pauli_block = |rng: &mut R, m: usize| {
        let w = (&sigma_x() + &sigma_y()).scale_real(std::f64::consts::FRAC_1_SQRT_2);
        let d1 = ComplexMatrix::from_real_diag(&real_values(rng, m, -2.0, 2.0));
        let d2 = ComplexMatrix::from_real_diag(&real_values(rng, m, -2.0, 2.0));
        (sigma_x().kron(&d1), w.kron(&d2))
    };
    let branches = if max_dim >= 3 { 3 } else { 2 };
    let (a, b, label) = match rng.random_range(0..branches) {
        0 => {
            let n = rng.random_range(1..=max_dim);
            let psd = rng.random_bool(0.5);
            let (a, b) = commuting(rng, n, psd);
            (a, b, "commuting hermitian")
        }
        1 => {
            let m = rng.random_range(1..=max_dim / 2);
            let (a, b) = pauli_block(rng, m);
            (a, b, "pauli block")
        }
        _ => {
            let m = rng.random_range(1..=(max_dim - 1) / 2);
            let k = rng.random_range(1..=max_dim - 2 * m);
            let (pa, pb) = pauli_block(rng, m);
            let (ca, cb) = commuting(rng, k, false);
            (pa.direct_sum(&ca), pb.direct_sum(&cb), "pauli block ⊕ commuting")
        }
    };
    let u = unitary(rng, a.rows());
    let hermitize = |m: ComplexMatrix| (&m + &m.adjoint()).scale_real(0.5);
    OperatorPair::new(
        hermitize(conjugate(&u, &a)),
        hermitize(conjugate(&u, &b)),
        None,
        label,
    )
    .expect("square")
}

/// Normal `A = U diag(a) U*` whose spectrum contains `λ`-chains, so the
/// `λ`-commutant is nontrivial.
pub fn chained_normal<R: Rng + ?Sized>(rng: &mut R, max_dim: usize) -> (ComplexMatrix, C64) {
    let n = rng.random_range(2..=max_dim.max(2));
    let lambda = random_factor(rng);
    let mut values = Vec::with_capacity(n);
    while values.len() < n {
        let mut mu = complex_gaussian(rng);
        let shortest = if values.is_empty() { 2 } else { 1 };
        let chain = rng.random_range(shortest..=3).min(n - values.len());
        for _ in 0..chain {
            values.push(mu);
            mu *= lambda;
        }
    }
    let u = unitary(rng, n);
    (conjugate(&u, &ComplexMatrix::from_diag(&values)), lambda)
}
