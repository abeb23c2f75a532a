//! Finite-dimensional pairs with a known commutation factor, and the simple
//! `U_q(sl2)` modules.

use std::f64::consts::PI;

use serde::{Deserialize, Serialize};

use crate::commutation::{detect_factor, FactorReport};
use crate::error::{Error, Result};
use crate::matrix::pauli::{sigma_x, sigma_y};
use crate::matrix::{ComplexMatrix, C64, ONE, ZERO};
use crate::pair::OperatorPair;

/// Tolerance for parameter validation (`λ^N = 1`, `β_p = λβ_{p−1}`).
pub const PARAMETER_TOL: f64 = 1e-9;

/// Which generator of the quantum group is paired with `K`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Serialize, Deserialize)]
pub enum UqGenerator {
    /// `(K, E)` with factor `q²`.
    #[default]
    E,
    /// `(K, F)` with factor `q⁻²`.
    F,
}

fn default_eps() -> i8 {
    1
}

/// A realization kind with its parameters.
///
/// JSON: `{"kind": "CLOCK_SHIFT", "params": {"n": 4}}`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(tag = "kind", content = "params", rename_all = "SCREAMING_SNAKE_CASE")]
pub enum RealizationSpec {
    ClockShift {
        n: usize,
    },
    CyclicShiftDiag {
        n: usize,
        lambda: C64,
    },
    NilpotentDiag {
        betas: Vec<C64>,
        pivot: usize,
        lambda: C64,
        /// Overwrite `β_pivot` with `λ·β_{pivot−1}` instead of validating it.
        #[serde(default)]
        solve: bool,
    },
    Jordan2 {
        x: C64,
        #[serde(default)]
        y: C64,
        lambda: C64,
    },
    Jordan3 {
        x: C64,
        #[serde(default)]
        y: C64,
        #[serde(default)]
        z: C64,
        lambda: C64,
    },
    PauliXy,
    PauliIntertwiner,
    UqSl2 {
        n: usize,
        q: C64,
        #[serde(default = "default_eps")]
        eps: i8,
        #[serde(default)]
        generator: UqGenerator,
    },
}

impl RealizationSpec {
    pub fn build(&self) -> Result<OperatorPair> {
        match self {
            RealizationSpec::ClockShift { n } => clock_shift_pair(*n),
            RealizationSpec::CyclicShiftDiag { n, lambda } => cyclic_shift_diag_pair(*n, *lambda),
            RealizationSpec::NilpotentDiag {
                betas,
                pivot,
                lambda,
                solve,
            } => {
                if *solve {
                    nilpotent_diag_pair_solved(betas, *pivot, *lambda)
                } else {
                    nilpotent_diag_pair(betas, *pivot, *lambda)
                }
            }
            RealizationSpec::Jordan2 { x, y, lambda } => jordan_pair(2, *x, *y, ZERO, *lambda),
            RealizationSpec::Jordan3 { x, y, z, lambda } => jordan_pair(3, *x, *y, *z, *lambda),
            RealizationSpec::PauliXy => Ok(pauli_pair(PauliKind::Xy)),
            RealizationSpec::PauliIntertwiner => Ok(pauli_pair(PauliKind::Intertwiner)),
            RealizationSpec::UqSl2 {
                n,
                q,
                eps,
                generator,
            } => uq_sl2_module(*n, *q, *eps)?.pair(*generator),
        }
    }
}

/// `A e_j = e_{j−1 mod n}`.
fn cyclic_shift(n: usize) -> ComplexMatrix {
    ComplexMatrix::from_fn(n, n, |r, c| if (r + 1) % n == c { ONE } else { ZERO })
}

fn require_nonzero(lambda: C64) -> Result<()> {
    if lambda.norm() == 0.0 || !lambda.is_finite() {
        return Err(Error::InvalidParameter(format!(
            "λ must be nonzero and finite, got {lambda}"
        )));
    }
    Ok(())
}

/// Weyl clock and shift: `B = diag(ω^j)`, `A e_j = e_{j−1 mod n}`, `ω = e^{2πi/n}`.
pub fn clock_shift_pair(n: usize) -> Result<OperatorPair> {
    if n < 2 {
        return Err(Error::InvalidParameter(format!("clock-shift needs n ≥ 2, got {n}")));
    }
    // Quarter turns are exact so that n = 2, 4 carry no rounding.
    let omega = |j: usize| {
        if (4 * j).is_multiple_of(n) {
            [ONE, C64::new(0.0, 1.0), -ONE, C64::new(0.0, -1.0)][(4 * j / n) % 4]
        } else {
            C64::from_polar(1.0, 2.0 * PI * j as f64 / n as f64)
        }
    };
    let diag: Vec<C64> = (0..n).map(omega).collect();
    OperatorPair::new(
        cyclic_shift(n),
        ComplexMatrix::from_diag(&diag),
        Some(omega(1)),
        format!("clock-shift n={n}"),
    )
}

/// Cyclic shift with `B e_j = λ^j e_j`. The wrap-around forces `λ^N = 1`.
pub fn cyclic_shift_diag_pair(n: usize, lambda: C64) -> Result<OperatorPair> {
    if n < 2 {
        return Err(Error::InvalidParameter(format!("cyclic shift needs N ≥ 2, got {n}")));
    }
    require_nonzero(lambda)?;
    let gap = (lambda.powu(n as u32) - ONE).norm();
    if gap > PARAMETER_TOL {
        return Err(Error::InvalidParameter(format!(
            "cyclic shift needs a root of unity: λ^N ≠ 1 (|λ^{n} − 1| = {gap:.3e}); \
             use NILPOTENT_DIAG for arbitrary λ"
        )));
    }
    let diag: Vec<C64> = (0..n).map(|j| lambda.powu(j as u32)).collect();
    OperatorPair::new(
        cyclic_shift(n),
        ComplexMatrix::from_diag(&diag),
        Some(lambda),
        format!("cyclic-shift-diag N={n}"),
    )
}

fn check_pivot(betas: &[C64], pivot: usize) -> Result<()> {
    if pivot == 0 || pivot >= betas.len() {
        return Err(Error::InvalidParameter(format!(
            "pivot must satisfy 1 ≤ pivot < {}, got {pivot}",
            betas.len()
        )));
    }
    Ok(())
}

/// `B = diag(β)`, `A` the single matrix unit sending `e_pivot` to `e_{pivot−1}`.
/// `AB = λBA` exactly when `β_pivot = λβ_{pivot−1}`.
pub fn nilpotent_diag_pair(betas: &[C64], pivot: usize, lambda: C64) -> Result<OperatorPair> {
    check_pivot(betas, pivot)?;
    require_nonzero(lambda)?;
    let (lo, hi) = (betas[pivot - 1], betas[pivot]);
    let gap = (hi - lambda * lo).norm();
    if gap > PARAMETER_TOL * hi.norm().max(1.0) {
        return Err(Error::InvalidParameter(format!(
            "need β[{pivot}] = λ·β[{}]: {hi} ≠ {}",
            pivot - 1,
            lambda * lo
        )));
    }
    if lo.norm() == 0.0 {
        return Err(Error::InvalidParameter(format!(
            "β[{}] = 0 makes AB = BA = 0",
            pivot - 1
        )));
    }
    let n = betas.len();
    OperatorPair::new(
        ComplexMatrix::unit(n, n, pivot - 1, pivot),
        ComplexMatrix::from_diag(betas),
        Some(lambda),
        format!("nilpotent-diag n={n} pivot={pivot}"),
    )
}

/// As [`nilpotent_diag_pair`], with `β_pivot` replaced by `λβ_{pivot−1}`.
pub fn nilpotent_diag_pair_solved(betas: &[C64], pivot: usize, lambda: C64) -> Result<OperatorPair> {
    check_pivot(betas, pivot)?;
    let mut betas = betas.to_vec();
    betas[pivot] = lambda * betas[pivot - 1];
    nilpotent_diag_pair(&betas, pivot, lambda)
}

/// Lower-triangular `A` against the lower shift `B`:
///
/// ```text
/// dim 2: A = [[x, 0], [y, λx]]
/// dim 3: A = [[x, 0, 0], [y, λx, 0], [z, λy, λ²x]]
/// ```
pub fn jordan_pair(dim: usize, x: C64, y: C64, z: C64, lambda: C64) -> Result<OperatorPair> {
    require_nonzero(lambda)?;
    let a = match dim {
        2 => ComplexMatrix::from_rows(&[[x, ZERO], [y, lambda * x]]),
        3 => ComplexMatrix::from_rows(&[
            [x, ZERO, ZERO],
            [y, lambda * x, ZERO],
            [z, lambda * y, lambda * lambda * x],
        ]),
        _ => {
            return Err(Error::InvalidParameter(format!(
                "jordan pair dimension must be 2 or 3, got {dim}"
            )))
        }
    };
    let b = ComplexMatrix::from_fn(dim, dim, |r, c| if r == c + 1 { ONE } else { ZERO });
    OperatorPair::new(a, b, Some(lambda), format!("jordan{dim}"))
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum PauliKind {
    /// `(σ_x, σ_y)`, factor `−1`.
    Xy,
    /// `(σ_x, (σ_x + σ_y)/√2)`: no scalar factor, intertwined by `iσ_z`.
    Intertwiner,
}

pub fn pauli_pair(kind: PauliKind) -> OperatorPair {
    let (b, lambda, label) = match kind {
        PauliKind::Xy => (sigma_y(), Some(-ONE), "pauli-xy"),
        PauliKind::Intertwiner => (
            (&sigma_x() + &sigma_y()).scale_real(std::f64::consts::FRAC_1_SQRT_2),
            None,
            "pauli-intertwiner",
        ),
    };
    OperatorPair::new(sigma_x(), b, lambda, label).expect("2×2 operands")
}

fn validate_q(q: C64) -> Result<()> {
    if !q.is_finite() || q.norm() == 0.0 {
        return Err(Error::InvalidParameter(format!("q must be nonzero and finite, got {q}")));
    }
    if (q * q - ONE).norm() <= 1e-12 {
        return Err(Error::InvalidParameter(format!("q² must differ from 1, got q = {q}")));
    }
    Ok(())
}

/// Quantum integer `[m]_q = q^{m−1} + q^{m−3} + … + q^{1−m}`.
pub fn q_bracket(m: u32, q: C64) -> Result<C64> {
    validate_q(q)?;
    Ok(q_bracket_unchecked(m, q))
}

fn q_bracket_unchecked(m: u32, q: C64) -> C64 {
    let m = m as i32;
    (0..m).map(|k| q.powi(m - 1 - 2 * k)).sum()
}

/// The simple `(n+1)`-dimensional `U_q(sl2)` module.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct UqSl2Module {
    pub n: usize,
    pub q: C64,
    pub eps: i8,
    #[serde(rename = "E")]
    pub e: ComplexMatrix,
    #[serde(rename = "F")]
    pub f: ComplexMatrix,
    #[serde(rename = "K")]
    pub k: ComplexMatrix,
    #[serde(rename = "Kinv")]
    pub kinv: ComplexMatrix,
}

/// `E = ε·superdiag([n], …, [1])`, `F = subdiag([1], …, [n])`,
/// `K = ε·diag(qⁿ, qⁿ⁻², …, q⁻ⁿ)`.
pub fn uq_sl2_module(n: usize, q: C64, eps: i8) -> Result<UqSl2Module> {
    validate_q(q)?;
    if eps != 1 && eps != -1 {
        return Err(Error::InvalidParameter(format!("ε must be ±1, got {eps}")));
    }
    let s = eps as f64;
    let dim = n + 1;
    let e = ComplexMatrix::from_fn(dim, dim, |r, c| {
        if c == r + 1 {
            q_bracket_unchecked((n - r) as u32, q) * s
        } else {
            ZERO
        }
    });
    let f = ComplexMatrix::from_fn(dim, dim, |r, c| {
        if r == c + 1 {
            q_bracket_unchecked(r as u32, q)
        } else {
            ZERO
        }
    });
    let weight = |i: usize| n as i32 - 2 * i as i32;
    let k = ComplexMatrix::from_fn(dim, dim, |r, c| if r == c { q.powi(weight(r)) * s } else { ZERO });
    let kinv = ComplexMatrix::from_fn(dim, dim, |r, c| if r == c { q.powi(-weight(r)) * s } else { ZERO });
    Ok(UqSl2Module {
        n,
        q,
        eps,
        e,
        f,
        k,
        kinv,
    })
}

impl UqSl2Module {
    /// Three-dimensional module in the normalization
    /// `E = superdiag([2], [2])`, `F = subdiag(1, 1)`, `K = diag(q², 1, q⁻²)`.
    /// Conjugating by `diag(1, 1, [2])` maps it onto `uq_sl2_module(2, q, 1)`.
    pub fn jantzen(q: C64) -> Result<Self> {
        let mut m = uq_sl2_module(2, q, 1)?;
        let two = q_bracket_unchecked(2, q);
        m.e = ComplexMatrix::from_rows(&[[ZERO, two, ZERO], [ZERO, ZERO, two], [ZERO, ZERO, ZERO]]);
        m.f = ComplexMatrix::from_rows(&[[ZERO, ZERO, ZERO], [ONE, ZERO, ZERO], [ZERO, ONE, ZERO]]);
        Ok(m)
    }

    pub fn dim(&self) -> usize {
        self.n + 1
    }

    /// `(K, E)` with factor `q²` or `(K, F)` with factor `q⁻²`.
    pub fn pair(&self, generator: UqGenerator) -> Result<OperatorPair> {
        let (b, lambda, name) = match generator {
            UqGenerator::E => (self.e.clone(), self.q * self.q, "E"),
            UqGenerator::F => (self.f.clone(), (self.q * self.q).inv(), "F"),
        };
        OperatorPair::new(
            self.k.clone(),
            b,
            Some(lambda),
            format!("uq-sl2 n={} (K, {name})", self.n),
        )
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct RelationResiduals {
    /// `max(‖KK⁻¹ − I‖_F, ‖K⁻¹K − I‖_F)`.
    pub kk_inv: f64,
    /// `‖KEK⁻¹ − q²E‖_F / max(1, ‖q²E‖_F)`.
    pub ke_rel: f64,
    /// `‖KFK⁻¹ − q⁻²F‖_F / max(1, ‖q⁻²F‖_F)`.
    pub kf_rel: f64,
    /// `‖EF − FE − (K − K⁻¹)/(q − q⁻¹)‖_F / max(1, ‖(K − K⁻¹)/(q − q⁻¹)‖_F)`.
    pub ef_rel: f64,
    /// Factor detected for `(K, E)`; expected `q²`.
    pub factor_ke: FactorReport,
    /// Factor detected for `(K, F)`; expected `q⁻²`.
    pub factor_kf: FactorReport,
}

impl RelationResiduals {
    pub fn max_residual(&self) -> f64 {
        self.kk_inv.max(self.ke_rel).max(self.kf_rel).max(self.ef_rel)
    }
}

pub fn verify_uq_relations(module: &UqSl2Module, tol: f64) -> Result<RelationResiduals> {
    let dim = module.dim();
    let (e, f, k, kinv, q) = (&module.e, &module.f, &module.k, &module.kinv, module.q);
    let id = ComplexMatrix::identity(dim);
    let kk_inv = k.dot(kinv).distance(&id).max(kinv.dot(k).distance(&id));

    let q2 = q * q;
    let rel = |lhs: &ComplexMatrix, rhs: &ComplexMatrix| lhs.relative_distance(rhs, rhs);
    let ke_rel = rel(&k.dot(e).dot(kinv), &e.scale(q2));
    let kf_rel = rel(&k.dot(f).dot(kinv), &f.scale(q2.inv()));
    let cartan = (k - kinv).scale((q - q.inv()).inv());
    let ef_rel = rel(&(&e.dot(f) - &f.dot(e)), &cartan);

    let factor_ke = detect_factor(&OperatorPair::of(k.clone(), e.clone())?, tol)?;
    let factor_kf = detect_factor(&OperatorPair::of(k.clone(), f.clone())?, tol)?;
    Ok(RelationResiduals {
        kk_inv,
        ke_rel,
        kf_rel,
        ef_rel,
        factor_ke,
        factor_kf,
    })
}

/// Named realizations shipped with the library.
pub fn builtin_realizations() -> Vec<(&'static str, RealizationSpec)> {
    let c = C64::new;
    vec![
        ("clock-shift-2", RealizationSpec::ClockShift { n: 2 }),
        ("clock-shift-3", RealizationSpec::ClockShift { n: 3 }),
        ("clock-shift-4", RealizationSpec::ClockShift { n: 4 }),
        ("clock-shift-7", RealizationSpec::ClockShift { n: 7 }),
        (
            "cyclic-shift-diag-6",
            RealizationSpec::CyclicShiftDiag {
                n: 6,
                lambda: C64::from_polar(1.0, PI / 3.0),
            },
        ),
        (
            "cyclic-shift-diag-4-minus-one",
            RealizationSpec::CyclicShiftDiag { n: 4, lambda: -ONE },
        ),
        (
            "nilpotent-diag-3",
            RealizationSpec::NilpotentDiag {
                betas: vec![ONE, c(3.0, 0.0)],
                pivot: 1,
                lambda: c(3.0, 0.0),
                solve: false,
            },
        ),
        (
            "nilpotent-diag-complex",
            RealizationSpec::NilpotentDiag {
                betas: vec![c(0.5, 0.0), c(-1.0, 2.0), ZERO, c(0.0, 4.0)],
                pivot: 2,
                lambda: c(0.2, -0.7),
                solve: true,
            },
        ),
        (
            "jordan2",
            RealizationSpec::Jordan2 {
                x: ONE,
                y: ZERO,
                lambda: c(5.0, 0.0),
            },
        ),
        (
            "jordan2-general",
            RealizationSpec::Jordan2 {
                x: c(0.7, 0.1),
                y: c(-0.3, 1.2),
                lambda: c(0.0, 2.0),
            },
        ),
        (
            "jordan3",
            RealizationSpec::Jordan3 {
                x: c(1.5, 0.0),
                y: c(0.4, -0.2),
                z: c(-1.0, 0.3),
                lambda: c(-0.5, 0.5),
            },
        ),
        ("pauli-xy", RealizationSpec::PauliXy),
        ("pauli-intertwiner", RealizationSpec::PauliIntertwiner),
        (
            "uq-sl2-2-e",
            RealizationSpec::UqSl2 {
                n: 2,
                q: c(2.0, 0.0),
                eps: 1,
                generator: UqGenerator::E,
            },
        ),
        (
            "uq-sl2-5-f",
            RealizationSpec::UqSl2 {
                n: 5,
                q: C64::from_polar(1.3, 0.7),
                eps: -1,
                generator: UqGenerator::F,
            },
        ),
    ]
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::commutation::FactorStatus;
    use crate::matrix::pauli::sigma_z;
    use crate::matrix::I;

    #[test]
    fn clock_shift_two_is_pauli() {
        let p = clock_shift_pair(2).unwrap();
        assert_eq!(p.a(), &sigma_x());
        assert_eq!(p.b(), &sigma_z());
        assert_eq!(p.declared_lambda(), Some(-ONE));
        assert!(clock_shift_pair(1).is_err());
    }

    #[test]
    fn clock_shift_four_has_factor_i() {
        let p = clock_shift_pair(4).unwrap();
        assert_eq!(p.declared_lambda(), Some(I));
        assert_eq!(p.b().diagonal(), vec![ONE, I, -ONE, -I]);
        assert_eq!(p.ab(), p.ba().scale(I));
    }

    #[test]
    fn cyclic_shift_examples() {
        let w = C64::from_polar(1.0, PI / 3.0);
        let r = detect_factor(&cyclic_shift_diag_pair(6, w).unwrap(), 1e-9).unwrap();
        assert_eq!(r.status, FactorStatus::Unique);
        assert!((r.lambda_hat.unwrap() - w).norm() < 1e-12);
        let p = cyclic_shift_diag_pair(4, -ONE).unwrap();
        assert_eq!(p.b().diagonal(), vec![ONE, -ONE, ONE, -ONE]);
        match cyclic_shift_diag_pair(4, C64::new(3.0, 0.0)) {
            Err(Error::InvalidParameter(msg)) => assert!(msg.contains("NILPOTENT_DIAG")),
            other => panic!("{other:?}"),
        }
    }

    #[test]
    fn nilpotent_diag_examples() {
        let three = C64::new(3.0, 0.0);
        let p = nilpotent_diag_pair(&[ONE, three], 1, three).unwrap();
        let r = detect_factor(&p, 1e-9).unwrap();
        assert!((r.lambda_hat.unwrap() - three).norm() < 1e-15);
        assert_eq!(p.ab().dot(&p.ab()).frobenius_norm(), 0.0);
        let c = C64::new(0.7, 0.0);
        let p = nilpotent_diag_pair(&[c, c, c], 2, ONE).unwrap();
        assert_eq!(p.ab(), p.ba());
        assert!(nilpotent_diag_pair(&[ONE, C64::new(2.0, 0.0)], 1, three).is_err());
        assert!(nilpotent_diag_pair(&[ONE, three], 2, three).is_err());
        let solved = nilpotent_diag_pair_solved(&[ONE, ZERO], 1, I).unwrap();
        assert_eq!(solved.b().diagonal(), vec![ONE, I]);
    }

    #[test]
    fn jordan_examples() {
        let five = C64::new(5.0, 0.0);
        let p = jordan_pair(2, ONE, ZERO, ZERO, five).unwrap();
        assert_eq!(p.ab(), ComplexMatrix::from_real_rows(&[[0.0, 0.0], [5.0, 0.0]]));
        assert_eq!(p.ab(), p.ba().scale(five));
        let p = jordan_pair(2, ZERO, ONE, ZERO, five).unwrap();
        assert!(!crate::linalg::classify_structure(p.a(), 1e-9).unwrap().invertible);
        assert_eq!(p.ab(), p.ba().scale(five));
        assert!(jordan_pair(4, ONE, ONE, ONE, five).is_err());
        assert!(jordan_pair(2, ONE, ONE, ONE, ZERO).is_err());
    }

    #[test]
    fn jordan3_relation() {
        let l = C64::new(-0.5, 0.5);
        let p = jordan_pair(3, C64::new(1.5, 0.0), C64::new(0.4, -0.2), C64::new(-1.0, 0.3), l).unwrap();
        assert!(p.ab().distance(&p.ba().scale(l)) < 1e-15);
    }

    #[test]
    fn q_bracket_values() {
        let two = C64::new(2.0, 0.0);
        assert_eq!(q_bracket(1, C64::new(0.3, 0.8)).unwrap(), ONE);
        assert_eq!(q_bracket(2, two).unwrap(), C64::new(2.5, 0.0));
        assert_eq!(q_bracket(3, two).unwrap(), C64::new(5.25, 0.0));
        assert!(q_bracket(2, ZERO).is_err());
        assert!(q_bracket(2, -ONE).is_err());
    }

    #[test]
    fn q_bracket_matches_quotient_form() {
        let q = C64::new(0.9, 0.6);
        for m in 0..8u32 {
            let quotient = (q.powi(m as i32) - q.powi(-(m as i32))) / (q - q.inv());
            assert!((q_bracket(m, q).unwrap() - quotient).norm() < 1e-12);
        }
    }

    #[test]
    fn module_small_cases() {
        let m = uq_sl2_module(0, C64::new(2.0, 0.0), -1).unwrap();
        assert_eq!(m.e.frobenius_norm(), 0.0);
        assert_eq!(m.f.frobenius_norm(), 0.0);
        assert_eq!(m.k, ComplexMatrix::from_real_diag(&[-1.0]));
        let r = verify_uq_relations(&m, 1e-9).unwrap();
        assert_eq!(r.max_residual(), 0.0);

        for eps in [1i8, -1] {
            let s = eps as f64;
            let m = uq_sl2_module(1, C64::new(2.0, 0.0), eps).unwrap();
            assert_eq!(m.e, ComplexMatrix::from_real_rows(&[[0.0, s], [0.0, 0.0]]));
            assert_eq!(m.f, ComplexMatrix::from_real_rows(&[[0.0, 0.0], [1.0, 0.0]]));
            assert_eq!(m.k, ComplexMatrix::from_real_diag(&[2.0 * s, 0.5 * s]));
        }
        assert!(uq_sl2_module(2, ONE, 1).is_err());
        assert!(uq_sl2_module(2, C64::new(2.0, 0.0), 0).is_err());
    }

    #[test]
    fn jantzen_relations_at_q_two() {
        let m = UqSl2Module::jantzen(C64::new(2.0, 0.0)).unwrap();
        assert_eq!(m.e[(0, 1)], C64::new(2.5, 0.0));
        assert_eq!(m.e[(1, 2)], C64::new(2.5, 0.0));
        let r = verify_uq_relations(&m, 1e-9).unwrap();
        assert!(r.max_residual() <= 1e-12, "{r:?}");
        assert!((r.factor_ke.lambda_hat.unwrap() - C64::new(4.0, 0.0)).norm() < 1e-12);
        assert!((r.factor_kf.lambda_hat.unwrap() - C64::new(0.25, 0.0)).norm() < 1e-12);
    }

    #[test]
    fn jantzen_is_conjugate_to_general_module() {
        let q = C64::new(2.0, 0.0);
        let general = uq_sl2_module(2, q, 1).unwrap();
        let jantzen = UqSl2Module::jantzen(q).unwrap();
        let d = ComplexMatrix::from_diag(&[ONE, ONE, q_bracket(2, q).unwrap()]);
        let dinv = ComplexMatrix::from_diag(&[ONE, ONE, q_bracket(2, q).unwrap().inv()]);
        for (g, j) in [(&general.e, &jantzen.e), (&general.f, &jantzen.f), (&general.k, &jantzen.k)] {
            assert!(dinv.dot(g).dot(&d).distance(j) < 1e-14);
        }
    }

    #[test]
    fn complex_q_module_relations() {
        let m = uq_sl2_module(5, C64::from_polar(1.3, 0.7), 1).unwrap();
        assert!(verify_uq_relations(&m, 1e-9).unwrap().max_residual() <= 1e-10);
    }

    #[test]
    fn jordan3_is_jantzen_k_f() {
        let q = C64::new(1.7, -0.4);
        let p = jordan_pair(3, q * q, ZERO, ZERO, (q * q).inv()).unwrap();
        let m = UqSl2Module::jantzen(q).unwrap();
        assert!(p.a().distance(&m.k) < 1e-15);
        assert_eq!(p.b(), &m.f);
    }

    #[test]
    fn pauli_kinds() {
        let xy = pauli_pair(PauliKind::Xy);
        assert_eq!(detect_factor(&xy, 1e-9).unwrap().status, FactorStatus::Unique);
        let tw = pauli_pair(PauliKind::Intertwiner);
        assert_eq!(detect_factor(&tw, 1e-9).unwrap().status, FactorStatus::None);
        assert_eq!(tw.declared_lambda(), None);
    }

    #[test]
    fn spec_json_shape() {
        let spec = RealizationSpec::ClockShift { n: 4 };
        let v = serde_json::to_value(&spec).unwrap();
        assert_eq!(v, serde_json::json!({"kind": "CLOCK_SHIFT", "params": {"n": 4}}));
        let parsed: RealizationSpec =
            serde_json::from_str(r#"{"kind":"JORDAN2","params":{"x":[1,0],"lambda":[5,0]}}"#).unwrap();
        assert_eq!(
            parsed,
            RealizationSpec::Jordan2 {
                x: ONE,
                y: ZERO,
                lambda: C64::new(5.0, 0.0)
            }
        );
        let unit: RealizationSpec = serde_json::from_str(r#"{"kind":"PAULI_XY"}"#).unwrap();
        assert_eq!(unit, RealizationSpec::PauliXy);
    }

    #[test]
    fn every_builtin_builds_with_its_factor() {
        for (name, spec) in builtin_realizations() {
            let p = spec.build().unwrap_or_else(|e| panic!("{name}: {e}"));
            let r = detect_factor(&p, 1e-9).unwrap();
            match p.declared_lambda() {
                Some(l) => {
                    assert_eq!(r.status, FactorStatus::Unique, "{name}");
                    assert!((r.lambda_hat.unwrap() - l).norm() <= 1e-10, "{name}");
                }
                None => assert_eq!(r.status, FactorStatus::None, "{name}"),
            }
        }
    }
}
