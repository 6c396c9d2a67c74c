//! Finite-dimensional kinematics at Planck's constant `h = 1/N`.
//!
//! All matrices act on coefficient vectors in the periodic δ-comb basis
//! `Φ_m`, `m = 0..N−1`, where `Φ_m` is supported on `x ∈ m/N + Z`.
//!
//! Shift convention: [`v_matrix`] sends `Φ_m` to `Φ_{m+1}`, which gives the
//! Weyl phase `UV = e^{2πi/N} VU`. The momentum translation `e^{2πip̂}`
//! moves wavefunctions the other way and is therefore `V⁻¹`; see
//! [`momentum_translation`] and [`quantized_harmonic`].

use std::f64::consts::{FRAC_1_SQRT_2, PI};

use num_complex::Complex64;

use crate::error::{BakerError, Result};
use crate::matrix::ComplexMatrix;

/// Even dimension `N` of the torus Hilbert space, with `h = 1/N`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct PlanckN(usize);

impl PlanckN {
    pub fn new(n: usize) -> Result<Self> {
        if n < 2 || !n.is_multiple_of(2) {
            return Err(BakerError::OddDimension(n));
        }
        Ok(Self(n))
    }

    pub fn get(self) -> usize {
        self.0
    }

    pub fn half(self) -> usize {
        self.0 / 2
    }

    pub fn h(self) -> f64 {
        1.0 / self.0 as f64
    }

    pub fn hbar(self) -> f64 {
        1.0 / (2.0 * PI * self.0 as f64)
    }
}

impl std::fmt::Display for PlanckN {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "{}", self.0)
    }
}

/// Point on the θ-torus of boundary conditions. Only the periodic sector
/// and the half-period momentum sector are ever used.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ThetaPoint {
    pub theta1: f64,
    pub theta2: f64,
}

impl ThetaPoint {
    pub const PERIODIC: ThetaPoint = ThetaPoint {
        theta1: 0.0,
        theta2: 0.0,
    };
    pub const HALF_MOMENTUM: ThetaPoint = ThetaPoint {
        theta1: 0.0,
        theta2: 0.5,
    };
}

/// Comb label reduced mod N; `Φ_{m+N} = Φ_m`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct CombIndex(usize);

impl CombIndex {
    pub fn new(m: i64, dim: usize) -> Self {
        Self(m.rem_euclid(dim as i64) as usize)
    }

    pub fn get(self) -> usize {
        self.0
    }
}

/// `e^{2πik/n}`, exact at quarter turns.
pub fn root_of_unity(k: i64, n: usize) -> Complex64 {
    let n_i = n as i64;
    let k = k.rem_euclid(n_i);
    if (4 * k) % n_i == 0 {
        return match 4 * k / n_i {
            0 => Complex64::new(1.0, 0.0),
            1 => Complex64::new(0.0, 1.0),
            2 => Complex64::new(-1.0, 0.0),
            _ => Complex64::new(0.0, -1.0),
        };
    }
    Complex64::from_polar(1.0, 2.0 * PI * k as f64 / n as f64)
}

/// Unitary DFT matrix `A_{mn} = e^{−2πimn/d}/√d`.
pub fn dft(dim: usize) -> Result<ComplexMatrix> {
    if dim == 0 {
        return Err(BakerError::ZeroDimension);
    }
    let norm = 1.0 / (dim as f64).sqrt();
    Ok(ComplexMatrix::from_fn(dim, |m, n| {
        root_of_unity(-((m * n) as i64), dim) * norm
    }))
}

/// Inverse DFT, taken as the adjoint rather than by inversion.
pub fn inverse_dft(dim: usize) -> Result<ComplexMatrix> {
    Ok(dft(dim)?.adjoint())
}

/// `Z = diag(e^{iπn/N})`.
pub fn z_matrix(n: PlanckN) -> ComplexMatrix {
    let dim = n.get();
    let diag: Vec<_> = (0..dim).map(|k| root_of_unity(k as i64, 2 * dim)).collect();
    ComplexMatrix::diagonal(&diag)
}

/// Clock matrix `U = diag(e^{2πim/N})`, the action of `e^{2πix̂}` on combs.
pub fn u_matrix(n: PlanckN) -> ComplexMatrix {
    let dim = n.get();
    let diag: Vec<_> = (0..dim).map(|m| root_of_unity(m as i64, dim)).collect();
    ComplexMatrix::diagonal(&diag)
}

/// Cyclic shift `V Φ_m = Φ_{m+1 mod N}`.
pub fn v_matrix(n: PlanckN) -> ComplexMatrix {
    shift_matrix(n.get(), 1)
}

fn shift_matrix(dim: usize, by: i64) -> ComplexMatrix {
    let mut out = ComplexMatrix::zeros(dim);
    for m in 0..dim {
        let to = CombIndex::new(m as i64 + by, dim).get();
        out[(to, m)] = Complex64::new(1.0, 0.0);
    }
    out
}

/// `U^a V^b` with both exponents reduced mod N (`U^N = V^N = I` on the
/// periodic sector).
pub fn harmonic(n: PlanckN, a: i64, b: i64) -> ComplexMatrix {
    let dim = n.get();
    let a = a.rem_euclid(dim as i64);
    let b = b.rem_euclid(dim as i64);
    // (U^a V^b)_{m+b, m} = e^{2πia(m+b)/N}
    let mut out = ComplexMatrix::zeros(dim);
    for m in 0..dim {
        let to = (m + b as usize) % dim;
        out[(to, m)] = root_of_unity(a * to as i64, dim);
    }
    out
}

/// `e^{2πip̂}` on the periodic sector: translation by `h` in position,
/// which moves `Φ_m` to `Φ_{m−1}`. Equal to `V⁻¹`.
pub fn momentum_translation(n: PlanckN) -> ComplexMatrix {
    shift_matrix(n.get(), -1)
}

/// Quantization of the torus harmonic `e^{2πi(ax+bp)}` as
/// `e^{2πiax̂} e^{2πibp̂} = U^a V^{−b}`.
pub fn quantized_harmonic(n: PlanckN, a: i64, b: i64) -> ComplexMatrix {
    harmonic(n, a, -b)
}

/// Parity `Φ_m → Φ_{N−m mod N}`.
pub fn parity_matrix(n: PlanckN) -> ComplexMatrix {
    let dim = n.get();
    let mut out = ComplexMatrix::zeros(dim);
    for m in 0..dim {
        out[(CombIndex::new(-(m as i64), dim).get(), m)] = Complex64::new(1.0, 0.0);
    }
    out
}

/// Matrix of `Ω M Ω` for the antilinear time reversal `Ω` with
/// `Ω Φ_m = Σ_n (A⁻¹)_{mn} Φ_n`, `A = dft(N)`. Evaluates to
/// `A⁻¹ · conj(M) · A`.
pub fn time_reversal_image(m: &ComplexMatrix) -> Result<ComplexMatrix> {
    let dim = m.dim();
    let a = dft(dim)?;
    let a_inv = a.adjoint();
    Ok(&(&a_inv * &m.conj()) * &a)
}

/// `(1/√2)[[1, 1], [1, −1]]`, handy as a reference value in tests.
pub fn hadamard() -> ComplexMatrix {
    let s = Complex64::new(FRAC_1_SQRT_2, 0.0);
    ComplexMatrix::from_fn(2, |r, c| if r == 1 && c == 1 { -s } else { s })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn n(k: usize) -> PlanckN {
        PlanckN::new(k).unwrap()
    }

    fn c(re: f64, im: f64) -> Complex64 {
        Complex64::new(re, im)
    }

    #[test]
    fn planck_n_rejects_odd_and_small() {
        assert!(matches!(PlanckN::new(3), Err(BakerError::OddDimension(3))));
        assert!(PlanckN::new(0).is_err());
        assert!(PlanckN::new(1).is_err());
        let p = n(8);
        assert_eq!(p.h(), 0.125);
        assert!((2.0 * PI * p.hbar() - p.h()).abs() <= f64::EPSILON * p.h());
    }

    #[test]
    fn comb_index_is_periodic() {
        assert_eq!(CombIndex::new(9, 8).get(), 1);
        assert_eq!(CombIndex::new(-1, 8).get(), 7);
        assert_eq!(CombIndex::new(3 + 8 * 5, 8), CombIndex::new(3, 8));
    }

    #[test]
    fn dft_small_cases() {
        assert_eq!(dft(1).unwrap(), ComplexMatrix::identity(1));
        assert!(dft(2).unwrap().max_abs_diff(&hadamard()).unwrap() < 1e-15);
        assert!(dft(8).unwrap().unitarity_residual() < 1e-13);
        assert!(matches!(dft(0), Err(BakerError::ZeroDimension)));
    }

    #[test]
    fn dft_unitary_up_to_64() {
        for d in 1..=64 {
            assert!(dft(d).unwrap().unitarity_residual() < 1e-12, "d = {d}");
        }
    }

    #[test]
    fn z_matrix_entries() {
        let z2 = z_matrix(n(2));
        assert_eq!(z2, ComplexMatrix::diagonal(&[c(1.0, 0.0), c(0.0, 1.0)]));
        let z4 = z_matrix(n(4));
        for k in 0..4 {
            let want = Complex64::from_polar(1.0, PI * k as f64 / 4.0);
            assert!((z4[(k, k)] - want).norm() < 1e-15);
        }
        for dim in [2, 4, 6, 16] {
            let z = z_matrix(n(dim));
            let power = z.pow_unitary(2 * dim as i64);
            assert!(power.max_abs_diff(&ComplexMatrix::identity(dim)).unwrap() < 1e-12);
        }
    }

    #[test]
    fn weyl_pair_small_cases() {
        assert_eq!(
            u_matrix(n(2)),
            ComplexMatrix::diagonal(&[c(1.0, 0.0), c(-1.0, 0.0)])
        );
        let swap = ComplexMatrix::from_fn(2, |r, k| c((r != k) as u8 as f64, 0.0));
        assert_eq!(v_matrix(n(2)), swap);
        let (u, v) = (u_matrix(n(4)), v_matrix(n(4)));
        let lhs = &u * &v;
        let rhs = (&v * &u).scale(root_of_unity(1, 4));
        assert!(lhs.max_abs_diff(&rhs).unwrap() < 1e-14);
    }

    #[test]
    fn momentum_translation_has_opposite_weyl_phase() {
        let (u, t) = (u_matrix(n(8)), momentum_translation(n(8)));
        let lhs = &u * &t;
        let rhs = (&t * &u).scale(root_of_unity(-1, 8));
        assert!(lhs.max_abs_diff(&rhs).unwrap() < 1e-14);
        assert_eq!(t, v_matrix(n(8)).adjoint());
    }

    #[test]
    fn harmonic_examples() {
        assert_eq!(harmonic(n(6), 0, 0), ComplexMatrix::identity(6));
        for (a, b) in [(1, 2), (3, -1), (-2, 5)] {
            assert_eq!(harmonic(n(6), a + 6, b), harmonic(n(6), a, b));
            assert_eq!(harmonic(n(6), a, b - 12), harmonic(n(6), a, b));
        }
        let uv = ComplexMatrix::from_fn(2, |r, k| match (r, k) {
            (0, 1) => c(1.0, 0.0),
            (1, 0) => c(-1.0, 0.0),
            _ => c(0.0, 0.0),
        });
        assert_eq!(harmonic(n(2), 1, 1), uv);
    }

    #[test]
    fn harmonic_matches_matrix_powers() {
        let dim = n(8);
        let (u, v) = (u_matrix(dim), v_matrix(dim));
        for (a, b) in [(1, 0), (0, 3), (2, 5), (-1, -2), (9, 11)] {
            let direct = &u.pow_unitary(a) * &v.pow_unitary(b);
            assert!(harmonic(dim, a, b).max_abs_diff(&direct).unwrap() < 1e-12);
        }
    }

    #[test]
    fn parity_examples() {
        assert_eq!(parity_matrix(n(2)), ComplexMatrix::identity(2));
        let p4 = parity_matrix(n(4));
        assert_eq!(p4[(0, 0)], c(1.0, 0.0));
        assert_eq!(p4[(2, 2)], c(1.0, 0.0));
        assert_eq!(p4[(3, 1)], c(1.0, 0.0));
        assert_eq!(p4[(1, 3)], c(1.0, 0.0));
        let lhs = &(&p4 * &harmonic(n(4), 1, 2)) * &p4;
        assert!(lhs.max_abs_diff(&harmonic(n(4), -1, -2)).unwrap() < 1e-15);
    }

    #[test]
    fn parity_is_real_orthogonal_involution() {
        for dim in [2, 4, 10, 32] {
            let p = parity_matrix(n(dim));
            assert_eq!(&p * &p, ComplexMatrix::identity(dim));
            assert_eq!(p.adjoint(), p);
            assert!(p.as_slice().iter().all(|z| z.im == 0.0));
        }
    }

    #[test]
    fn time_reversal_is_antilinear() {
        let id = ComplexMatrix::identity(4);
        assert!(time_reversal_image(&id).unwrap().max_abs_diff(&id).unwrap() < 1e-15);
        let z = c(0.3, -1.7);
        let img = time_reversal_image(&id.scale(z)).unwrap();
        assert!(img.max_abs_diff(&id.scale(z.conj())).unwrap() < 1e-14);
    }

    #[test]
    fn time_reversal_swaps_weyl_generators() {
        // With V the forward shift, Ω U Ω = V and Ω V Ω = U; written with
        // the momentum translation T = V⁻¹ these are Ω U Ω = T⁻¹ and
        // Ω T Ω = U⁻¹.
        let dim = n(4);
        let (u, v, t) = (u_matrix(dim), v_matrix(dim), momentum_translation(dim));
        let omega_u = time_reversal_image(&u).unwrap();
        let omega_v = time_reversal_image(&v).unwrap();
        let omega_t = time_reversal_image(&t).unwrap();
        assert!(omega_u.max_abs_diff(&v).unwrap() < 1e-13);
        assert!(omega_v.max_abs_diff(&u).unwrap() < 1e-13);
        assert!(omega_u.max_abs_diff(&t.adjoint()).unwrap() < 1e-13);
        assert!(omega_t.max_abs_diff(&u.adjoint()).unwrap() < 1e-13);
    }

    #[test]
    fn dft_diagonalizes_shift() {
        for dim in [4, 8, 16] {
            let a = dft(dim).unwrap();
            let d = &(&a.adjoint() * &v_matrix(n(dim))) * &a;
            let off: f64 = (0..dim)
                .flat_map(|r| (0..dim).map(move |k| (r, k)))
                .filter(|(r, k)| r != k)
                .map(|rc| d[rc].norm())
                .fold(0.0, f64::max);
            assert!(off < 1e-13, "dim = {dim}: off-diagonal {off:e}");
        }
    }
}
