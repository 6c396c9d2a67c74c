//! Quantum baker propagators on the periodic sector `θ = (0, 0)`.
//!
//! Two matrices are built for even `N`:
//!
//! * the corrected propagator `Z · A_N⁻¹ · blockdiag(A_{N/2}, −A_{N/2}) · Z⁻²`,
//! * the Balazs–Voros matrix `A_N⁻¹ · blockdiag(A_{N/2}, A_{N/2})`,
//!
//! where `A_d` is [`dft`] and `Z` is [`z_matrix`]. Rows with even `n` agree
//! exactly. Odd rows differ by the phase `e^{iπζ/N}` (see [`zeta`]).
//! That phase is what restores parity symmetry in the corrected matrix.

use std::f64::consts::PI;
use std::fmt;
use std::str::FromStr;

use nalgebra::DMatrix;
use num_complex::Complex64;

use crate::error::{BakerError, Result};
use crate::kinematics::{dft, inverse_dft, root_of_unity, z_matrix, PlanckN};
use crate::matrix::ComplexMatrix;

pub use crate::pipeline::{build_via_pipeline, PipelineState};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum PropagatorVariant {
    Corrected,
    BalazsVoros,
}

impl PropagatorVariant {
    pub const ALL: [PropagatorVariant; 2] =
        [PropagatorVariant::Corrected, PropagatorVariant::BalazsVoros];

    pub fn as_str(self) -> &'static str {
        match self {
            PropagatorVariant::Corrected => "corrected",
            PropagatorVariant::BalazsVoros => "bv",
        }
    }

    pub fn build(self, n: PlanckN) -> ComplexMatrix {
        match self {
            PropagatorVariant::Corrected => build_corrected(n),
            PropagatorVariant::BalazsVoros => build_bv(n),
        }
    }
}

impl fmt::Display for PropagatorVariant {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

impl FromStr for PropagatorVariant {
    type Err = BakerError;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "corrected" => Ok(PropagatorVariant::Corrected),
            "bv" | "balazs-voros" => Ok(PropagatorVariant::BalazsVoros),
            other => Err(BakerError::InvalidArgument(format!(
                "unknown propagator variant '{other}' (expected 'corrected' or 'bv')"
            ))),
        }
    }
}

fn half_blocks(n: PlanckN, lower_sign: f64) -> ComplexMatrix {
    let half = dft(n.half()).expect("N/2 >= 1");
    let lower = half.scale(Complex64::new(lower_sign, 0.0));
    ComplexMatrix::block_diag(&half, &lower)
}

pub fn build_bv(n: PlanckN) -> ComplexMatrix {
    let a_inv = inverse_dft(n.get()).expect("N >= 2");
    &a_inv * &half_blocks(n, 1.0)
}

pub fn build_corrected(n: PlanckN) -> ComplexMatrix {
    let z = z_matrix(n);
    let z_inv_sq = z.pow_unitary(-2);
    let a_inv = inverse_dft(n.get()).expect("N >= 2");
    let inner = &(&a_inv * &half_blocks(n, -1.0)) * &z_inv_sq;
    &z * &inner
}

/// Prefactor of the odd-row closed form. Matching against
/// [`build_corrected`] fixes it to `√2/N`.
pub fn closed_form_prefactor(n: PlanckN) -> f64 {
    2f64.sqrt() / n.get() as f64
}

/// Odd-row entry `e^{iπ(n−2m)/N} · (√2/N) · (1 + i cot(π(n−2m)/N))` of the
/// corrected propagator. Valid for every column; the sign of the lower
/// block is carried by the exponential.
pub fn closed_form_entry(n: PlanckN, row: i64, col: i64) -> Result<Complex64> {
    if row.rem_euclid(2) == 0 {
        return Err(BakerError::EvenRow(row));
    }
    let dim = n.get() as i64;
    let diff = row - 2 * col;
    if diff.rem_euclid(dim) == 0 {
        return Err(BakerError::CotangentPole {
            dim: n.get(),
            n: row,
            m: col,
        });
    }
    let angle = PI * diff as f64 / dim as f64;
    let bracket = Complex64::new(1.0, 1.0 / angle.tan());
    Ok(Complex64::from_polar(closed_form_prefactor(n), angle) * bracket)
}

/// `ζ = n − 2m` for `m < N/2` and `n − 2(m − N/2)` otherwise.
pub fn zeta(n: PlanckN, row: usize, col: usize) -> i64 {
    let (row, col) = (row as i64, col as i64);
    if (col as usize) < n.half() {
        row - 2 * col
    } else {
        row - 2 * (col - n.half() as i64)
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct OddEntry {
    pub n: usize,
    pub m: usize,
    pub zeta: i64,
    pub phase_residual: f64,
}

#[derive(Debug, Clone, PartialEq)]
pub struct VariantComparison {
    pub n_even_residual: f64,
    pub odd_entries: Vec<OddEntry>,
}

impl VariantComparison {
    pub fn max_phase_residual(&self) -> f64 {
        self.odd_entries
            .iter()
            .map(|e| e.phase_residual)
            .fold(0.0, f64::max)
    }
}

/// Entrywise relation between the two variants. Odd rows are checked
/// against `corrected = e^{iπζ/N} · bv`; the block-wise definition of `ζ`
/// already carries the sign of the lower block.
pub fn compare_variants(n: PlanckN) -> VariantComparison {
    let dim = n.get();
    let ours = build_corrected(n);
    let bv = build_bv(n);
    let mut n_even_residual: f64 = 0.0;
    let mut odd_entries = Vec::with_capacity(dim * dim / 2);
    for row in 0..dim {
        for col in 0..dim {
            let (a, b) = (ours[(row, col)], bv[(row, col)]);
            if row % 2 == 0 {
                n_even_residual = n_even_residual.max((a - b).norm());
                continue;
            }
            let z = zeta(n, row, col);
            let predicted = root_of_unity(z, 2 * dim) * b;
            odd_entries.push(OddEntry {
                n: row,
                m: col,
                zeta: z,
                phase_residual: (a - predicted).norm(),
            });
        }
    }
    VariantComparison {
        n_even_residual,
        odd_entries,
    }
}

/// Corrected-propagator entry for arbitrary integer indices, using the
/// periodic phase `Z_{nn} = e^{iπ(n/N − ⌊n/N⌋)}`.
pub fn extended_entry(n: PlanckN, row: i64, col: i64) -> Complex64 {
    let dim = n.get() as i64;
    let half = n.half() as i64;
    let z_phase = |k: i64| -> Complex64 {
        let frac = k as f64 / dim as f64 - (k as f64 / dim as f64).floor();
        Complex64::from_polar(1.0, PI * frac)
    };
    let col_r = col.rem_euclid(dim);
    let (block_sign, a_range) = if col_r < half {
        (1.0, 0..half)
    } else {
        (-1.0, half..dim)
    };
    let norm = 1.0 / ((dim as f64).sqrt() * (half as f64).sqrt());
    let sum: Complex64 = a_range
        .map(|a| {
            // (A_N⁻¹)_{row,a} · (A_{N/2})_{a mod N/2, col mod N/2}
            root_of_unity(row * a, dim as usize)
                * root_of_unity(
                    -(a.rem_euclid(half) * col_r.rem_euclid(half)),
                    half as usize,
                )
        })
        .sum();
    let z_col = z_phase(col);
    z_phase(row) * sum * norm * block_sign / (z_col * z_col)
}

/// Largest `|ζ|/N` among odd-row entries whose modulus exceeds
/// `1/√(2N)`, with `ζ` reduced into `[−N/2, N/2)`. The reduction drops the
/// sign `e^{iπ} = −1` picked up by entries that straddle the `x = 0 ≡ 1`
/// seam, leaving the genuine phase discrepancy.
pub fn large_entry_phase_spread(n: PlanckN) -> f64 {
    let dim = n.get() as i64;
    let threshold = 1.0 / (2.0 * dim as f64).sqrt();
    let bv = build_bv(n);
    compare_variants(n)
        .odd_entries
        .iter()
        .filter(|e| bv[(e.n, e.m)].norm() > threshold)
        .map(|e| {
            let reduced = (e.zeta + dim / 2).rem_euclid(dim) - dim / 2;
            reduced.unsigned_abs() as f64 / dim as f64
        })
        .fold(0.0, f64::max)
}

/// Tolerance for the unitarity precondition of [`spectrum`].
pub const SPECTRUM_UNITARITY_TOL: f64 = 1e-8;
/// Phases within this distance of `2π` are reported as `0`.
pub const PHASE_SNAP_TOL: f64 = 1e-10;

/// Eigenphases of a unitary matrix in `[0, 2π)`, ascending.
pub fn spectrum(m: &ComplexMatrix) -> Result<Vec<f64>> {
    let residual = m.unitarity_residual();
    if residual.is_nan() || residual > SPECTRUM_UNITARITY_TOL {
        return Err(BakerError::NotUnitary { residual });
    }
    let dim = m.dim();
    let dense = DMatrix::from_row_slice(dim, dim, m.as_slice());
    let eigenvalues = nalgebra::Schur::new(dense)
        .eigenvalues()
        .ok_or(BakerError::NotUnitary { residual })?;
    let mut phases: Vec<(f64, usize)> = eigenvalues
        .iter()
        .enumerate()
        .map(|(i, z)| {
            let mut phase = z.arg().rem_euclid(2.0 * PI);
            if 2.0 * PI - phase < PHASE_SNAP_TOL || phase < PHASE_SNAP_TOL {
                phase = 0.0;
            }
            (phase, i)
        })
        .collect();
    phases.sort_by(|a, b| a.0.total_cmp(&b.0).then(a.1.cmp(&b.1)));
    Ok(phases.into_iter().map(|(p, _)| p).collect())
}

/// Eigenvalues of a unitary matrix, in the order [`spectrum`] would sort
/// their phases.
pub fn eigenvalues(m: &ComplexMatrix) -> Result<Vec<Complex64>> {
    let residual = m.unitarity_residual();
    if residual.is_nan() || residual > SPECTRUM_UNITARITY_TOL {
        return Err(BakerError::NotUnitary { residual });
    }
    let dim = m.dim();
    let dense = DMatrix::from_row_slice(dim, dim, m.as_slice());
    let mut values: Vec<Complex64> = nalgebra::Schur::new(dense)
        .eigenvalues()
        .ok_or(BakerError::NotUnitary { residual })?
        .iter()
        .copied()
        .collect();
    values.sort_by(|a, b| {
        a.arg()
            .rem_euclid(2.0 * PI)
            .total_cmp(&b.arg().rem_euclid(2.0 * PI))
    });
    Ok(values)
}
