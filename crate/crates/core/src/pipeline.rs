//! Operator-pipeline construction of the corrected propagator.
//!
//! Each periodic comb `Φ_m = Φ_m^{(0,0)}` is pushed through the factored
//! propagator `(E_x + X^{−1/2} O_x)(B + Y^{−1} T) S` using only the explicit
//! action of each factor on δ-combs. The intermediate states live on the
//! doubled basis `{Φ_j^{(0,0)}} ∪ {Φ_j^{(0,1/2)}}`, since stretching by two
//! splits a periodic comb into its even and odd teeth. The result must
//! land back in the periodic sector and reproduce
//! [`build_corrected`](crate::propagator::build_corrected) without ever
//! forming that product of matrices.

use std::f64::consts::FRAC_1_SQRT_2;

use num_complex::Complex64;

use crate::error::{BakerError, Result};
use crate::kinematics::{dft, root_of_unity, PlanckN};
use crate::matrix::ComplexMatrix;

/// Coefficients on `Φ_j^{(0,0)}` (`periodic`) and `Φ_j^{(0,1/2)}` (`half`),
/// `j = 0..N−1`.
#[derive(Debug, Clone, PartialEq)]
pub struct PipelineState {
    pub periodic: Vec<Complex64>,
    pub half: Vec<Complex64>,
}

impl PipelineState {
    pub fn zeros(dim: usize) -> Self {
        let z = Complex64::new(0.0, 0.0);
        Self {
            periodic: vec![z; dim],
            half: vec![z; dim],
        }
    }

    /// The periodic basis comb `Φ_m^{(0,0)}`.
    pub fn basis(n: PlanckN, m: usize) -> Self {
        let mut s = Self::zeros(n.get());
        s.periodic[m % n.get()] = Complex64::new(1.0, 0.0);
        s
    }

    pub fn dim(&self) -> usize {
        self.periodic.len()
    }

    pub fn norm_sqr(&self) -> f64 {
        self.periodic
            .iter()
            .chain(&self.half)
            .map(|z| z.norm_sqr())
            .sum()
    }

    pub fn half_sector_max(&self) -> f64 {
        self.half.iter().map(|z| z.norm()).fold(0.0, f64::max)
    }

    fn check(&self, n: PlanckN) -> Result<()> {
        if self.dim() != n.get() || self.half.len() != n.get() {
            return Err(BakerError::DimensionMismatch {
                expected: n.get(),
                actual: self.dim(),
            });
        }
        Ok(())
    }
}

/// Stretch `S` (x → 2x) on a periodic-sector vector.
///
/// For `m < N/2`, `SΦ_m = √(2/N) Σ_k |2m/N + 2k⟩`: the even teeth of the
/// comb at `j = 2m`, i.e. `(Φ_j^{(0,0)} + e^{−iπj/N} Φ_j^{(0,1/2)})/√2`.
/// For `m ≥ N/2`, `SΦ_m = √(2/N) Σ_k |j/N + 2k + 1⟩` with `j = 2m − N`: the
/// odd teeth, `(Φ_j^{(0,0)} − e^{−iπj/N} Φ_j^{(0,1/2)})/√2`.
pub fn stretch(n: PlanckN, periodic: &[Complex64]) -> Result<PipelineState> {
    let dim = n.get();
    if periodic.len() != dim {
        return Err(BakerError::DimensionMismatch {
            expected: dim,
            actual: periodic.len(),
        });
    }
    let mut out = PipelineState::zeros(dim);
    for (m, &c) in periodic.iter().enumerate() {
        let (j, tooth_sign) = if m < n.half() {
            (2 * m, 1.0)
        } else {
            (2 * m - dim, -1.0)
        };
        let phase = root_of_unity(-(j as i64), 2 * dim);
        out.periodic[j] += c * FRAC_1_SQRT_2;
        out.half[j] += c * phase * (tooth_sign * FRAC_1_SQRT_2);
    }
    Ok(out)
}

/// `B + Y⁻¹T`. `Y = e^{2πiθ₂}` on each sector, so this is `B + T = I` on
/// the periodic sector and `B − T` on the half sector. There `B − T` is
/// diagonal on the momentum combs `Φ̃_a^{(0,1/2)}`, sign `+` for
/// `a < N/2`; combs change basis through `Φ_j = Σ_a A_{ja} Φ̃_a`.
pub fn momentum_split(n: PlanckN, state: &PipelineState) -> Result<PipelineState> {
    state.check(n)?;
    let dim = n.get();
    let a = dft(dim)?;
    let momentum = a.apply(&state.half)?;
    let signed: Vec<Complex64> = momentum
        .iter()
        .enumerate()
        .map(|(k, &z)| if k < n.half() { z } else { -z })
        .collect();
    let half = a.adjoint().apply(&signed)?;
    Ok(PipelineState {
        periodic: state.periodic.clone(),
        half,
    })
}

/// `E_x + X^{−1/2} O_x`. `X^{−1/2} = e^{−iπNx̂}` is `(−1)^j` on both
/// sectors, so even `j` sees `E_x + O_x = I` and odd `j` sees `E_x − O_x`,
/// which swaps sectors:
/// `(E_x − O_x)Φ_j^{(0,1/2)} = e^{iπj/N} Φ_j^{(0,0)}` and
/// `(E_x − O_x)Φ_j^{(0,0)} = e^{−iπj/N} Φ_j^{(0,1/2)}`.
pub fn position_split(n: PlanckN, state: &PipelineState) -> Result<PipelineState> {
    state.check(n)?;
    let dim = n.get();
    let mut out = PipelineState::zeros(dim);
    for j in 0..dim {
        if j % 2 == 0 {
            out.periodic[j] += state.periodic[j];
            out.half[j] += state.half[j];
        } else {
            let phase = root_of_unity(j as i64, 2 * dim);
            out.periodic[j] += phase * state.half[j];
            out.half[j] += phase.conj() * state.periodic[j];
        }
    }
    Ok(out)
}

/// Full pipeline applied to one periodic-sector vector.
pub fn propagate(n: PlanckN, periodic: &[Complex64]) -> Result<PipelineState> {
    let stretched = stretch(n, periodic)?;
    let split = momentum_split(n, &stretched)?;
    position_split(n, &split)
}

/// Propagator assembled column by column from the pipeline, plus the
/// largest coefficient left in the `(0, 1/2)` sector.
pub fn build_via_pipeline(n: PlanckN) -> (ComplexMatrix, f64) {
    let dim = n.get();
    let mut out = ComplexMatrix::zeros(dim);
    let mut residual: f64 = 0.0;
    for m in 0..dim {
        let input = PipelineState::basis(n, m);
        let image = propagate(n, &input.periodic).expect("dimensions fixed by n");
        residual = residual.max(image.half_sector_max());
        for (row, z) in image.periodic.iter().enumerate() {
            out[(row, m)] = *z;
        }
    }
    (out, residual)
}
