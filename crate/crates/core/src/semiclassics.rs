//! Coherent states and the `ħ → 0` harnesses.
//!
//! Continuum quantities (expectations, projector norms, the projector
//! non-commutativity overlap) use `L²(R)` with `p̂ = −iħ d/dx`, so that
//! `e^{2πibp̂}` translates wavefunctions by `2πbħ`. The discrete harness
//! projects packets onto the periodic δ-combs at `ħ = 1/(2πN)` and pushes
//! them through a finite propagator.

use std::f64::consts::{LN_2, PI};

use num_complex::Complex64;
use statrs::function::erf::erf;

use crate::classical::{
    on_forward_boundary, torus_baker, wrap, PlanePoint, RegionLabel, TorusPoint,
};
use crate::error::{BakerError, Result};
use crate::kinematics::{quantized_harmonic, PlanckN};
use crate::propagator::PropagatorVariant;
use crate::quadrature::integrate_pieces;

/// Absolute tolerance of the adaptive quadrature.
pub const QUAD_ABS_TOL: f64 = 1e-11;
const QUAD_MAX_INTERVALS: usize = 4000;
/// Half-width of the quadrature window, in units of `√ħ`.
const WINDOW_SQRT_HBAR: f64 = 12.0;
/// Lattice sums keep cells within this many `√ħ` of the packet centre;
/// `erfc(6) ≈ 2e−17` of the mass lies beyond.
const TAIL_SQRT_HBAR: f64 = 6.0;
/// Comb projection drops teeth where the Gaussian envelope is below this.
const COMB_TAIL: f64 = 1e-16;

/// Largest `|a|`, `|b|` accepted by [`expect_harmonic_continuum`].
pub const MAX_HARMONIC: i64 = 8;

/// Limit of `⟨ψ|L E_p|φ⟩` for the box states, as stated alongside the
/// odd-k overlap sum: `−i log 2 / π`.
pub const NONCOMMUTE_STATED_LIMIT: f64 = LN_2 / PI;

/// Limit actually reached by the odd-k overlap sum, `−i log 2 / (2π)`.
/// Only odd `k` contribute, so replacing the sums by integrals over `k`
/// carries a factor 1/2 relative to [`NONCOMMUTE_STATED_LIMIT`].
pub const NONCOMMUTE_SUM_LIMIT: f64 = LN_2 / (2.0 * PI);

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct CoherentStateParams {
    x0: f64,
    p0: f64,
    hbar: f64,
}

impl CoherentStateParams {
    pub fn new(x0: f64, p0: f64, hbar: f64) -> Result<Self> {
        if !x0.is_finite() || !p0.is_finite() {
            return Err(BakerError::NonFinite { x: x0, p: p0 });
        }
        if !(hbar > 0.0 && hbar.is_finite()) {
            return Err(BakerError::InvalidHbar(hbar));
        }
        Ok(Self { x0, p0, hbar })
    }

    /// Packet whose width matches the comb spacing, `ħ = 1/(2πN)`.
    pub fn on_lattice(x0: f64, p0: f64, n: PlanckN) -> Result<Self> {
        Self::new(x0, p0, n.hbar())
    }

    pub fn x0(&self) -> f64 {
        self.x0
    }

    pub fn p0(&self) -> f64 {
        self.p0
    }

    pub fn hbar(&self) -> f64 {
        self.hbar
    }

    fn peak(&self) -> f64 {
        (PI * self.hbar).powf(-0.25)
    }
}

/// `(πħ)^{−1/4} e^{−(x−x0)²/2ħ} e^{ip0x/ħ − ip0x0/2ħ}`.
pub fn coherent_wavefunction(params: &CoherentStateParams, x: f64) -> Complex64 {
    let CoherentStateParams { x0, p0, hbar } = *params;
    let envelope = params.peak() * (-(x - x0).powi(2) / (2.0 * hbar)).exp();
    Complex64::from_polar(envelope, p0 * (x - 0.5 * x0) / hbar)
}

/// Momentum-space wavefunction
/// `(πħ)^{−1/4} e^{−(p−p0)²/2ħ} e^{−ipx0/ħ + ip0x0/2ħ}`.
pub fn coherent_momentum_wavefunction(params: &CoherentStateParams, p: f64) -> Complex64 {
    let CoherentStateParams { x0, p0, hbar } = *params;
    let envelope = params.peak() * (-(p - p0).powi(2) / (2.0 * hbar)).exp();
    Complex64::from_polar(envelope, (-p * x0 + 0.5 * p0 * x0) / hbar)
}

fn window(center: f64, hbar: f64, pieces: usize) -> Vec<f64> {
    let w = WINDOW_SQRT_HBAR * hbar.sqrt();
    (0..=pieces)
        .map(|i| center - w + 2.0 * w * i as f64 / pieces as f64)
        .collect()
}

/// `∫ |φ(x)|² dx` by quadrature.
pub fn norm_sqr_by_quadrature(params: &CoherentStateParams) -> Result<f64> {
    let q = integrate_pieces(
        |x| Complex64::new(coherent_wavefunction(params, x).norm_sqr(), 0.0),
        &window(params.x0, params.hbar, 8),
        QUAD_ABS_TOL,
        QUAD_MAX_INTERVALS,
    )?;
    Ok(q.value.re)
}

/// `⟨φ|U^a V^b|φ⟩` in the continuum, `U = e^{2πix̂}`, `V = e^{2πip̂}`,
/// by adaptive quadrature of `∫ conj(φ(x)) e^{2πiax} φ(x + 2πbħ) dx`.
///
/// Completing the square gives the closed form
/// `e^{2πi(ax0+bp0)} e^{−π²ħ(a²+b²)} e^{−2π²iabħ}`, whose modulus never
/// exceeds one; the test suite uses it as an independent check.
pub fn expect_harmonic_continuum(
    params: &CoherentStateParams,
    a: i64,
    b: i64,
) -> Result<Complex64> {
    for k in [a, b] {
        if k.abs() > MAX_HARMONIC {
            return Err(BakerError::HarmonicOutOfRange(k));
        }
    }
    let shift = 2.0 * PI * b as f64 * params.hbar;
    let freq = 2.0 * PI * a as f64;
    let integrand = |x: f64| {
        coherent_wavefunction(params, x).conj()
            * Complex64::from_polar(1.0, freq * x)
            * coherent_wavefunction(params, x + shift)
    };
    let breaks = window(params.x0 - 0.5 * shift, params.hbar, 16);
    Ok(integrate_pieces(integrand, &breaks, QUAD_ABS_TOL, QUAD_MAX_INTERVALS)?.value)
}

/// Probability mass of `N(center, ħ/2)` on `[lo, hi)`.
fn gaussian_mass(center: f64, hbar: f64, lo: f64, hi: f64) -> f64 {
    let s = hbar.sqrt();
    0.5 * (erf((hi - center) / s) - erf((lo - center) / s))
}

/// `‖Π|φ⟩‖²` for the projector onto a region, summed cell by cell over the
/// region's coset. Momentum projectors act on the momentum-space packet.
pub fn projection_norm(params: &CoherentStateParams, region: RegionLabel) -> f64 {
    let center = if region.acts_on_momentum() {
        params.p0
    } else {
        params.x0
    };
    let (period, lo, hi) = region.coset();
    let reach = TAIL_SQRT_HBAR * params.hbar.sqrt();
    let first = ((center - reach - hi) / period).floor() as i64;
    let last = ((center + reach - lo) / period).ceil() as i64;
    (first..=last)
        .map(|k| {
            let shift = period * k as f64;
            gaussian_mass(center, params.hbar, lo + shift, hi + shift)
        })
        .sum()
}

/// Length of `[a0, a1) ∩ [b0, b1)`.
fn overlap(a0: f64, a1: f64, b0: f64, b1: f64) -> f64 {
    (a1.min(b1) - a0.max(b0)).max(0.0)
}

/// Smallest odd `k_max` with `πħ k_max > 1`.
pub fn minimal_k_max(hbar: f64) -> u64 {
    let k = ((1.0 / (PI * hbar)).floor() as u64).saturating_add(1);
    if k.is_multiple_of(2) {
        k + 1
    } else {
        k
    }
}

/// Matrix elements `(⟨ψ|L E_p|φ⟩, ⟨ψ|E_p L|φ⟩)` for the box states
/// `ψ = χ_{[0,1/2)}`, `φ = χ_{[1/2,1)}`.
///
/// Expanding `E_p = 1/2 − (i/π) Σ_{k odd} e^{iπkp̂}/k` turns the first into
/// `−(i/π) Σ_{k odd} (1/k) ∫_0^{1/2} χ_{[1/2,1)}(x + πħk) dx`. Terms with
/// `πħ|k| ≥ 1` or `k < 0` vanish, so the sum is exact once
/// `πħ k_max > 1`. The second vanishes identically because `Lφ = 0`.
pub fn noncommute_demo(hbar: f64, k_max: u64) -> Result<(Complex64, Complex64)> {
    if !(hbar > 0.0 && hbar.is_finite()) {
        return Err(BakerError::InvalidHbar(hbar));
    }
    if PI * hbar * k_max as f64 <= 1.0 {
        return Err(BakerError::InsufficientKMax { hbar, k_max });
    }
    let k_max = k_max as i64;
    let mut sum = 0.0;
    let mut k = -k_max + if k_max % 2 == 0 { 1 } else { 0 };
    while k <= k_max {
        let shift = PI * hbar * k as f64;
        let weight = overlap(0.0, 0.5, 0.5 - shift, 1.0 - shift);
        if weight > 0.0 {
            sum += weight / k as f64;
        }
        k += 2;
    }
    let le_p = Complex64::new(0.0, -sum / PI);
    // L φ: support of φ meets [0, 1/2) + Z in measure zero
    let l_phi = overlap(0.5, 1.0, 0.0, 0.5) + overlap(0.5, 1.0, 1.0, 1.5);
    let ep_l = Complex64::new(l_phi, 0.0);
    Ok((le_p, ep_l))
}

/// Coefficients of a coherent state on the periodic combs,
/// `c_m ∝ Σ_k φ(m/N + k)`, normalized to unit norm.
pub fn project_to_comb(
    params: &CoherentStateParams,
    n: PlanckN,
) -> Result<Vec<num_complex::Complex64>> {
    let expected = n.hbar();
    if (params.hbar - expected).abs() > 1e-12 * expected {
        return Err(BakerError::HbarMismatch {
            hbar: params.hbar,
            n: n.get(),
        });
    }
    let dim = n.get();
    let reach = (2.0 * params.hbar * (1.0 / COMB_TAIL).ln()).sqrt();
    let mut coeffs: Vec<Complex64> = (0..dim)
        .map(|m| {
            let base = m as f64 / dim as f64;
            let first = (params.x0 - reach - base).floor() as i64;
            let last = (params.x0 + reach - base).ceil() as i64;
            (first..=last)
                .map(|k| coherent_wavefunction(params, base + k as f64))
                .sum()
        })
        .collect();
    let norm = coeffs.iter().map(|z| z.norm_sqr()).sum::<f64>().sqrt();
    if !(norm > 0.0 && norm.is_finite()) {
        return Err(BakerError::ZeroNorm);
    }
    for z in &mut coeffs {
        *z /= norm;
    }
    Ok(coeffs)
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct LimitScanRow {
    pub n: usize,
    pub quantum_value: Complex64,
    pub classical_value: Complex64,
    pub abs_error: f64,
}

/// One-step weak-limit scan: compares `⟨ψ_N|F† Q(e^{2πi(ax+bp)}) F|ψ_N⟩`
/// with the harmonic evaluated at the classical image of `(x0, p0)`.
pub fn weak_limit_scan(
    x0: f64,
    p0: f64,
    a: i64,
    b: i64,
    n_list: &[usize],
    variant: PropagatorVariant,
) -> Result<Vec<LimitScanRow>> {
    weak_limit_scan_steps(x0, p0, a, b, n_list, variant, 1)
}

/// [`weak_limit_scan`] after `steps` applications of the propagator and of
/// the classical map. Packets spread as `2^steps`, so only small step
/// counts are meaningful at desk-scale `N`.
pub fn weak_limit_scan_steps(
    x0: f64,
    p0: f64,
    a: i64,
    b: i64,
    n_list: &[usize],
    variant: PropagatorVariant,
    steps: usize,
) -> Result<Vec<LimitScanRow>> {
    let start = PlanePoint::new(x0, p0)?;
    if on_forward_boundary(start) {
        return Err(BakerError::OnBoundary { x: x0, p: p0 });
    }
    if n_list.windows(2).any(|w| w[0] >= w[1]) {
        return Err(BakerError::InvalidArgument(
            "N list must be strictly ascending".into(),
        ));
    }
    let mut image = TorusPoint::wrapped(x0, p0)?;
    for _ in 0..steps {
        image = torus_baker(image);
    }
    let classical_value = Complex64::from_polar(
        1.0,
        2.0 * PI * (a as f64 * image.x() + b as f64 * image.p()),
    );
    n_list
        .iter()
        .map(|&dim| {
            let n = PlanckN::new(dim)?;
            let params = CoherentStateParams::on_lattice(wrap(x0, 1.0), wrap(p0, 1.0), n)?;
            let mut psi = project_to_comb(&params, n)?;
            let f = variant.build(n);
            for _ in 0..steps {
                psi = f.apply(&psi)?;
            }
            let observed = quantized_harmonic(n, a, b).apply(&psi)?;
            let quantum_value: Complex64 =
                psi.iter().zip(&observed).map(|(u, v)| u.conj() * v).sum();
            Ok(LimitScanRow {
                n: dim,
                quantum_value,
                classical_value,
                abs_error: (quantum_value - classical_value).norm(),
            })
        })
        .collect()
}
