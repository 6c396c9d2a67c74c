use std::collections::BTreeMap;

use clap::ValueEnum;
use serde::Serialize;
use serde_json::Value;

use quantum_baker::kinematics::{
    parity_matrix, root_of_unity, time_reversal_image, u_matrix, v_matrix,
};
use quantum_baker::propagator::{build_corrected, build_via_pipeline, compare_variants};
use quantum_baker::{ComplexMatrix, PlanckN, PropagatorVariant, Result};

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, ValueEnum)]
pub enum Check {
    Unitarity,
    Parity,
    TimeReversal,
    BvPhase,
    PipelineOracle,
    Weyl,
    Center,
}

impl Check {
    pub fn name(self) -> &'static str {
        match self {
            Check::Unitarity => "unitarity",
            Check::Parity => "parity",
            Check::TimeReversal => "time-reversal",
            Check::BvPhase => "bv-phase",
            Check::PipelineOracle => "pipeline-oracle",
            Check::Weyl => "weyl",
            Check::Center => "center",
        }
    }

    pub fn threshold(self) -> f64 {
        match self {
            Check::Unitarity => 1e-11,
            Check::Parity | Check::TimeReversal | Check::PipelineOracle => 1e-12,
            Check::BvPhase => 1e-10,
            Check::Weyl | Check::Center => 1e-13,
        }
    }

    /// Whether the check is evaluated per propagator variant.
    fn per_variant(self) -> bool {
        matches!(self, Check::Unitarity | Check::Parity | Check::TimeReversal)
    }
}

#[derive(Debug, Clone, Serialize)]
pub struct CheckReport {
    pub check_name: &'static str,
    pub residual: f64,
    pub threshold: f64,
    pub passed: bool,
    pub context: BTreeMap<&'static str, Value>,
}

fn report(check: Check, residual: f64, context: BTreeMap<&'static str, Value>) -> CheckReport {
    let threshold = check.threshold();
    CheckReport {
        check_name: check.name(),
        residual,
        threshold,
        passed: residual <= threshold,
        context,
    }
}

fn propagator_residual(check: Check, f: &ComplexMatrix, n: PlanckN) -> Result<f64> {
    match check {
        Check::Unitarity => Ok(f.unitarity_residual()),
        Check::Parity => {
            let p = parity_matrix(n);
            (&(&p * f) * &p).max_abs_diff(f)
        }
        Check::TimeReversal => time_reversal_image(f)?.max_abs_diff(&f.adjoint()),
        _ => unreachable!("not a per-variant check"),
    }
}

/// Residuals for checks that do not depend on the variant, plus any extra
/// context worth reporting.
fn shared_residual(check: Check, n: PlanckN) -> Result<(f64, BTreeMap<&'static str, Value>)> {
    let mut extra = BTreeMap::new();
    let dim = n.get();
    let residual = match check {
        Check::BvPhase => {
            let cmp = compare_variants(n);
            extra.insert("even_row_residual", Value::from(cmp.n_even_residual));
            extra.insert(
                "odd_row_phase_residual",
                Value::from(cmp.max_phase_residual()),
            );
            cmp.n_even_residual.max(cmp.max_phase_residual())
        }
        Check::PipelineOracle => {
            let (f, half) = build_via_pipeline(n);
            let diff = f.max_abs_diff(&build_corrected(n))?;
            extra.insert("matrix_residual", Value::from(diff));
            extra.insert("half_sector_residual", Value::from(half));
            diff.max(half)
        }
        Check::Weyl => {
            let (u, v) = (u_matrix(n), v_matrix(n));
            let vu = (&v * &u).scale(root_of_unity(1, dim));
            (&u * &v).max_abs_diff(&vu)?
        }
        Check::Center => {
            let id = ComplexMatrix::identity(dim);
            let un = u_matrix(n).pow_unitary(dim as i64).max_abs_diff(&id)?;
            let vn = v_matrix(n).pow_unitary(dim as i64).max_abs_diff(&id)?;
            un.max(vn)
        }
        _ => unreachable!("per-variant check"),
    };
    Ok((residual, extra))
}

/// Runs every requested check, sorted by (check name, N, variant).
pub fn run(
    dims: &[PlanckN],
    variants: &[PropagatorVariant],
    checks: &[Check],
) -> Result<Vec<CheckReport>> {
    let mut checks = checks.to_vec();
    checks.sort_by_key(|c| c.name());
    checks.dedup();
    let mut dims = dims.to_vec();
    dims.sort_by_key(|n| n.get());
    dims.dedup();
    let mut variants = variants.to_vec();
    variants.sort_by_key(|v| v.as_str());

    let mut reports = Vec::new();
    for &check in &checks {
        for &n in &dims {
            let mut context = BTreeMap::new();
            context.insert("N", Value::from(n.get()));
            if check.per_variant() {
                for &v in &variants {
                    let mut context = context.clone();
                    context.insert("variant", Value::from(v.as_str()));
                    let residual = propagator_residual(check, &v.build(n), n)?;
                    reports.push(report(check, residual, context));
                }
            } else {
                let (residual, extra) = shared_residual(check, n)?;
                context.extend(extra);
                reports.push(report(check, residual, context));
            }
        }
    }
    Ok(reports)
}
