//! `qbaker`: build, verify and probe the quantized baker's map from the
//! command line. Data goes to stdout (or `--out`), diagnostics to stderr.
//!
//! Exit codes: 0 success, 1 IO failure, 2 invalid arguments, 3 a
//! `verify` check failed.

mod format;
mod verify;

use std::fs::File;
use std::io::{self, BufWriter, Write};
use std::path::PathBuf;
use std::process::ExitCode;

use anyhow::Context;
use clap::{Args, Parser, Subcommand, ValueEnum};

use quantum_baker::classical::{cover_orbit, inverse_orbit, torus_orbit, PlanePoint, TorusPoint};
use quantum_baker::semiclassics::{
    expect_harmonic_continuum, minimal_k_max, noncommute_demo, weak_limit_scan_steps,
    CoherentStateParams, NONCOMMUTE_SUM_LIMIT,
};
use quantum_baker::{BakerError, PlanckN, PropagatorVariant};

use verify::Check;

#[derive(Parser)]
#[command(name = "qbaker", version, about = "Quantized baker's map toolkit")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Write the N×N propagator matrix.
    Propagator(PropagatorArgs),
    /// Run symmetry and identity checks, one JSON line per result.
    Verify(VerifyArgs),
    /// Iterate the classical map and print the orbit.
    Classical {
        #[arg(value_enum)]
        map: ClassicalMap,
        #[command(flatten)]
        args: OrbitArgs,
    },
    /// Semiclassical probes.
    #[command(subcommand)]
    Semiclassics(SemiclassicsCommand),
}

#[derive(Clone, Copy, ValueEnum)]
enum VariantArg {
    Corrected,
    Bv,
}

impl From<VariantArg> for PropagatorVariant {
    fn from(v: VariantArg) -> Self {
        match v {
            VariantArg::Corrected => PropagatorVariant::Corrected,
            VariantArg::Bv => PropagatorVariant::BalazsVoros,
        }
    }
}

#[derive(Clone, Copy, ValueEnum)]
enum VariantSelection {
    Corrected,
    Bv,
    Both,
}

impl VariantSelection {
    fn variants(self) -> Vec<PropagatorVariant> {
        match self {
            VariantSelection::Corrected => vec![PropagatorVariant::Corrected],
            VariantSelection::Bv => vec![PropagatorVariant::BalazsVoros],
            VariantSelection::Both => PropagatorVariant::ALL.to_vec(),
        }
    }
}

#[derive(Clone, Copy, ValueEnum)]
enum MatrixFormat {
    Json,
    Csv,
}

#[derive(Clone, Copy, ValueEnum)]
enum ClassicalMap {
    /// Baker's map on the unit torus.
    Map,
    /// Covering map on the plane.
    Cover,
    /// Inverse covering map.
    Inverse,
}

#[derive(Args)]
struct PropagatorArgs {
    #[arg(long)]
    n: usize,
    #[arg(long, value_enum, default_value = "corrected")]
    variant: VariantArg,
    #[arg(long, value_enum, default_value = "json")]
    format: MatrixFormat,
    /// Output file; stdout when omitted.
    #[arg(long)]
    out: Option<PathBuf>,
}

#[derive(Args)]
struct VerifyArgs {
    #[arg(long, value_delimiter = ',', default_value = "2,4,8,16,32,64")]
    n_list: Vec<usize>,
    #[arg(long, value_enum, default_value = "both")]
    variant: VariantSelection,
    #[arg(
        long,
        value_delimiter = ',',
        value_enum,
        default_value = "unitarity,parity,time-reversal,bv-phase,pipeline-oracle,weyl,center"
    )]
    checks: Vec<Check>,
}

#[derive(Args)]
struct OrbitArgs {
    #[arg(long, allow_hyphen_values = true)]
    x: f64,
    #[arg(long, allow_hyphen_values = true)]
    p: f64,
    #[arg(long, default_value_t = 1)]
    iters: usize,
}

#[derive(Subcommand)]
enum SemiclassicsCommand {
    /// Continuum expectation of e^{2πi(ax+bp)} in a coherent state.
    Expect {
        #[arg(long, allow_hyphen_values = true)]
        x0: f64,
        #[arg(long, allow_hyphen_values = true)]
        p0: f64,
        #[arg(long, allow_hyphen_values = true)]
        a: i64,
        #[arg(long, allow_hyphen_values = true)]
        b: i64,
        #[arg(long)]
        hbar: f64,
    },
    /// Quantum versus classical harmonic after evolving a packet.
    LimitScan {
        #[arg(long, allow_hyphen_values = true)]
        x0: f64,
        #[arg(long, allow_hyphen_values = true)]
        p0: f64,
        #[arg(long, allow_hyphen_values = true)]
        a: i64,
        #[arg(long, allow_hyphen_values = true)]
        b: i64,
        #[arg(long, value_delimiter = ',')]
        n_list: Vec<usize>,
        #[arg(long, value_enum, default_value = "corrected")]
        variant: VariantArg,
        #[arg(long, default_value_t = 1)]
        steps: usize,
    },
    /// Box-state overlap showing that position and momentum projectors
    /// fail to commute.
    Noncommute {
        #[arg(long, value_delimiter = ',')]
        hbar_list: Vec<f64>,
        /// Truncation of the odd-k sum; the smallest exact value by default.
        #[arg(long)]
        k_max: Option<u64>,
    },
}

enum Failure {
    Invalid(String),
    Io(anyhow::Error),
    ChecksFailed,
}

impl From<BakerError> for Failure {
    fn from(e: BakerError) -> Self {
        Failure::Invalid(e.to_string())
    }
}

impl From<io::Error> for Failure {
    fn from(e: io::Error) -> Self {
        Failure::Io(e.into())
    }
}

type Outcome = std::result::Result<(), Failure>;

fn main() -> ExitCode {
    let cli = Cli::parse();
    let stdout = io::stdout();
    let mut out = BufWriter::new(stdout.lock());
    let result = run(cli.command, &mut out).and_then(|()| out.flush().map_err(Failure::from));
    match result {
        Ok(()) => ExitCode::SUCCESS,
        Err(Failure::Invalid(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(2)
        }
        Err(Failure::Io(e)) => {
            eprintln!("error: {e:#}");
            ExitCode::from(1)
        }
        Err(Failure::ChecksFailed) => {
            let _ = out.flush();
            eprintln!("one or more checks failed");
            ExitCode::from(3)
        }
    }
}

fn run(command: Command, out: &mut impl Write) -> Outcome {
    match command {
        Command::Propagator(args) => propagator(args, out),
        Command::Verify(args) => {
            let dims = args
                .n_list
                .iter()
                .map(|&k| PlanckN::new(k))
                .collect::<Result<Vec<_>, _>>()?;
            if dims.is_empty() || args.checks.is_empty() {
                return Err(Failure::Invalid("empty N list or check list".into()));
            }
            let reports = verify::run(&dims, &args.variant.variants(), &args.checks)?;
            for r in &reports {
                serde_json::to_writer(&mut *out, r).map_err(|e| Failure::Io(e.into()))?;
                writeln!(out)?;
            }
            if reports.iter().all(|r| r.passed) {
                Ok(())
            } else {
                Err(Failure::ChecksFailed)
            }
        }
        Command::Classical { map, args } => classical(map, args, out),
        Command::Semiclassics(cmd) => semiclassics(cmd, out),
    }
}

fn propagator(args: PropagatorArgs, out: &mut impl Write) -> Outcome {
    let n = PlanckN::new(args.n)?;
    let variant = PropagatorVariant::from(args.variant);
    let f = variant.build(n);
    let text = match args.format {
        MatrixFormat::Json => format::matrix_json(&f, variant),
        MatrixFormat::Csv => format::matrix_csv(&f),
    };
    match args.out {
        Some(path) => {
            let write = || -> anyhow::Result<()> {
                let mut file = BufWriter::new(File::create(&path)?);
                file.write_all(text.as_bytes())?;
                file.flush()?;
                Ok(())
            };
            write()
                .with_context(|| format!("writing {}", path.display()))
                .map_err(Failure::Io)
        }
        None => Ok(out.write_all(text.as_bytes())?),
    }
}

fn classical(map: ClassicalMap, args: OrbitArgs, out: &mut impl Write) -> Outcome {
    let coords: Vec<(f64, f64)> = match map {
        ClassicalMap::Map => torus_orbit(TorusPoint::new(args.x, args.p)?, args.iters)
            .iter()
            .map(|q| (q.x(), q.p()))
            .collect(),
        ClassicalMap::Cover => cover_orbit(PlanePoint::new(args.x, args.p)?, args.iters)
            .iter()
            .map(|q| (q.x(), q.p()))
            .collect(),
        ClassicalMap::Inverse => inverse_orbit(PlanePoint::new(args.x, args.p)?, args.iters)
            .iter()
            .map(|q| (q.x(), q.p()))
            .collect(),
    };
    writeln!(out, "step,x,p")?;
    for (step, (x, p)) in coords.iter().enumerate() {
        writeln!(out, "{step},{x},{p}")?;
    }
    Ok(())
}

fn semiclassics(cmd: SemiclassicsCommand, out: &mut impl Write) -> Outcome {
    match cmd {
        SemiclassicsCommand::Expect { x0, p0, a, b, hbar } => {
            let params = CoherentStateParams::new(x0, p0, hbar)?;
            let v = expect_harmonic_continuum(&params, a, b)?;
            writeln!(out, "x0,p0,a,b,hbar,re,im")?;
            writeln!(out, "{x0},{p0},{a},{b},{hbar},{},{}", v.re, v.im)?;
        }
        SemiclassicsCommand::LimitScan {
            x0,
            p0,
            a,
            b,
            n_list,
            variant,
            steps,
        } => {
            if n_list.is_empty() {
                return Err(Failure::Invalid("--n-list is empty".into()));
            }
            if steps == 0 {
                return Err(Failure::Invalid("--steps must be at least 1".into()));
            }
            let rows = weak_limit_scan_steps(x0, p0, a, b, &n_list, variant.into(), steps)?;
            writeln!(out, "N,re_q,im_q,re_c,im_c,abs_error")?;
            for r in rows {
                writeln!(
                    out,
                    "{},{},{},{},{},{}",
                    r.n,
                    r.quantum_value.re,
                    r.quantum_value.im,
                    r.classical_value.re,
                    r.classical_value.im,
                    r.abs_error
                )?;
            }
        }
        SemiclassicsCommand::Noncommute { hbar_list, k_max } => {
            if hbar_list.is_empty() {
                return Err(Failure::Invalid("--hbar-list is empty".into()));
            }
            let mut hbars = hbar_list;
            hbars.sort_by(|a, b| b.total_cmp(a));
            hbars.dedup();
            let mut rows = Vec::with_capacity(hbars.len());
            for h in hbars {
                let (le_p, _) = noncommute_demo(h, k_max.unwrap_or_else(|| minimal_k_max(h)))?;
                let dev = (le_p.im + NONCOMMUTE_SUM_LIMIT).hypot(le_p.re);
                rows.push((h, le_p, dev));
            }
            writeln!(out, "hbar,re,im,abs_dev_from_limit")?;
            for (h, v, dev) in rows {
                writeln!(out, "{h},{},{},{dev}", v.re, v.im)?;
            }
        }
    }
    Ok(())
}
