use std::io::Write;
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};
use serde::Serialize;

use conic_metrics::cones::Barrier;
use conic_metrics::conjugate::{conjugate_newton, DEFAULT_MAX_ITER};
use conic_metrics::experiments::{sdp_example, vinberg_experiment};
use conic_metrics::generate::{generate, ProblemKind};
use conic_metrics::io::{PairFile, ProblemFile};
use conic_metrics::ipm::{build_shadow, solve, SolveOptions, SolveStatus, UpdateForm};
use conic_metrics::metrics::{build_metric, certify_with, MetricKind, PairGeometry};
use conic_metrics::Error;

#[derive(Parser)]
#[command(name = "conic-metrics", version, about = "Primal-dual metrics and a predictor-corrector solver for conic programs")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Solve a problem file from its feasible start.
    Solve {
        path: PathBuf,
        #[arg(long)]
        eps: Option<f64>,
        /// Print one JSON trace record per iteration.
        #[arg(long)]
        trace: bool,
        /// Bisect for the longest predictor step.
        #[arg(long)]
        adaptive: bool,
        #[arg(long, value_enum, default_value = "two-step")]
        update: UpdateArg,
    },
    /// Build a metric for the pair in a pair file and print its certificate.
    CertifyMetric {
        path: PathBuf,
        #[arg(long, value_enum)]
        metric: MetricArg,
        #[arg(long, default_value_t = 1.237483)]
        eta: f64,
    },
    /// Evaluate the conjugate barrier at the dual point of a pair file.
    ConjugateEval {
        path: PathBuf,
        #[arg(long, default_value_t = 1e-12)]
        eps: f64,
    },
    #[command(subcommand)]
    Experiment(Experiment),
    /// Write a random feasible problem with a central start as JSON.
    Generate {
        #[arg(long, value_enum)]
        kind: KindArg,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(long)]
        output: Option<PathBuf>,
    },
}

#[derive(Subcommand)]
enum Experiment {
    /// Integral versus NT entry matrices on the diagonal SDP pair.
    SdpExample {
        #[arg(long, default_value_t = 0.01)]
        epsilon: f64,
        #[arg(long, default_value_t = 3)]
        n: usize,
    },
    /// Single-Hessian scaling conditions on the Vinberg cone.
    Vinberg {
        #[arg(long, value_delimiter = ',', default_values_t = vec![0.1, 0.05, 0.01])]
        epsilon: Vec<f64>,
    },
}

#[derive(Clone, Copy, ValueEnum)]
enum UpdateArg {
    TwoStep,
    Bfgs,
}

#[derive(Clone, Copy, ValueEnum)]
enum MetricArg {
    DualIntegral,
    PrimalIntegral,
    MidpointLowrank,
    Nt,
    ArithmeticMean,
    GeometricMean,
    HarmonicMean,
}

impl From<MetricArg> for MetricKind {
    fn from(m: MetricArg) -> Self {
        match m {
            MetricArg::DualIntegral => Self::DualIntegral,
            MetricArg::PrimalIntegral => Self::PrimalIntegral,
            MetricArg::MidpointLowrank => Self::MidpointLowrank,
            MetricArg::Nt => Self::Nt,
            MetricArg::ArithmeticMean => Self::ArithmeticMean,
            MetricArg::GeometricMean => Self::GeometricMean,
            MetricArg::HarmonicMean => Self::HarmonicMean,
        }
    }
}

#[derive(Clone, Copy, ValueEnum)]
enum KindArg {
    Lp,
    Socp,
    Sdp,
}

struct Failure {
    code: u8,
    message: String,
}

fn input(e: Error) -> Failure {
    Failure {
        code: 2,
        message: e.to_string(),
    }
}

fn abort(e: Error) -> Failure {
    Failure {
        code: 3,
        message: e.to_string(),
    }
}

/// Writes a line to stdout, exiting quietly if the reader has gone away.
fn emit(line: &str) {
    let mut out = std::io::stdout().lock();
    if writeln!(out, "{line}").is_err() {
        std::process::exit(0);
    }
}

fn print_json<T: Serialize>(value: &T) {
    emit(&serde_json::to_string_pretty(value).expect("reports serialize"));
}

fn run(command: Command) -> Result<(), Failure> {
    match command {
        Command::Solve {
            path,
            eps,
            trace,
            adaptive,
            update,
        } => {
            let file = ProblemFile::load(&path).map_err(input)?;
            let problem = file.problem().map_err(input)?;
            let (x, y, s) = file.start_vectors(&problem).map_err(input)?;
            build_shadow(&problem, &x, &y, &s).map_err(input)?;
            let mut options = SolveOptions::default();
            if let Some(o) = &file.options {
                o.apply(&mut options);
            }
            if let Some(eps) = eps {
                options.eps = eps;
            }
            options.trace |= trace;
            options.adaptive |= adaptive;
            options.update = match update {
                UpdateArg::TwoStep => UpdateForm::TwoStep,
                UpdateArg::Bfgs => UpdateForm::Bfgs,
            };
            let report = solve(&problem, &x, &y, &s, &options).map_err(abort)?;
            for record in &report.trace {
                emit(&serde_json::to_string(record).expect("trace records serialize"));
            }
            emit(&format!("status            {:?}", report.status));
            emit(&format!("primal objective  {:.12e}", report.primal_objective));
            emit(&format!("dual objective    {:.12e}", report.dual_objective));
            emit(&format!("gap               {:.6e}", report.gap));
            emit(&format!("iterations        {}", report.iterations));
            emit(&format!("start iterations  {}", report.start_iterations));
            emit(&format!(
                "max per halving   {} (bound {:.1})",
                report.max_halving_iterations(),
                report.halving_bound
            ));
            if report.status != SolveStatus::Converged {
                return Err(Failure {
                    code: 3,
                    message: "iteration limit reached".into(),
                });
            }
            Ok(())
        }
        Command::CertifyMetric { path, metric, eta } => {
            let file = PairFile::load(&path).map_err(input)?;
            let cone = file.cone().map_err(input)?;
            let x = file.x_vector().map_err(input)?;
            let s = file.s_vector();
            let geometry = PairGeometry::new(&cone.primal, &cone.dual, &x, &s).map_err(input)?;
            let m = build_metric(metric.into(), &cone, &geometry).map_err(|e| match e {
                Error::Unsupported(_) => input(e),
                other => abort(other),
            })?;
            print_json(&certify_with(&m, &geometry, eta).map_err(abort)?);
            Ok(())
        }
        Command::ConjugateEval { path, eps } => {
            let file = PairFile::load(&path).map_err(input)?;
            let cone = file.cone().map_err(input)?;
            let s = file.s_vector();
            if !cone.dual.is_interior(&s) {
                return Err(input(Error::Domain("s is not in the dual interior".into())));
            }
            let x0 = match &file.x {
                Some(_) => file.x_vector().map_err(input)?,
                None => conic_metrics::sampling::central_primal_guess(&cone, &s),
            };
            let r = conjugate_newton(&cone.primal, &s, &x0, eps, DEFAULT_MAX_ITER).map_err(abort)?;
            #[derive(Serialize)]
            struct Output {
                xhat: Vec<f64>,
                value: f64,
                residual_norm: f64,
                iterations: usize,
                converged: bool,
            }
            print_json(&Output {
                xhat: r.xhat.iter().copied().collect(),
                value: r.value,
                residual_norm: r.residual_norm,
                iterations: r.iterations,
                converged: r.converged,
            });
            if !r.converged {
                return Err(Failure {
                    code: 3,
                    message: "conjugate Newton did not converge".into(),
                });
            }
            Ok(())
        }
        Command::Experiment(Experiment::SdpExample { epsilon, n }) => {
            print_json(&sdp_example(epsilon, n).map_err(input)?);
            Ok(())
        }
        Command::Experiment(Experiment::Vinberg { epsilon }) => {
            let report = vinberg_experiment(&epsilon).map_err(|e| match e {
                Error::Invalid(_) => input(e),
                other => abort(other),
            })?;
            print_json(&report);
            Ok(())
        }
        Command::Generate { kind, seed, output } => {
            let kind = match kind {
                KindArg::Lp => ProblemKind::Lp,
                KindArg::Socp => ProblemKind::Socp,
                KindArg::Sdp => ProblemKind::Sdp,
            };
            let json = generate(kind, seed).map_err(abort)?.to_json();
            match output {
                Some(path) => std::fs::write(&path, json).map_err(|e| Failure {
                    code: 2,
                    message: format!("cannot write {}: {e}", path.display()),
                }),
                None => {
                    emit(&json);
                    Ok(())
                }
            }
        }
    }
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return ExitCode::from(if e.use_stderr() { 2 } else { 0 });
        }
    };
    match run(cli.command) {
        Ok(()) => ExitCode::SUCCESS,
        Err(f) => {
            eprintln!("error: {}", f.message);
            ExitCode::from(f.code)
        }
    }
}
