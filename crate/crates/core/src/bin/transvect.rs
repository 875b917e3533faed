use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};

use transvect::cli::{self, CaseName, RunConfig};
use transvect::{io, CertificateReport, Error};

#[derive(Parser)]
#[command(
    name = "transvect",
    version,
    about = "Reduced symplectic symmetric spaces of Ricci type"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Build Ω, A and sample Σ_A; print the model descriptor.
    Construct(Common),
    /// Curvature, Ricci-type, Darboux and symmetry checks on sampled points.
    VerifyGeometry {
        #[command(flatten)]
        common: Common,
        /// Perturb Ω after construction (negative control).
        #[arg(long, hide = true)]
        corrupt_omega: bool,
    },
    /// Transvection algebra and its structural classification.
    Transvection(Common),
    /// Search for simply transitive subgroups and certify them.
    FindTransitive {
        #[command(flatten)]
        common: Common,
        /// Candidate file with keys B, c, a, a_tilde, b_tilde, c_tilde, epsilon.
        #[arg(long)]
        candidate_file: Option<PathBuf>,
        /// Torus angles for the elliptic twist (n - 1 values).
        #[arg(long, num_args = 1.., allow_negative_numbers = true)]
        theta: Option<Vec<f64>>,
    },
    /// Quaternion equivariance and orbit rank on TS³.
    QuaternionEvidence {
        #[command(flatten)]
        common: Common,
        /// Fixed vector w ∈ ℝ³.
        #[arg(long, num_args = 3, default_values_t = [1.0, 0.0, 0.0], allow_negative_numbers = true)]
        w: Vec<f64>,
        /// Number of random (q, x, y) triples.
        #[arg(long, default_value_t = 100)]
        triples: usize,
    },
}

#[derive(Clone, Copy, ValueEnum)]
enum CaseArg {
    Hyperbolic,
    Elliptic,
    Nilpotent,
}

#[derive(Args)]
struct Common {
    #[arg(long, value_enum, default_value = "hyperbolic")]
    case: CaseArg,
    #[arg(long, default_value_t = 2)]
    n: usize,
    #[arg(long, default_value_t = 1.0)]
    k: f64,
    #[arg(long)]
    p: Option<usize>,
    #[arg(long)]
    q: Option<usize>,
    #[arg(long, default_value_t = 0)]
    seed: u64,
    #[arg(long)]
    samples: Option<usize>,
    #[arg(long, default_value_t = 1e-5)]
    fd_step: f64,
    /// Algebraic tolerance; defaults to $TRANSVECT_TOL or 1e-9.
    #[arg(long)]
    tol: Option<f64>,
    #[arg(long, default_value_t = 1e-7)]
    tol_rank: f64,
    /// Cross-check dimensions in exact rational arithmetic.
    #[arg(long)]
    exact: bool,
    /// Also write the output to this file.
    #[arg(long)]
    out: Option<PathBuf>,
}

impl Common {
    fn config(&self, default_samples: usize) -> Result<RunConfig, Error> {
        let case = match self.case {
            CaseArg::Hyperbolic => CaseName::Hyperbolic,
            CaseArg::Elliptic => CaseName::Elliptic,
            CaseArg::Nilpotent => CaseName::Nilpotent,
        };
        let mut cfg = RunConfig::new(case, self.n);
        cfg.k = self.k;
        cfg.p = self.p;
        cfg.q = self.q;
        cfg.seed = self.seed;
        cfg.samples = self.samples.unwrap_or(default_samples);
        cfg.fd_step = self.fd_step;
        cfg.tol_algebraic = match self.tol {
            Some(t) => t,
            None => cli::default_tolerance()?,
        };
        cfg.tol_rank = self.tol_rank;
        cfg.exact = self.exact;
        cfg.validate()?;
        Ok(cfg)
    }
}

fn emit(text: &str, out: Option<&PathBuf>) -> Result<(), Error> {
    print!("{text}");
    if let Some(path) = out {
        std::fs::write(path, text)?;
    }
    Ok(())
}

fn finish(rep: CertificateReport, out: Option<&PathBuf>) -> Result<i32, Error> {
    emit(&rep.render(), out)?;
    Ok(cli::exit_code(rep.overall()))
}

fn run(command: Command) -> Result<i32, Error> {
    match command {
        Command::Construct(c) => {
            let cfg = c.config(10)?;
            emit(&cli::cmd_construct(&cfg)?, c.out.as_ref())?;
            Ok(0)
        }
        Command::VerifyGeometry {
            common,
            corrupt_omega,
        } => {
            let mut cfg = common.config(50)?;
            cfg.corrupt_omega = corrupt_omega;
            finish(cli::cmd_verify_geometry(&cfg)?, common.out.as_ref())
        }
        Command::Transvection(c) => {
            let cfg = c.config(1)?;
            finish(cli::cmd_transvection(&cfg)?, c.out.as_ref())
        }
        Command::FindTransitive {
            common,
            candidate_file,
            theta,
        } => {
            let cfg = common.config(100)?;
            let candidate = match candidate_file {
                Some(path) => Some(io::parse_candidate(&std::fs::read_to_string(path)?)?),
                None => None,
            };
            finish(
                cli::cmd_find_transitive(&cfg, candidate, theta)?,
                common.out.as_ref(),
            )
        }
        Command::QuaternionEvidence { common, w, triples } => {
            let cfg = common.config(1)?;
            let w = [w[0], w[1], w[2]];
            finish(
                cli::cmd_quaternion_evidence(&cfg, w, triples)?,
                common.out.as_ref(),
            )
        }
    }
}

fn main() -> ExitCode {
    let parsed = match Cli::try_parse() {
        Ok(p) => p,
        Err(e) => {
            let code = if e.use_stderr() { 2 } else { 0 };
            let _ = e.print();
            return ExitCode::from(code);
        }
    };
    match run(parsed.command) {
        Ok(code) => ExitCode::from(code as u8),
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(cli::error_exit_code(&e) as u8)
        }
    }
}
