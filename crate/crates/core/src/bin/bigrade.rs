use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};

use bigrade_core::rank::DEFAULT_TRIALS;
use bigrade_core::survey::{
    self, certify_exit_code, CertifyConfig, CohomologyConfig, CurveKind, GridCurveConfig, OutputFormat, RangeSpec,
    ScanConfig, VerifyZConfig, PRIME_ENV,
};
use bigrade_core::{build_mulcon_matrix, Error, DEFAULT_PRIME};

const EXIT_OK: u8 = 0;
const EXIT_FAILED: u8 = 1;
const EXIT_INCONCLUSIVE: u8 = 2;
const EXIT_USAGE: u8 = 64;
const EXIT_IO: u8 = 74;

/// Multiplication–contraction maps, maximal-rank certificates and curve
/// cohomology on P1 x P1.
#[derive(Parser)]
#[command(name = "bigrade", version)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Args)]
struct Common {
    /// Working prime.
    #[arg(long, env = PRIME_ENV, default_value_t = DEFAULT_PRIME)]
    prime: u64,
    /// Random forms tried per cell before giving up.
    #[arg(long, default_value_t = DEFAULT_TRIALS)]
    trials: usize,
    #[arg(long, default_value_t = 0)]
    seed: u64,
    /// Worker threads; 0 uses every core.
    #[arg(long, default_value_t = 0)]
    jobs: usize,
    /// Write the report here instead of stdout.
    #[arg(long)]
    out: Option<PathBuf>,
    #[arg(long, value_enum, default_value_t = OutputFormat::Json)]
    format: OutputFormat,
    /// Record wall-clock times (makes reports non-reproducible).
    #[arg(long)]
    timing: bool,
}

#[derive(Subcommand)]
enum Command {
    /// Certify maximal rank of S^r V ⊗ S^t W* → S^{r+a} V ⊗ S^{t-b} W* for a random form.
    Certify {
        #[arg(long)]
        a: usize,
        #[arg(long)]
        b: usize,
        #[arg(long)]
        r: usize,
        #[arg(long)]
        t: usize,
        /// Write the decisive matrix in coordinate text format.
        #[arg(long)]
        export_matrix: Option<PathBuf>,
        #[command(flatten)]
        common: Common,
    },
    /// Certify every cell of a parameter range (`LO:HI`; t and k accept `b+N`).
    Scan {
        #[arg(long, allow_hyphen_values = true)]
        a: RangeSpec,
        #[arg(long, allow_hyphen_values = true)]
        b: RangeSpec,
        #[arg(long, allow_hyphen_values = true)]
        r: Option<RangeSpec>,
        #[arg(long, allow_hyphen_values = true)]
        t: Option<RangeSpec>,
        /// Twist range, mapped to r = h - a.
        #[arg(long, allow_hyphen_values = true)]
        h: Option<RangeSpec>,
        /// Twist range, mapped to t = b - 2 - k.
        #[arg(long, allow_hyphen_values = true)]
        k: Option<RangeSpec>,
        #[command(flatten)]
        common: Common,
    },
    /// h^0 and h^1 of O_C(h, k) for a curve C of type (a, b).
    Cohomology {
        #[arg(long)]
        a: usize,
        #[arg(long)]
        b: usize,
        #[arg(long, allow_negative_numbers = true)]
        h: i64,
        #[arg(long, allow_negative_numbers = true)]
        k: i64,
        #[arg(long, value_enum, default_value_t = CurveKind::Random)]
        curve: CurveKind,
        #[arg(long)]
        export_matrix: Option<PathBuf>,
        #[command(flatten)]
        common: Common,
    },
    /// Route (h, k) to the critical band and classify it.
    Reduce {
        #[arg(long, allow_negative_numbers = true)]
        a: i64,
        #[arg(long, allow_negative_numbers = true)]
        b: i64,
        #[arg(long, allow_negative_numbers = true)]
        h: i64,
        #[arg(long, allow_negative_numbers = true)]
        k: i64,
        #[command(flatten)]
        common: Common,
    },
    /// Build a curve through an a x b grid, optionally with cohomology at (h, k).
    GridCurve {
        #[arg(long)]
        a: usize,
        #[arg(long)]
        b: usize,
        #[arg(long, allow_negative_numbers = true)]
        h: Option<i64>,
        #[arg(long, allow_negative_numbers = true)]
        k: Option<i64>,
        #[arg(long)]
        export_matrix: Option<PathBuf>,
        #[command(flatten)]
        common: Common,
    },
    /// Construct and check grid subsets Z for one (alpha, beta) or all of them.
    VerifyZ {
        #[arg(long)]
        a: usize,
        #[arg(long)]
        b: usize,
        #[arg(long, allow_negative_numbers = true)]
        alpha: Option<i64>,
        #[arg(long, allow_negative_numbers = true)]
        beta: Option<i64>,
        #[command(flatten)]
        common: Common,
    },
}

fn certify_config(c: &Common) -> CertifyConfig {
    CertifyConfig {
        prime: c.prime,
        trials: c.trials,
        seed: c.seed,
    }
}

fn run(command: Command) -> Result<u8, Error> {
    match command {
        Command::Certify {
            a,
            b,
            r,
            t,
            export_matrix,
            common,
        } => {
            let report = survey::cmd_certify(a, b, r, t, &certify_config(&common), common.timing)?;
            if let Some(path) = export_matrix {
                survey::export_matrix(&report.cells[0].decisive_matrix()?, &path)?;
            }
            survey::emit(&report.render(common.format)?, common.out.as_deref())?;
            Ok(certify_exit_code(&report) as u8)
        }
        Command::Scan {
            a,
            b,
            r,
            t,
            h,
            k,
            common,
        } => {
            let config = ScanConfig {
                a,
                b,
                r,
                t,
                h,
                k,
                certify: certify_config(&common),
                jobs: common.jobs,
            };
            let report = survey::cmd_scan(&config, common.timing)?;
            survey::emit(&report.render(common.format)?, common.out.as_deref())?;
            Ok(certify_exit_code(&report) as u8)
        }
        Command::Cohomology {
            a,
            b,
            h,
            k,
            curve,
            export_matrix,
            common,
        } => {
            let config = CohomologyConfig {
                a,
                b,
                h,
                k,
                curve,
                prime: common.prime,
                seed: common.seed,
            };
            let report = survey::cmd_cohomology(&config, common.timing)?;
            if let Some(path) = export_matrix {
                survey::export_matrix(&survey::cohomology_matrix(&config)?, &path)?;
            }
            survey::emit(&report.render(common.format)?, common.out.as_deref())?;
            let ok = report.cells.iter().all(|c| c.result.euler_check);
            Ok(if ok { EXIT_OK } else { EXIT_FAILED })
        }
        Command::Reduce { a, b, h, k, common } => {
            let report = survey::cmd_reduce(a, b, h, k)?;
            survey::emit(&report.render(common.format)?, common.out.as_deref())?;
            Ok(EXIT_OK)
        }
        Command::GridCurve {
            a,
            b,
            h,
            k,
            export_matrix,
            common,
        } => {
            let config = GridCurveConfig {
                a,
                b,
                h,
                k,
                prime: common.prime,
                seed: common.seed,
            };
            let (report, curve) = survey::cmd_grid_curve(&config, common.timing)?;
            if let Some(path) = export_matrix {
                let (Some(h), Some(k)) = (h, k) else {
                    return Err(Error::Domain("--export-matrix needs --h and --k".into()));
                };
                let (h, k, form) = if h >= a as i64 {
                    (h, k, curve.form.clone())
                } else {
                    (k, h, curve.form.swap_factors())
                };
                let (fa, fb) = form.bidegree();
                if h < fa as i64 || k > -2 {
                    return Err(Error::Domain(format!("({h}, {k}) is outside both computable windows")));
                }
                let m = build_mulcon_matrix(&form, (h - fa as i64) as usize, (fb as i64 - 2 - k) as usize)?;
                survey::export_matrix(&m, &path)?;
            }
            survey::emit(&report.render(common.format)?, common.out.as_deref())?;
            let cell = &report.cells[0];
            Ok(if !cell.vanishes_on_grid {
                EXIT_FAILED
            } else if !cell.smooth_certified {
                EXIT_INCONCLUSIVE
            } else {
                EXIT_OK
            })
        }
        Command::VerifyZ {
            a,
            b,
            alpha,
            beta,
            common,
        } => {
            let config = VerifyZConfig {
                a,
                b,
                alpha,
                beta,
                prime: common.prime,
            };
            let report = survey::cmd_verify_z(&config)?;
            survey::emit(&report.render(common.format)?, common.out.as_deref())?;
            let ok = report.cells.iter().all(|c| c.verified);
            Ok(if ok { EXIT_OK } else { EXIT_FAILED })
        }
    }
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { EXIT_USAGE } else { EXIT_OK };
            let _ = e.print();
            return ExitCode::from(code);
        }
    };
    match run(cli.command) {
        Ok(code) => ExitCode::from(code),
        Err(e) => {
            eprintln!("bigrade: {e}");
            ExitCode::from(match e {
                Error::Io(_) => EXIT_IO,
                _ => EXIT_USAGE,
            })
        }
    }
}
