//! Command-line front end: build profiles, dump Jacobi fields, classify
//! stability, run parameter scans, evaluate spectra, and drive the
//! verification suite.
//!
//! Option precedence: command-line flags beat the optional key=value config
//! file, which beats built-in defaults. Every CSV output carries a header
//! row and the run-configuration hash as a comment line; outputs are
//! deterministic for a fixed configuration.
//!
//! Exit codes: 0 ok, 1 numerical failure, 2 usage error.

mod commands;
mod config;
mod output;

use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};

use commands::CmdError;
use config::RunConfig;

#[derive(Parser)]
#[command(
    name = "catenoid",
    about = "Catenoid profiles, Jacobi fields, stable domains and spectra in five ambient families",
    version
)]
struct Cli {
    /// Flat key=value config file supplying defaults for any option.
    #[arg(long, global = true)]
    config: Option<PathBuf>,

    /// Output file (stdout when omitted).
    #[arg(long, global = true)]
    out: Option<PathBuf>,

    /// Output format where a choice exists (csv|json).
    #[arg(long, global = true)]
    format: Option<String>,

    /// Override the default numerical tolerance (single knob).
    #[arg(long, global = true)]
    tol: Option<f64>,

    #[command(subcommand)]
    command: Command,
}

#[derive(Args, Clone, Default)]
struct FamilyArgs {
    /// Family: euclid | h2xr | hnxr | h3min | h3cousin.
    #[arg(long)]
    family: Option<String>,
    /// Hypersurface dimension (euclid, hnxr).
    #[arg(long)]
    n: Option<u32>,
    /// Neck parameter (> 0).
    #[arg(long)]
    a: Option<f64>,
}

#[derive(Subcommand)]
enum Command {
    /// Tabulate a generating curve (radius, height, derivatives).
    Profile {
        #[command(flatten)]
        family: FamilyArgs,
        /// Also emit embedded ambient-model coordinates on a (s, theta) mesh.
        #[arg(long)]
        mesh: bool,
        /// Angular samples for --mesh.
        #[arg(long)]
        theta_samples: Option<usize>,
        /// Parameter range half-width.
        #[arg(long)]
        s_max: Option<f64>,
        /// Number of parameter samples.
        #[arg(long)]
        points: Option<usize>,
    },
    /// Dump the vertical, variation and combined Jacobi fields.
    Jacobi {
        #[command(flatten)]
        family: FamilyArgs,
        /// Left endpoint parameter of the combined field (defaults to the
        /// variation-field zero when it exists).
        #[arg(long)]
        alpha: Option<f64>,
        #[arg(long)]
        s_max: Option<f64>,
        #[arg(long)]
        points: Option<usize>,
    },
    /// Classify stability: index, zeros, thresholds, Lindelöf verdict (JSON).
    Stability {
        #[command(flatten)]
        family: FamilyArgs,
    },
    /// Scan a neck-parameter range: columns (a, E0, V0, X0, index).
    Scan {
        #[command(flatten)]
        family: FamilyArgs,
        #[arg(long)]
        a_min: Option<f64>,
        #[arg(long)]
        a_max: Option<f64>,
        #[arg(long)]
        a_step: Option<f64>,
    },
    /// Least Dirichlet eigenvalue and index on an interval (JSON).
    Spectrum {
        #[command(flatten)]
        family: FamilyArgs,
        /// Interval LO:HI in the native parameter (inf allowed).
        #[arg(long, allow_hyphen_values = true)]
        interval: Option<String>,
        /// Grid size.
        #[arg(long)]
        grid: Option<usize>,
        /// Write the ground-state eigenvector samples to this CSV path.
        #[arg(long)]
        eigenvector: Option<PathBuf>,
    },
    /// Envelope cone of the Euclidean catenoid family (JSON).
    Envelope {
        #[arg(long)]
        n: Option<u32>,
    },
    /// First-integral trace along the ODE-integrated profile; optional
    /// boundary-flux balance over --domain LO:HI.
    Flux {
        #[command(flatten)]
        family: FamilyArgs,
        #[arg(long)]
        s_max: Option<f64>,
        #[arg(long)]
        points: Option<usize>,
        /// Domain LO:HI for the boundary balance.
        #[arg(long, allow_hyphen_values = true)]
        domain: Option<String>,
    },
    /// Run the verification suite; nonzero exit on any failure.
    Verify {
        /// Multiply every tolerance (values < 1 tighten the gate).
        #[arg(long)]
        tol_scale: Option<f64>,
        /// Substring filter on criterion names (or a criterion number).
        #[arg(long)]
        filter: Option<String>,
    },
}

fn merged_config(cli: &Cli) -> Result<RunConfig, CmdError> {
    let mut cfg = match &cli.config {
        Some(path) => RunConfig::from_file(path).map_err(CmdError::Usage)?,
        None => RunConfig::default(),
    };
    cfg.set_cli("out", cli.out.as_ref().map(|p| p.display().to_string()));
    cfg.set_cli("format", cli.format.clone());
    cfg.set_cli("tol", cli.tol);

    let fam = |cfg: &mut RunConfig, f: &FamilyArgs| {
        cfg.set_cli("family", f.family.clone());
        cfg.set_cli("n", f.n);
        cfg.set_cli("a", f.a);
    };
    match &cli.command {
        Command::Profile {
            family,
            mesh,
            theta_samples,
            s_max,
            points,
        } => {
            fam(&mut cfg, family);
            cfg.set_cli_flag("mesh", *mesh);
            cfg.set_cli("theta_samples", *theta_samples);
            cfg.set_cli("s_max", *s_max);
            cfg.set_cli("points", *points);
        }
        Command::Jacobi {
            family,
            alpha,
            s_max,
            points,
        } => {
            fam(&mut cfg, family);
            cfg.set_cli("alpha", *alpha);
            cfg.set_cli("s_max", *s_max);
            cfg.set_cli("points", *points);
        }
        Command::Stability { family } => fam(&mut cfg, family),
        Command::Scan {
            family,
            a_min,
            a_max,
            a_step,
        } => {
            fam(&mut cfg, family);
            cfg.set_cli("a_min", *a_min);
            cfg.set_cli("a_max", *a_max);
            cfg.set_cli("a_step", *a_step);
        }
        Command::Spectrum {
            family,
            interval,
            grid,
            eigenvector,
        } => {
            fam(&mut cfg, family);
            cfg.set_cli("interval", interval.clone());
            cfg.set_cli("grid", *grid);
            cfg.set_cli(
                "eigenvector",
                eigenvector.as_ref().map(|p| p.display().to_string()),
            );
        }
        Command::Envelope { n } => cfg.set_cli("n", *n),
        Command::Flux {
            family,
            s_max,
            points,
            domain,
        } => {
            fam(&mut cfg, family);
            cfg.set_cli("s_max", *s_max);
            cfg.set_cli("points", *points);
            cfg.set_cli("domain", domain.clone());
        }
        Command::Verify { tol_scale, filter } => {
            cfg.set_cli("tol_scale", *tol_scale);
            cfg.set_cli("filter", filter.clone());
        }
    }
    Ok(cfg)
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let cfg = match merged_config(&cli) {
        Ok(cfg) => cfg,
        Err(e) => {
            eprintln!("error: {}", e.message());
            return ExitCode::from(e.exit_code() as u8);
        }
    };
    let result = match &cli.command {
        Command::Profile { .. } => commands::cmd_profile(&cfg),
        Command::Jacobi { .. } => commands::cmd_jacobi(&cfg),
        Command::Stability { .. } => commands::cmd_stability(&cfg),
        Command::Scan { .. } => commands::cmd_scan(&cfg),
        Command::Spectrum { .. } => commands::cmd_spectrum(&cfg),
        Command::Envelope { .. } => commands::cmd_envelope(&cfg),
        Command::Flux { .. } => commands::cmd_flux(&cfg),
        Command::Verify { .. } => commands::cmd_verify(&cfg),
    };
    match result {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("error: {}", e.message());
            ExitCode::from(e.exit_code() as u8)
        }
    }
}
