//! Command-line front end for `q41-core`.
//!
//! Exit status: 0 when every applicable tolerance passes, 1 when a report
//! was written but some tolerance failed, 2 on configuration or geometry
//! errors (reported as a JSON document on stderr).

// `!(x < tol)` is deliberate: NaN must fail the check
#![allow(clippy::neg_cmp_op_on_partial_ord)]

pub mod commands;
pub mod config;
pub mod error;

use std::io::Write;
use std::path::{Path, PathBuf};
use std::time::{SystemTime, UNIX_EPOCH};

use clap::{Args, Parser, Subcommand};
use serde_json::json;

use commands::{Format, Report};
use config::{parse_assignments, ConfigFile, RunConfig};
pub use error::CliError;

pub const EXIT_OK: i32 = 0;
pub const EXIT_TOLERANCE: i32 = 1;
pub const EXIT_ERROR: i32 = 2;

#[derive(Debug, Parser)]
#[command(
    name = "q41",
    version,
    about = "Conformal invariants, transforms and energies of spacelike surfaces"
)]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// CSV of the invariants at every grid point.
    Invariants(RunArgs),
    /// JSON bundle of identity residuals.
    Verify(RunArgs),
    /// Apply a transform chain and report on the result.
    Transform(RunArgs),
    /// Willmore energy.
    Energy(RunArgs),
    /// CSV of affine-chart coordinates.
    Mesh(RunArgs),
    /// List catalog surfaces and their parameters.
    CatalogList(ListArgs),
}

#[derive(Debug, Args)]
pub struct ListArgs {
    #[arg(long)]
    pub out: Option<PathBuf>,
}

#[derive(Debug, Clone, Default, Args)]
pub struct RunArgs {
    /// Catalog surface name.
    #[arg(long)]
    pub surface: Option<String>,
    /// Surface parameter, NAME=VALUE (repeatable).
    #[arg(long = "param", value_name = "NAME=VALUE")]
    pub params: Vec<String>,
    /// DSL source file.
    #[arg(long, value_name = "FILE")]
    pub dsl: Option<PathBuf>,
    /// Parameter domain of a DSL chart: U0,U1,V0,V1.
    #[arg(long, value_delimiter = ',', allow_hyphen_values = true)]
    pub domain: Option<Vec<f64>>,
    /// Periodic directions of a DSL chart: none, u, v or uv.
    #[arg(long)]
    pub periodic: Option<String>,
    /// Sample grid, NUxNV.
    #[arg(long)]
    pub grid: Option<String>,
    /// Jet order of the base chart.
    #[arg(long)]
    pub order: Option<usize>,
    /// Tolerance override, NAME=VALUE (repeatable).
    #[arg(long = "tol", value_name = "NAME=VALUE")]
    pub tols: Vec<String>,
    /// Comma-separated transform chain, e.g. L,R or adjL.
    #[arg(long)]
    pub chain: Option<String>,
    /// Integrate |<kappa, kappa bar>| instead of the signed value.
    #[arg(long)]
    pub abs_integrand: bool,
    /// Output file; stdout when absent.
    #[arg(long)]
    pub out: Option<PathBuf>,
    /// JSON config file; flags override its fields.
    #[arg(long, value_name = "FILE")]
    pub config: Option<PathBuf>,
}

impl RunArgs {
    fn as_file(&self) -> Result<ConfigFile, CliError> {
        let domain = match &self.domain {
            None => None,
            Some(d) => Some(
                <[f64; 4]>::try_from(d.as_slice())
                    .map_err(|_| CliError::Config("domain takes four numbers U0,U1,V0,V1".into()))?,
            ),
        };
        let nonempty = |m: std::collections::BTreeMap<String, f64>| (!m.is_empty()).then_some(m);
        Ok(ConfigFile {
            surface: self.surface.clone(),
            params: nonempty(parse_assignments(&self.params, "--param")?),
            dsl: self.dsl.clone(),
            domain,
            periodic: self.periodic.clone(),
            grid: self.grid.clone(),
            order: self.order,
            tol: nonempty(parse_assignments(&self.tols, "--tol")?),
            chain: self.chain.clone(),
            abs_integrand: self.abs_integrand.then_some(true),
            out: self.out.clone(),
        })
    }

    /// Merges the config file (if any) under the flags and validates.
    pub fn resolve(&self) -> Result<RunConfig, CliError> {
        let base = match &self.config {
            Some(p) => ConfigFile::load(p)?,
            None => ConfigFile::default(),
        };
        RunConfig::from_file(base.merged(self.as_file()?))
    }
}

/// Runs a parsed command and returns the report and its destination.
pub fn execute(command: &Command) -> Result<(Report, Option<PathBuf>, &'static str), CliError> {
    let (name, args) = match command {
        Command::CatalogList(a) => return Ok((commands::cmd_catalog_list()?, a.out.clone(), "catalog-list")),
        Command::Invariants(a) => ("invariants", a),
        Command::Verify(a) => ("verify", a),
        Command::Transform(a) => ("transform", a),
        Command::Energy(a) => ("energy", a),
        Command::Mesh(a) => ("mesh", a),
    };
    let cfg = args.resolve()?;
    let report = match command {
        Command::Invariants(_) => commands::cmd_invariants(&cfg)?,
        Command::Verify(_) => commands::cmd_verify(&cfg)?,
        Command::Transform(_) => commands::cmd_transform(&cfg)?,
        Command::Energy(_) => commands::cmd_energy(&cfg)?,
        Command::Mesh(_) => commands::cmd_mesh(&cfg)?,
        Command::CatalogList(_) => unreachable!(),
    };
    Ok((report, cfg.out.clone(), name))
}

fn sidecar_path(out: &Path) -> PathBuf {
    let mut s = out.as_os_str().to_owned();
    s.push(".meta.json");
    PathBuf::from(s)
}

/// Writes the report to `out` (plus a metadata sidecar) or to stdout.
pub fn write_report(report: &Report, out: Option<&Path>, command: &str) -> Result<(), CliError> {
    match out {
        None => {
            let mut stdout = std::io::stdout().lock();
            stdout
                .write_all(&report.body)
                .and_then(|_| stdout.flush())
                .map_err(|e| CliError::io(Path::new("<stdout>"), e))
        }
        Some(path) => {
            std::fs::write(path, &report.body).map_err(|e| CliError::io(path, e))?;
            let created = SystemTime::now()
                .duration_since(UNIX_EPOCH)
                .map(|d| d.as_secs())
                .unwrap_or(0);
            let mut meta = json!({
                "command": command,
                "created_unix": created,
                "version": env!("CARGO_PKG_VERSION"),
                "format": match report.format { Format::Csv => "csv", Format::Json => "json" },
                "passed": report.passed,
            });
            for (k, v) in &report.meta {
                meta[k] = v.clone();
            }
            let side = sidecar_path(path);
            let text = serde_json::to_vec_pretty(&meta)?;
            std::fs::write(&side, text).map_err(|e| CliError::io(&side, e))
        }
    }
}

fn print_error(kind: &str, message: &str) {
    let doc = json!({ "kind": kind, "message": message });
    eprintln!("{doc}");
}

/// Entry point used by the binary; returns the process exit status.
pub fn run_from_args<I, T>(args: I) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(c) => c,
        Err(e) => {
            use clap::error::ErrorKind;
            if matches!(e.kind(), ErrorKind::DisplayHelp | ErrorKind::DisplayVersion) {
                print!("{e}");
                return EXIT_OK;
            }
            print_error("UsageError", e.to_string().trim_end());
            return EXIT_ERROR;
        }
    };
    let result = execute(&cli.command).and_then(|(report, out, name)| {
        write_report(&report, out.as_deref(), name)?;
        Ok(report.passed)
    });
    match result {
        Ok(true) => EXIT_OK,
        Ok(false) => EXIT_TOLERANCE,
        Err(e) => {
            let doc = e.document();
            print_error(doc.kind, &doc.message);
            EXIT_ERROR
        }
    }
}
