//! The subcommands. Each returns a [`Report`]; writing it out is left to the
//! caller.

use std::collections::BTreeMap;

use serde::Serialize;
use serde_json::{json, Value};

use q41_core::analysis::{self, ResidualReport};
use q41_core::conformal_frame::invariants_at_with;
use q41_core::grid::{sample_points, sweep, GridSpec};
use q41_core::surfaces::{catalog, Domain, SurfaceChart};
use q41_core::transforms::{duality_report, projective_gap, Transform};

use crate::config::RunConfig;
use crate::error::CliError;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Format {
    Csv,
    Json,
}

/// A rendered report.
#[derive(Debug, Clone)]
pub struct Report {
    pub format: Format,
    pub body: Vec<u8>,
    /// False when some applicable tolerance failed.
    pub passed: bool,
    /// Extra fields for the sidecar metadata file.
    pub meta: BTreeMap<String, Value>,
}

impl Report {
    fn json<T: Serialize>(doc: &T, passed: bool) -> Result<Report, CliError> {
        let mut body = serde_json::to_vec_pretty(doc)?;
        body.push(b'\n');
        Ok(Report {
            format: Format::Json,
            body,
            passed,
            meta: BTreeMap::new(),
        })
    }
}

pub const INVARIANT_COLUMNS: [&str; 21] = [
    "u",
    "v",
    "lambda1_re",
    "lambda1_im",
    "lambda2_re",
    "lambda2_im",
    "s_re",
    "s_im",
    "alpha_re",
    "alpha_im",
    "gamma1_re",
    "gamma1_im",
    "gamma2_re",
    "gamma2_im",
    "beta_re",
    "beta_im",
    "kappa_pair",
    "theta_re",
    "theta_im",
    "class",
    "error",
];

pub const MESH_COLUMNS: [&str; 8] = ["u", "v", "x1", "x2", "x3", "x4", "inf", "note"];

const VERIFY_GRID: GridSpec = GridSpec { nu: 16, nv: 16 };
const TRANSFORM_GRID: GridSpec = GridSpec { nu: 16, nv: 16 };
const ENERGY_GRID: GridSpec = GridSpec { nu: 128, nv: 128 };

fn num(x: f64) -> String {
    format!("{x:?}")
}

#[derive(Debug, Serialize)]
struct SurfaceInfo {
    name: String,
    params: BTreeMap<String, f64>,
    domain: Domain,
    periodic_u: bool,
    periodic_v: bool,
    chain: Vec<&'static str>,
    order: usize,
}

fn surface_info(cfg: &RunConfig, chart: &SurfaceChart) -> SurfaceInfo {
    SurfaceInfo {
        name: chart.name.clone(),
        params: chart.params.clone(),
        domain: chart.domain,
        periodic_u: chart.periodic_u,
        periodic_v: chart.periodic_v,
        chain: cfg.chain.iter().map(|t| t.tag()).collect(),
        order: cfg.order,
    }
}

fn points(chart: &SurfaceChart, grid: GridSpec) -> Vec<(f64, f64)> {
    sample_points(&chart.domain, chart.periodic_u, chart.periodic_v, grid)
}

/// One row per grid point with the invariants, the point class, and the
/// error kind where the frame degenerates.
pub fn cmd_invariants(cfg: &RunConfig) -> Result<Report, CliError> {
    let chart = cfg.chart()?;
    let grid = cfg.grid_or(GridSpec::DEFAULT);
    let opts = cfg.frame_options();
    let pts = points(&chart, grid);
    let rows = sweep(&pts, |u, v| invariants_at_with(&chart, u, v, cfg.order, &opts));

    let mut w = csv::Writer::from_writer(Vec::new());
    w.write_record(INVARIANT_COLUMNS)?;
    for (&(u, v), row) in pts.iter().zip(rows) {
        let mut rec = vec![num(u), num(v)];
        match row {
            Ok(inv) => {
                for j in [
                    &inv.lambda1,
                    &inv.lambda2,
                    &inv.s,
                    &inv.alpha,
                    &inv.gamma1,
                    &inv.gamma2,
                    &inv.beta,
                ] {
                    let c = j.value();
                    rec.push(num(c.re));
                    rec.push(num(c.im));
                }
                rec.push(num(inv.kappa_pair.value().re));
                let th = inv.theta.value();
                rec.push(num(th.re));
                rec.push(num(th.im));
                rec.push(inv.class.as_str().into());
                rec.push(String::new());
            }
            Err(e) if e.is_pointwise_degeneracy() => {
                rec.extend(std::iter::repeat_n(String::new(), 18));
                rec.push(e.kind().into());
            }
            Err(e) => return Err(e.into()),
        }
        w.write_record(&rec)?;
    }
    let body = w.into_inner().map_err(|e| CliError::Config(e.to_string()))?;
    Ok(Report {
        format: Format::Csv,
        body,
        passed: true,
        meta: BTreeMap::new(),
    })
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Status {
    Pass,
    Fail,
    /// Reported only; not an identity.
    Info,
    Skipped,
}

#[derive(Debug, Serialize)]
struct Entry {
    identity: &'static str,
    status: Status,
    tolerance: Option<f64>,
    report: Option<ResidualReport>,
    note: Option<String>,
}

impl Entry {
    fn checked(identity: &'static str, tol: f64, report: ResidualReport) -> Entry {
        let (status, note) = if report.degenerate_fraction >= 1.0 {
            (Status::Skipped, Some("every grid point is degenerate".to_string()))
        } else if report.passes(tol) {
            (Status::Pass, None)
        } else {
            (Status::Fail, None)
        };
        Entry {
            identity,
            status,
            tolerance: Some(tol),
            report: Some(report),
            note,
        }
    }

    fn info(identity: &'static str, report: ResidualReport, note: String) -> Entry {
        Entry {
            identity,
            status: Status::Info,
            tolerance: None,
            report: Some(report),
            note: Some(note),
        }
    }

    fn skipped(identity: &'static str, note: &str) -> Entry {
        Entry {
            identity,
            status: Status::Skipped,
            tolerance: None,
            report: None,
            note: Some(note.to_string()),
        }
    }
}

#[derive(Debug, Serialize)]
struct Bundle {
    command: &'static str,
    surface: SurfaceInfo,
    passed: bool,
    entries: Vec<Entry>,
}

/// Residual reports for the identity suite. Holomorphy of `Θ` and the
/// harmonicity check only apply to Willmore charts and are skipped
/// otherwise.
pub fn cmd_verify(cfg: &RunConfig) -> Result<Report, CliError> {
    let chart = cfg.chart()?;
    let grid = cfg.grid_or(VERIFY_GRID);
    let opts = cfg.analysis_options();
    let mut entries = vec![
        Entry::checked(
            "structure",
            cfg.tol("structure"),
            analysis::check_structure(&chart, grid, &opts)?,
        ),
        Entry::checked(
            "integrability",
            cfg.tol("integrability"),
            analysis::check_integrability(&chart, grid, &opts)?,
        ),
    ];
    let willmore = Entry::checked(
        "willmore",
        cfg.tol("willmore"),
        analysis::willmore_residual(&chart, grid, &opts)?,
    );
    let is_willmore = willmore.status == Status::Pass;
    entries.push(willmore);

    let dev = analysis::swillmore_residual(&chart, grid, &opts)?.deviation;
    let holds = dev.degenerate_fraction < 1.0 && dev.max_abs <= cfg.tol("swillmore");
    let note = if !is_willmore {
        "not Willmore".to_string()
    } else if holds {
        "S-Willmore".to_string()
    } else {
        "Willmore, not S-Willmore".to_string()
    };
    entries.push(Entry::info("swillmore", dev, note));

    entries.push(Entry::checked(
        "gauss_gram",
        cfg.tol("gauss_gram"),
        analysis::gauss_gram_check(&chart, grid, &opts)?,
    ));
    entries.push(Entry::checked(
        "gauss_metric",
        cfg.tol("gauss_metric"),
        analysis::gauss_metric_check(&chart, grid, &opts)?,
    ));
    if is_willmore {
        entries.push(Entry::checked(
            "theta_holomorphy",
            cfg.tol("theta"),
            analysis::theta_holomorphy_unchecked(&chart, grid, &opts)?,
        ));
        entries.push(Entry::checked(
            "harmonicity",
            cfg.tol("harmonicity"),
            analysis::harmonicity_residual(&chart, grid, &opts)?,
        ));
    } else {
        entries.push(Entry::skipped("theta_holomorphy", "applies to Willmore charts only"));
        entries.push(Entry::skipped("harmonicity", "applies to Willmore charts only"));
    }
    let passed = entries.iter().all(|e| e.status != Status::Fail);
    Report::json(
        &Bundle {
            command: "verify",
            surface: surface_info(cfg, &chart),
            passed,
            entries,
        },
        passed,
    )
}

/// Cancels adjacent `L,R` and `R,L` pairs; an empty result means the chain
/// should return the base surface.
pub fn reduce_chain(chain: &[Transform]) -> Vec<Transform> {
    let mut out: Vec<Transform> = Vec::new();
    for &t in chain {
        match (out.last(), t) {
            (Some(Transform::PolarLeft), Transform::PolarRight)
            | (Some(Transform::PolarRight), Transform::PolarLeft) => {
                out.pop();
            }
            _ => out.push(t),
        }
    }
    out
}

/// Applies the chain, then reports the Willmore residual of the result, the
/// distance to the base for chains that cancel, and the duality diagnostics
/// of the base.
pub fn cmd_transform(cfg: &RunConfig) -> Result<Report, CliError> {
    if cfg.chain.is_empty() {
        return Err(CliError::Config("transform needs a non-empty --chain".into()));
    }
    let base = cfg.base_chart()?;
    let chart = cfg.chart()?;
    let grid = cfg.grid_or(TRANSFORM_GRID);
    let opts = cfg.analysis_options();

    let base_w = Entry::checked(
        "base_willmore",
        cfg.tol("willmore"),
        analysis::willmore_residual(&base, grid, &opts)?,
    );
    let base_is_willmore = base_w.status == Status::Pass;
    let final_report = analysis::willmore_residual(&chart, grid, &opts)?;
    let final_w = if base_is_willmore {
        Entry::checked("willmore", cfg.tol("transform_willmore"), final_report)
    } else {
        Entry::info("willmore", final_report, "base is not Willmore".into())
    };
    let mut entries = vec![base_w, final_w];
    if reduce_chain(&cfg.chain).is_empty() {
        let gap = projective_gap(&chart, &base, grid, "round_trip")?;
        entries.push(Entry::checked("round_trip", cfg.tol("inverse"), gap));
    }
    let duality = match duality_report(&base, grid, &opts) {
        Ok(d) => serde_json::to_value(d)?,
        Err(e) => json!({ "error": e.kind(), "message": e.to_string() }),
    };
    let passed = entries.iter().all(|e| e.status != Status::Fail);
    Report::json(
        &json!({
            "command": "transform",
            "surface": surface_info(cfg, &chart),
            "base": surface_info(cfg, &base).name,
            "passed": passed,
            "entries": entries,
            "base_duality": duality,
        }),
        passed,
    )
}

#[derive(Debug, Serialize)]
struct Reference {
    p: f64,
    q: f64,
    value: f64,
    relative_error: f64,
    tolerance: f64,
    status: Status,
}

/// Willmore energy; rational tori also get the closed-form value and the
/// relative error against it.
pub fn cmd_energy(cfg: &RunConfig) -> Result<Report, CliError> {
    let chart = cfg.chart()?;
    let grid = cfg.grid_or(ENERGY_GRID);
    let res = analysis::willmore_energy(&chart, &cfg.energy_options(grid))?;
    let reference = cfg.torus_pq().filter(|_| !cfg.abs_integrand).map(|(p, q)| {
        let value = catalog::torus_energy_reference(p, q);
        let relative_error = ((res.value - value) / value).abs();
        let tolerance = cfg.tol("energy");
        Reference {
            p,
            q,
            value,
            relative_error,
            tolerance,
            status: if relative_error < tolerance {
                Status::Pass
            } else {
                Status::Fail
            },
        }
    });
    let passed = reference.as_ref().is_none_or(|r| r.status == Status::Pass);
    Report::json(
        &json!({
            "command": "energy",
            "surface": surface_info(cfg, &chart),
            "grid": { "nu": grid.nu, "nv": grid.nv },
            "abs_integrand": cfg.abs_integrand,
            "passed": passed,
            "value": res.value,
            "estimate": res.estimate,
            "refinements": res.refinements,
            "reference": reference,
        }),
        passed,
    )
}

/// Affine-chart coordinates `x = (Y₁..Y₄)/(Y₅ − Y₀)`; points where the
/// denominator is below the `mesh_infinity` tolerance (relative to `‖Y‖`)
/// are flagged instead.
pub fn cmd_mesh(cfg: &RunConfig) -> Result<Report, CliError> {
    let chart = cfg.chart()?;
    let grid = cfg.grid_or(GridSpec::DEFAULT);
    let tol = cfg.tol("mesh_infinity");
    let pts = points(&chart, grid);
    let rows = sweep(&pts, |u, v| chart.point(u, v));
    let mut w = csv::Writer::from_writer(Vec::new());
    w.write_record(MESH_COLUMNS)?;
    let (mut flagged, mut degenerate) = (0usize, 0usize);
    for (&(u, v), row) in pts.iter().zip(rows) {
        let mut rec = vec![num(u), num(v)];
        match row {
            Ok(y) => {
                let d = y.0[5] - y.0[0];
                if d.abs() <= tol * y.euclidean_norm() {
                    flagged += 1;
                    rec.extend(std::iter::repeat_n(String::new(), 4));
                    rec.push("1".into());
                    rec.push(String::new());
                } else {
                    rec.extend(y.0[1..5].iter().map(|c| num(c / d)));
                    rec.push("0".into());
                    rec.push(String::new());
                }
            }
            Err(e) if e.is_pointwise_degeneracy() => {
                degenerate += 1;
                rec.extend(std::iter::repeat_n(String::new(), 4));
                rec.push("0".into());
                rec.push(e.kind().into());
            }
            Err(e) => return Err(e.into()),
        }
        w.write_record(&rec)?;
    }
    let body = w.into_inner().map_err(|e| CliError::Config(e.to_string()))?;
    Ok(Report {
        format: Format::Csv,
        body,
        passed: true,
        meta: BTreeMap::from([
            ("flagged_infinite".to_string(), json!(flagged)),
            ("degenerate".to_string(), json!(degenerate)),
        ]),
    })
}

pub fn cmd_catalog_list() -> Result<Report, CliError> {
    let entries: Vec<Value> = catalog::entries()
        .into_iter()
        .map(|e| {
            let params: BTreeMap<&str, f64> = e.params.into_iter().collect();
            json!({ "name": e.name, "description": e.description, "params": params })
        })
        .collect();
    Report::json(&json!({ "command": "catalog-list", "surfaces": entries }), true)
}
