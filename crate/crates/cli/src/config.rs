//! Run configuration: command-line flags merged over an optional JSON file.

use std::collections::BTreeMap;
use std::path::{Path, PathBuf};

use serde::{Deserialize, Serialize};

use q41_core::analysis::{AnalysisOptions, EnergyOptions};
use q41_core::conformal_frame::{FrameOptions, DEFAULT_ORDER};
use q41_core::grid::GridSpec;
use q41_core::surfaces::dsl::dsl_parse;
use q41_core::surfaces::{catalog, check_chart, Domain, SurfaceChart};
use q41_core::transforms::{apply_chain, Transform, WillmoreGate};
use q41_core::GeomError;

use crate::error::CliError;

/// Highest jet order a base chart may be evaluated at, chain costs included.
pub const MAX_TOTAL_ORDER: usize = 24;
/// Lowest order that supports every identity check.
pub const MIN_ORDER: usize = 6;

/// Named tolerances with their defaults.
pub const TOLERANCES: [(&str, f64); 17] = [
    ("umbilic", 1e-8),
    ("structure", 1e-8),
    ("integrability", 1e-8),
    ("willmore", 1e-8),
    ("gauss_gram", 1e-10),
    ("gauss_metric", 1e-8),
    ("theta", 1e-8),
    ("harmonicity", 1e-8),
    ("adjoint_gate", 1e-6),
    ("transform_willmore", 1e-6),
    ("inverse", 1e-8),
    ("duality", 1e-7),
    ("energy", 1e-8),
    ("singular", 1e8),
    ("mesh_infinity", 1e-12),
    ("conformal", 1e-8),
    ("swillmore", 1e-6),
];

/// The JSON config file; every field optional, flags override.
#[derive(Debug, Clone, Default, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ConfigFile {
    pub surface: Option<String>,
    pub params: Option<BTreeMap<String, f64>>,
    pub dsl: Option<PathBuf>,
    /// `[u0, u1, v0, v1]` for DSL charts.
    pub domain: Option<[f64; 4]>,
    /// `"none"`, `"u"`, `"v"` or `"uv"` for DSL charts.
    pub periodic: Option<String>,
    pub grid: Option<String>,
    pub order: Option<usize>,
    pub tol: Option<BTreeMap<String, f64>>,
    pub chain: Option<String>,
    pub abs_integrand: Option<bool>,
    pub out: Option<PathBuf>,
}

impl ConfigFile {
    pub fn load(path: &Path) -> Result<ConfigFile, CliError> {
        let text = std::fs::read_to_string(path).map_err(|e| CliError::io(path, e))?;
        serde_json::from_str(&text).map_err(|e| CliError::Config(format!("{}: {e}", path.display())))
    }

    /// Fields set in `over` replace those in `self`; maps are merged key by
    /// key.
    pub fn merged(mut self, over: ConfigFile) -> ConfigFile {
        fn merge_map(
            a: Option<BTreeMap<String, f64>>,
            b: Option<BTreeMap<String, f64>>,
        ) -> Option<BTreeMap<String, f64>> {
            match (a, b) {
                (Some(mut a), Some(b)) => {
                    a.extend(b);
                    Some(a)
                }
                (a, b) => b.or(a),
            }
        }
        self.params = merge_map(self.params, over.params);
        self.tol = merge_map(self.tol, over.tol);
        macro_rules! take {
            ($($f:ident),*) => {$( if over.$f.is_some() { self.$f = over.$f; } )*};
        }
        take!(surface, dsl, domain, periodic, grid, order, chain, abs_integrand, out);
        self
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum SurfaceSelector {
    Catalog {
        name: String,
        params: BTreeMap<String, f64>,
    },
    Dsl {
        path: PathBuf,
        params: BTreeMap<String, f64>,
        domain: Domain,
        periodic_u: bool,
        periodic_v: bool,
    },
}

/// A validated configuration.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct RunConfig {
    pub surface: SurfaceSelector,
    /// `None` lets each command pick its default.
    pub grid: Option<GridSpec>,
    pub order: usize,
    pub tolerances: BTreeMap<String, f64>,
    pub chain: Vec<Transform>,
    pub abs_integrand: bool,
    pub out: Option<PathBuf>,
}

fn parse_periodic(s: &str) -> Result<(bool, bool), CliError> {
    match s {
        "none" | "" => Ok((false, false)),
        "u" => Ok((true, false)),
        "v" => Ok((false, true)),
        "uv" => Ok((true, true)),
        other => Err(CliError::Config(format!(
            "periodic must be none, u, v or uv, got {other:?}"
        ))),
    }
}

impl RunConfig {
    pub fn from_file(file: ConfigFile) -> Result<RunConfig, CliError> {
        let params = file.params.unwrap_or_default();
        let surface = match (file.surface, file.dsl) {
            (Some(_), Some(_)) => {
                return Err(CliError::Config(
                    "give either a catalog surface or a DSL file, not both".into(),
                ))
            }
            (None, None) => return Err(CliError::Config("no surface selected (use --surface or --dsl)".into())),
            (Some(name), None) => {
                if file.domain.is_some() || file.periodic.is_some() {
                    return Err(CliError::Config("domain and periodic apply to DSL charts only".into()));
                }
                SurfaceSelector::Catalog { name, params }
            }
            (None, Some(path)) => {
                let d = file.domain.unwrap_or([-0.5, 0.5, -0.5, 0.5]);
                if !(d[0] < d[1] && d[2] < d[3]) || d.iter().any(|x| !x.is_finite()) {
                    return Err(CliError::Config(format!("empty or invalid domain {d:?}")));
                }
                let (periodic_u, periodic_v) = parse_periodic(file.periodic.as_deref().unwrap_or("none"))?;
                SurfaceSelector::Dsl {
                    path,
                    params,
                    domain: Domain::new(d[0], d[1], d[2], d[3]),
                    periodic_u,
                    periodic_v,
                }
            }
        };
        let grid = file.grid.as_deref().map(GridSpec::parse).transpose()?;
        if let Some(g) = grid {
            if g.nu < 4 || g.nv < 4 {
                return Err(CliError::Config(format!(
                    "grid must be at least 4x4, got {}x{}",
                    g.nu, g.nv
                )));
            }
        }
        let mut tolerances: BTreeMap<String, f64> = TOLERANCES.iter().map(|&(k, v)| (k.to_string(), v)).collect();
        for (k, v) in file.tol.unwrap_or_default() {
            if !tolerances.contains_key(&k) {
                let names: Vec<&str> = TOLERANCES.iter().map(|t| t.0).collect();
                return Err(CliError::Config(format!(
                    "unknown tolerance {k:?} (known: {})",
                    names.join(", ")
                )));
            }
            if !(v > 0.0 && v.is_finite()) {
                return Err(CliError::Config(format!("tolerance {k} must be positive and finite")));
            }
            tolerances.insert(k, v);
        }
        let chain = Transform::parse_chain(file.chain.as_deref().unwrap_or(""))?;
        let order = file.order.unwrap_or(DEFAULT_ORDER);
        let cost: usize = chain.iter().map(|t| t.order_cost()).sum();
        if order < MIN_ORDER {
            return Err(CliError::Config(format!(
                "order must be at least {MIN_ORDER}, got {order}"
            )));
        }
        if order + cost > MAX_TOTAL_ORDER {
            return Err(CliError::Config(format!(
                "order {order} plus chain cost {cost} exceeds the limit {MAX_TOTAL_ORDER}"
            )));
        }
        Ok(RunConfig {
            surface,
            grid,
            order,
            tolerances,
            chain,
            abs_integrand: file.abs_integrand.unwrap_or(false),
            out: file.out,
        })
    }

    pub fn tol(&self, name: &str) -> f64 {
        self.tolerances[name]
    }

    pub fn grid_or(&self, default: GridSpec) -> GridSpec {
        self.grid.unwrap_or(default)
    }

    pub fn frame_options(&self) -> FrameOptions {
        FrameOptions {
            umbilic_tol: self.tol("umbilic"),
            ..Default::default()
        }
    }

    pub fn analysis_options(&self) -> AnalysisOptions {
        AnalysisOptions {
            frame: self.frame_options(),
            order: self.order,
        }
    }

    pub fn energy_options(&self, grid: GridSpec) -> EnergyOptions {
        EnergyOptions {
            grid,
            abs_integrand: self.abs_integrand,
            singular_bound: self.tol("singular"),
            frame: self.frame_options(),
        }
    }

    pub fn gate(&self) -> WillmoreGate {
        WillmoreGate {
            bound: self.tol("adjoint_gate"),
            ..Default::default()
        }
    }

    /// The selected base chart, before any transform chain.
    pub fn base_chart(&self) -> Result<SurfaceChart, CliError> {
        match &self.surface {
            SurfaceSelector::Catalog { name, params } => Ok(catalog::build(name, params)?),
            SurfaceSelector::Dsl {
                path,
                params,
                domain,
                periodic_u,
                periodic_v,
            } => {
                let src = std::fs::read_to_string(path).map_err(|e| CliError::io(path, e))?;
                let prog = dsl_parse(&src).map_err(GeomError::from)?;
                let name = path
                    .file_stem()
                    .map(|s| s.to_string_lossy().into_owned())
                    .unwrap_or_else(|| "dsl".into());
                let chart = prog
                    .into_chart(name, params.clone(), *domain, *periodic_u, *periodic_v)
                    .map_err(GeomError::from)?;
                let check = check_chart(&chart, GridSpec { nu: 5, nv: 5 })?;
                let tol = self.tol("conformal");
                let worst = check.null_residual.max(check.conformal_residual);
                if !(worst <= tol) || !(check.min_metric > 0.0) {
                    return Err(GeomError::NotConformal { residual: worst }.into());
                }
                Ok(chart)
            }
        }
    }

    /// The chart the commands act on: the base with the chain applied.
    /// Adjoint steps are gated on the Willmore residual.
    pub fn chart(&self) -> Result<SurfaceChart, CliError> {
        let base = self.base_chart()?;
        if self.chain.is_empty() {
            return Ok(base);
        }
        let gate = self.gate();
        Ok(apply_chain(&base, &self.chain, &self.analysis_options(), Some(&gate))?.chart)
    }

    /// `(p, q)` when the selection is a rational member of the torus family.
    pub fn torus_pq(&self) -> Option<(f64, f64)> {
        match &self.surface {
            SurfaceSelector::Catalog { name, .. } if name == "torus" && self.chain.is_empty() => {
                let chart = self.base_chart().ok()?;
                Some((*chart.params.get("p")?, *chart.params.get("q")?))
            }
            _ => None,
        }
    }
}

/// Parses `k=v` pairs.
pub fn parse_assignments(items: &[String], what: &str) -> Result<BTreeMap<String, f64>, CliError> {
    let mut out = BTreeMap::new();
    for item in items {
        let (k, v) = item
            .split_once('=')
            .ok_or_else(|| CliError::Config(format!("{what} must look like NAME=VALUE, got {item:?}")))?;
        let v: f64 = v
            .trim()
            .parse()
            .map_err(|_| CliError::Config(format!("{what} {k}: {v:?} is not a number")))?;
        out.insert(k.trim().to_string(), v);
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn torus_file() -> ConfigFile {
        ConfigFile {
            surface: Some("torus".into()),
            ..Default::default()
        }
    }

    #[test]
    fn flags_win_over_file() {
        let file = ConfigFile {
            grid: Some("8x8".into()),
            tol: Some(BTreeMap::from([("willmore".into(), 1e-3), ("theta".into(), 1e-4)])),
            ..torus_file()
        };
        let flags = ConfigFile {
            grid: Some("6x5".into()),
            tol: Some(BTreeMap::from([("willmore".into(), 1e-5)])),
            ..Default::default()
        };
        let cfg = RunConfig::from_file(file.merged(flags)).unwrap();
        assert_eq!(cfg.grid, Some(GridSpec { nu: 6, nv: 5 }));
        assert_eq!(cfg.tol("willmore"), 1e-5);
        assert_eq!(cfg.tol("theta"), 1e-4);
    }

    #[test]
    fn validation() {
        let bad = |f: ConfigFile| RunConfig::from_file(f).unwrap_err().kind();
        assert_eq!(bad(ConfigFile::default()), "ConfigError");
        assert_eq!(
            bad(ConfigFile {
                grid: Some("3x8".into()),
                ..torus_file()
            }),
            "ConfigError"
        );
        assert_eq!(
            bad(ConfigFile {
                tol: Some(BTreeMap::from([("nope".into(), 1.0)])),
                ..torus_file()
            }),
            "ConfigError"
        );
        assert_eq!(
            bad(ConfigFile {
                chain: Some("L,L,L,L,L,L".into()),
                ..torus_file()
            }),
            "ConfigError"
        );
        assert_eq!(
            bad(ConfigFile {
                chain: Some("Q".into()),
                ..torus_file()
            }),
            "UnknownTransform"
        );
    }

    #[test]
    fn torus_reference_detection() {
        let cfg = RunConfig::from_file(ConfigFile {
            params: Some(BTreeMap::from([("t".into(), 1.5)])),
            ..torus_file()
        })
        .unwrap();
        assert_eq!(cfg.torus_pq(), Some((3.0, 2.0)));
    }

    #[test]
    fn assignments() {
        let m = parse_assignments(&["t=2".into(), " a = -0.5".into()], "--param").unwrap();
        assert_eq!(m["t"], 2.0);
        assert_eq!(m["a"], -0.5);
        assert!(parse_assignments(&["t".into()], "--param").is_err());
    }
}
