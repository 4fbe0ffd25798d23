//! Residual suites for the identities satisfied by spacelike surfaces and
//! the Willmore energy.
//!
//! Every check is pointwise: a sweep evaluates one scalar per grid point from
//! jets, so results do not depend on grid resolution. Points where the frame
//! or a transform degenerates are masked rather than failing the sweep.

pub mod energy;
pub mod quadrature;
pub mod residuals;

use serde::Serialize;

use crate::conformal_frame::{FrameOptions, DEFAULT_ORDER};
use crate::error::Result;
use crate::grid::{sample_points, sweep, GridSpec};
use crate::surfaces::{Domain, SurfaceChart};

pub use energy::{willmore_energy, EnergyOptions, EnergyResult};
pub use residuals::*;

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct AnalysisOptions {
    pub frame: FrameOptions,
    /// Jet order used for the base chart.
    pub order: usize,
}

impl Default for AnalysisOptions {
    fn default() -> Self {
        AnalysisOptions {
            frame: FrameOptions::default(),
            order: DEFAULT_ORDER,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct GridInfo {
    pub nu: usize,
    pub nv: usize,
    pub domain: Domain,
}

/// Max/mean of a pointwise residual over a grid.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct ResidualReport {
    pub identity: String,
    pub grid: GridInfo,
    pub max_abs: f64,
    pub mean_abs: f64,
    pub degenerate_fraction: f64,
    #[serde(skip)]
    pub points: Vec<(f64, f64)>,
    /// Per-point values; `None` where the point was masked.
    #[serde(skip)]
    pub values: Vec<Option<f64>>,
}

impl ResidualReport {
    /// Aggregates per-point results in grid order. Pointwise degeneracies
    /// are masked; any other error aborts with the first one encountered.
    pub fn from_results(
        identity: &str,
        chart: &SurfaceChart,
        grid: GridSpec,
        points: Vec<(f64, f64)>,
        results: Vec<Result<f64>>,
    ) -> Result<ResidualReport> {
        let mut values = Vec::with_capacity(results.len());
        for r in results {
            match r {
                Ok(x) => values.push(Some(x.abs())),
                Err(e) if e.is_pointwise_degeneracy() => values.push(None),
                Err(e) => return Err(e),
            }
        }
        let good: Vec<f64> = values.iter().flatten().copied().collect();
        // NaN must surface as a failure, so it is not dropped by `max`
        let max_abs = if good.iter().any(|x| x.is_nan()) {
            f64::NAN
        } else {
            good.iter().copied().fold(0.0, f64::max)
        };
        let mean_abs = if good.is_empty() {
            0.0
        } else {
            good.iter().sum::<f64>() / good.len() as f64
        };
        let masked = values.len() - good.len();
        Ok(ResidualReport {
            identity: identity.to_string(),
            grid: GridInfo {
                nu: grid.nu,
                nv: grid.nv,
                domain: chart.domain,
            },
            max_abs,
            mean_abs,
            degenerate_fraction: masked as f64 / values.len().max(1) as f64,
            points,
            values,
        })
    }

    pub fn passes(&self, tol: f64) -> bool {
        self.max_abs <= tol && self.degenerate_fraction < 1.0
    }
}

/// Sweeps a pointwise residual over the chart's sample grid.
pub fn sweep_report<F>(identity: &str, chart: &SurfaceChart, grid: GridSpec, f: F) -> Result<ResidualReport>
where
    F: Fn(f64, f64) -> Result<f64> + Sync + Send,
{
    let points = sample_points(&chart.domain, chart.periodic_u, chart.periodic_v, grid);
    let results = sweep(&points, f);
    ResidualReport::from_results(identity, chart, grid, points, results)
}
