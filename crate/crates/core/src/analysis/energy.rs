//! The Willmore functional `W = ∬ ⟨κ, κ̄⟩ du dv` over a chart's domain.

use serde::Serialize;

use super::quadrature::Rule;
use crate::conformal_frame::{kappa_pair_at, FrameOptions};
use crate::error::{GeomError, Result};
use crate::grid::{sweep, GridSpec};
use crate::surfaces::SurfaceChart;

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct EnergyOptions {
    /// Finest grid; the estimate uses a second pass at half resolution.
    pub grid: GridSpec,
    /// Integrate `|⟨κ, κ̄⟩|` instead of the signed value.
    pub abs_integrand: bool,
    /// `|⟨κ, κ̄⟩|` above this at any node raises `IntegrandSingular`.
    pub singular_bound: f64,
    pub frame: FrameOptions,
}

impl Default for EnergyOptions {
    fn default() -> Self {
        EnergyOptions {
            grid: GridSpec { nu: 128, nv: 128 },
            abs_integrand: false,
            singular_bound: 1e8,
            frame: FrameOptions::default(),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct Refinement {
    pub nu: usize,
    pub nv: usize,
    pub value: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct EnergyResult {
    pub value: f64,
    /// `|W(n) − W(n/2)|`.
    pub estimate: f64,
    /// Coarse to fine.
    pub refinements: Vec<Refinement>,
}

fn integrate_once(chart: &SurfaceChart, nu: usize, nv: usize, opts: &EnergyOptions) -> Result<f64> {
    let d = chart.domain;
    let ru = Rule::for_axis(d.u0, d.u1, nu, chart.periodic_u);
    let rv = Rule::for_axis(d.v0, d.v1, nv, chart.periodic_v);
    let points: Vec<(f64, f64)> = ru
        .nodes
        .iter()
        .flat_map(|&u| rv.nodes.iter().map(move |&v| (u, v)))
        .collect();
    let values = sweep(&points, |u, v| kappa_pair_at(chart, u, v, &opts.frame));
    // fixed summation order keeps the result independent of the sweep
    let mut total = 0.0;
    for (i, wu) in ru.weights.iter().enumerate() {
        let mut row = 0.0;
        for (j, wv) in rv.weights.iter().enumerate() {
            let k = values[i * nv + j].clone()?;
            if !(k.abs() <= opts.singular_bound) {
                return Err(GeomError::IntegrandSingular {
                    value: k.abs(),
                    bound: opts.singular_bound,
                });
            }
            row += wv * if opts.abs_integrand { k.abs() } else { k };
        }
        total += wu * row;
    }
    Ok(total)
}

/// Integrates `⟨κ, κ̄⟩` by tensor quadrature at the requested grid and at
/// half resolution.
pub fn willmore_energy(chart: &SurfaceChart, opts: &EnergyOptions) -> Result<EnergyResult> {
    let GridSpec { nu, nv } = opts.grid;
    if nu < 2 || nv < 2 {
        return Err(GeomError::InvalidGrid(format!(
            "energy needs at least 2x2 nodes, got {nu}x{nv}"
        )));
    }
    let (cu, cv) = (nu.div_ceil(2), nv.div_ceil(2));
    let coarse = integrate_once(chart, cu, cv, opts)?;
    let fine = integrate_once(chart, nu, nv, opts)?;
    Ok(EnergyResult {
        value: fine,
        estimate: (fine - coarse).abs(),
        refinements: vec![
            Refinement {
                nu: cu,
                nv: cv,
                value: coarse,
            },
            Refinement { nu, nv, value: fine },
        ],
    })
}
