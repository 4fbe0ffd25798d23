//! Polar surfaces `[L]`, `[R]` and the adjoint transforms `[Ŷ]`, `[Ỹ]`.
//!
//! Each transform is again a [`SurfaceChart`]: evaluating it at a point
//! computes the frame of the underlying chart there, at a jet order raised by
//! the step's cost, and re-expands the resulting vector field in the
//! caller's coordinate jets. Chains therefore compose without caching, and
//! every derivative of a transformed surface is exact to truncation.

use std::fmt;

use num_complex::Complex64;
use serde::Serialize;

use crate::analysis::{residuals, sweep_report, AnalysisOptions, ResidualReport};
use crate::conformal_frame::{
    central_sphere_residual, frame_at_with, hopf_components, invariants_from_frame, FrameOptions, FramePoint,
    InvariantSet,
};
use crate::error::{GeomError, Result};
use crate::grid::{sample_points, sweep, GridSpec};
use crate::jet_calculus::{combine, Jet, JetVec6};
use crate::pseudo_euclidean::projective_distance_vec;
use crate::surfaces::SurfaceChart;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub enum Transform {
    PolarLeft,
    PolarRight,
    AdjointLeft,
    AdjointRight,
}

impl Transform {
    pub fn tag(self) -> &'static str {
        match self {
            Transform::PolarLeft => "L",
            Transform::PolarRight => "R",
            Transform::AdjointLeft => "adjL",
            Transform::AdjointRight => "adjR",
        }
    }

    pub fn parse(tag: &str) -> Result<Transform> {
        match tag.trim() {
            "L" | "polar_left" => Ok(Transform::PolarLeft),
            "R" | "polar_right" => Ok(Transform::PolarRight),
            "adjL" | "adjoint_left" => Ok(Transform::AdjointLeft),
            "adjR" | "adjoint_right" => Ok(Transform::AdjointRight),
            other => Err(GeomError::UnknownTransform(other.to_string())),
        }
    }

    /// Parses a comma-separated chain such as `L,R,adjL`.
    pub fn parse_chain(text: &str) -> Result<Vec<Transform>> {
        text.split(',')
            .filter(|s| !s.trim().is_empty())
            .map(Transform::parse)
            .collect()
    }

    /// Jet orders consumed by one application.
    pub fn order_cost(self) -> usize {
        match self {
            Transform::PolarLeft | Transform::PolarRight => 3,
            Transform::AdjointLeft | Transform::AdjointRight => 4,
        }
    }

    pub fn is_adjoint(self) -> bool {
        matches!(self, Transform::AdjointLeft | Transform::AdjointRight)
    }
}

impl fmt::Display for Transform {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.tag())
    }
}

/// Which null normal a construction is built on.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Side {
    Left,
    Right,
}

/// A chart obtained from `base` by a sequence of transforms.
#[derive(Debug, Clone)]
pub struct TransformedSurface {
    pub base: SurfaceChart,
    pub steps: Vec<Transform>,
    pub chart: SurfaceChart,
}

impl TransformedSurface {
    /// Total jet orders consumed by the chain.
    pub fn order_cost(&self) -> usize {
        self.steps.iter().map(|s| s.order_cost()).sum()
    }
}

fn lambda_check(inv_lambda: Complex64, s: Complex64, tol: f64, step: &'static str) -> Result<()> {
    if inv_lambda.norm() < tol * (1.0 + s.norm()) {
        return Err(GeomError::DegenerateTransform {
            step,
            lambda: inv_lambda.norm(),
        });
    }
    Ok(())
}

/// The polar lift `L` (left) or `R` (right) at a frame. The left polar
/// surface degenerates exactly where `λ₂` vanishes, the right one where `λ₁`
/// does.
pub fn polar_vector(f: &FramePoint, side: Side, opts: &FrameOptions) -> Result<JetVec6> {
    let (l1, l2, s) = hopf_components(f);
    match side {
        Side::Left => {
            lambda_check(l2.value(), s.value(), opts.umbilic_tol, "polar_left")?;
            Ok(f.l.clone())
        }
        Side::Right => {
            lambda_check(l1.value(), s.value(), opts.umbilic_tol, "polar_right")?;
            Ok(f.r.clone())
        }
    }
}

/// `(|μ|²/2) Y + μ̄ Y_z + μ Y_z̄ + N` for a given `μ̄` jet.
fn mu_combination(f: &FramePoint, mubar: &Jet) -> JetVec6 {
    let mu = mubar.conj();
    let half_norm = (&mu * mubar).scale_re(0.5);
    let one = Jet::real(1.0, mubar.order());
    combine(&[(&half_norm, &f.y), (mubar, &f.yz), (&mu, &f.yzbar), (&one, &f.n)]).re()
}

/// The adjoint lift `Ŷ` (left, from `μ̄ = −2γ₂/λ₂`) or `Ỹ` (right, from
/// `μ̄₁ = −2γ₁/λ₁`). Only meaningful on Willmore surfaces.
pub fn adjoint_vector(f: &FramePoint, inv: &InvariantSet, side: Side, opts: &FrameOptions) -> Result<JetVec6> {
    let (lam, mubar, step) = match side {
        Side::Left => (&inv.lambda2, &inv.mubar_left, "adjoint_left"),
        Side::Right => (&inv.lambda1, &inv.mubar_right, "adjoint_right"),
    };
    lambda_check(lam.value(), inv.s.value(), opts.umbilic_tol, step)?;
    let mubar = mubar.as_ref().ok_or(GeomError::DegenerateTransform {
        step,
        lambda: lam.value().norm(),
    })?;
    Ok(mu_combination(f, mubar))
}

/// The second envelope without the Willmore assumption: the adjoint
/// combination plus `(W/(λλ̄))·L` (left) or `·R` (right), where `W` is the
/// corresponding Willmore component. Orthogonal to `L, L_z, L_z̄, L_zz̄`
/// (resp. the `R` analogues) on any surface.
pub fn full_second_envelope_vector(
    f: &FramePoint,
    inv: &InvariantSet,
    side: Side,
    opts: &FrameOptions,
) -> Result<JetVec6> {
    let base = adjoint_vector(f, inv, side, opts)?;
    let (w, lam, normal) = match side {
        Side::Left => (residuals::willmore_components(inv)?.1, &inv.lambda2, &f.l),
        Side::Right => (residuals::willmore_components(inv)?.0, &inv.lambda1, &f.r),
    };
    let coeff = w.div(&(lam * &lam.conj()))?;
    Ok((&base.truncate(coeff.order()) + &normal.scale(&coeff)).re())
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
enum Step {
    Polar(Side),
    Adjoint(Side),
    Envelope(Side),
}

impl Step {
    fn cost(self) -> usize {
        match self {
            Step::Polar(_) => 3,
            Step::Adjoint(_) => 4,
            Step::Envelope(_) => 5,
        }
    }

    fn label(self) -> &'static str {
        match self {
            Step::Polar(Side::Left) => "polar_left",
            Step::Polar(Side::Right) => "polar_right",
            Step::Adjoint(Side::Left) => "adjoint_left",
            Step::Adjoint(Side::Right) => "adjoint_right",
            Step::Envelope(Side::Left) => "envelope_left",
            Step::Envelope(Side::Right) => "envelope_right",
        }
    }
}

fn step_chart(base: &SurfaceChart, step: Step, opts: FrameOptions) -> SurfaceChart {
    let inner = base.clone();
    let name = format!("{}({})", step.label(), base.name);
    SurfaceChart::new(name, base.domain, move |u, v| {
        let order = u.order().min(v.order());
        let (u0, v0) = (u.value().re, v.value().re);
        let f = frame_at_with(&inner, u0, v0, order + step.cost(), &opts)?;
        let vec = match step {
            Step::Polar(side) => polar_vector(&f, side, &opts)?,
            Step::Adjoint(side) => {
                let inv = invariants_from_frame(&f, &opts)?;
                adjoint_vector(&f, &inv, side, &opts)?
            }
            Step::Envelope(side) => {
                let inv = invariants_from_frame(&f, &opts)?;
                full_second_envelope_vector(&f, &inv, side, &opts)?
            }
        };
        Ok(vec.reexpand(u, v))
    })
    .with_params(base.params.clone())
    .with_periodicity(base.periodic_u, base.periodic_v)
}

fn single(base: &SurfaceChart, t: Transform, step: Step, opts: FrameOptions) -> TransformedSurface {
    TransformedSurface {
        base: base.clone(),
        steps: vec![t],
        chart: step_chart(base, step, opts),
    }
}

pub fn polar_left(chart: &SurfaceChart) -> TransformedSurface {
    single(
        chart,
        Transform::PolarLeft,
        Step::Polar(Side::Left),
        FrameOptions::default(),
    )
}

pub fn polar_right(chart: &SurfaceChart) -> TransformedSurface {
    single(
        chart,
        Transform::PolarRight,
        Step::Polar(Side::Right),
        FrameOptions::default(),
    )
}

/// Adjoint transforms without the Willmore precondition check.
pub fn adjoint_unchecked(chart: &SurfaceChart, side: Side, opts: FrameOptions) -> SurfaceChart {
    step_chart(chart, Step::Adjoint(side), opts)
}

/// Evidence that a surface is Willmore before an adjoint step is taken.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct WillmoreGate {
    pub grid: GridSpec,
    pub bound: f64,
}

impl Default for WillmoreGate {
    fn default() -> Self {
        WillmoreGate {
            grid: GridSpec { nu: 8, nv: 8 },
            bound: 1e-6,
        }
    }
}

fn require_willmore(chart: &SurfaceChart, gate: &WillmoreGate, opts: &AnalysisOptions) -> Result<()> {
    let rep = residuals::willmore_residual(chart, gate.grid, opts)?;
    if !(rep.max_abs <= gate.bound) {
        return Err(GeomError::NotWillmore {
            residual: rep.max_abs,
            bound: gate.bound,
        });
    }
    Ok(())
}

pub fn adjoint_left(chart: &SurfaceChart, gate: &WillmoreGate) -> Result<TransformedSurface> {
    apply_chain(
        chart,
        &[Transform::AdjointLeft],
        &AnalysisOptions::default(),
        Some(gate),
    )
}

pub fn adjoint_right(chart: &SurfaceChart, gate: &WillmoreGate) -> Result<TransformedSurface> {
    apply_chain(
        chart,
        &[Transform::AdjointRight],
        &AnalysisOptions::default(),
        Some(gate),
    )
}

/// The second envelope of `[L]` (left) or `[R]` (right), valid without any
/// Willmore assumption.
pub fn full_second_envelope(chart: &SurfaceChart, side: Side) -> TransformedSurface {
    let t = match side {
        Side::Left => Transform::AdjointLeft,
        Side::Right => Transform::AdjointRight,
    };
    single(chart, t, Step::Envelope(side), FrameOptions::default())
}

/// Applies a chain of transforms. With a gate, every adjoint step first
/// checks the Willmore residual of the surface it is applied to.
pub fn apply_chain(
    base: &SurfaceChart,
    steps: &[Transform],
    opts: &AnalysisOptions,
    gate: Option<&WillmoreGate>,
) -> Result<TransformedSurface> {
    let mut chart = base.clone();
    for &t in steps {
        let step = match t {
            Transform::PolarLeft => Step::Polar(Side::Left),
            Transform::PolarRight => Step::Polar(Side::Right),
            Transform::AdjointLeft => Step::Adjoint(Side::Left),
            Transform::AdjointRight => Step::Adjoint(Side::Right),
        };
        if let (true, Some(g)) = (t.is_adjoint(), gate) {
            require_willmore(&chart, g, opts)?;
        }
        chart = step_chart(&chart, step, opts.frame);
    }
    Ok(TransformedSurface {
        base: base.clone(),
        steps: steps.to_vec(),
        chart,
    })
}

/// Sup of the projective distance between two charts over a grid.
pub fn projective_gap(a: &SurfaceChart, b: &SurfaceChart, grid: GridSpec, identity: &str) -> Result<ResidualReport> {
    sweep_report(identity, a, grid, |u, v| {
        let p = a.point(u, v)?;
        let q = b.point(u, v)?;
        projective_distance_vec(&p, &q)
    })
}

/// Checks that `[R]` of `[L]` and `[L]` of `[R]` return the surface.
pub fn inverse_check(chart: &SurfaceChart, grid: GridSpec) -> Result<ResidualReport> {
    let lr = polar_right(&polar_left(chart).chart).chart;
    let rl = polar_left(&polar_right(chart).chart).chart;
    sweep_report("inverse_property", chart, grid, |u, v| {
        let y = chart.point(u, v)?;
        let a = projective_distance_vec(&lr.point(u, v)?, &y)?;
        let b = projective_distance_vec(&rl.point(u, v)?, &y)?;
        Ok(a.max(b))
    })
}

/// Diagnostics of the duality between S-Willmore surfaces and coinciding
/// adjoint transforms.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct DualityReport {
    /// `sup |λ₁γ₂ − λ₂γ₁| / max(1, |λ₁λ₂|^{3/2})`.
    pub swillmore_dev: f64,
    /// `sup` projective distance between `[Ŷ]` and `[Ỹ]`.
    pub adjoint_coincidence: f64,
    /// `sup |σ| / (|λ₁|+|λ₂|+|γ₁|+|γ₂|+|s|+1)`.
    pub sigma_residual: f64,
    /// `sup` relative distance of `Ŷ` and `Ỹ` from the central sphere.
    pub central_sphere_residual: f64,
    pub degenerate_fraction: f64,
}

pub fn duality_report(chart: &SurfaceChart, grid: GridSpec, opts: &AnalysisOptions) -> Result<DualityReport> {
    let points = sample_points(&chart.domain, chart.periodic_u, chart.periodic_v, grid);
    let order = opts.order.max(5);
    let rows = sweep(&points, |u, v| -> Result<[f64; 4]> {
        let f = frame_at_with(chart, u, v, order, &opts.frame)?;
        let inv = invariants_from_frame(&f, &opts.frame)?;
        let yh = adjoint_vector(&f, &inv, Side::Left, &opts.frame)?;
        let yt = adjoint_vector(&f, &inv, Side::Right, &opts.frame)?;
        let coincide = projective_distance_vec(&yh.value_re(), &yt.value_re())?;
        let sigma = residuals::sigma_at(&inv);
        let sphere = central_sphere_residual(&f, &yh).max(central_sphere_residual(&f, &yt));
        Ok([residuals::swillmore_deviation(&inv), coincide, sigma, sphere])
    });
    let mut out = [0.0f64; 4];
    let mut masked = 0;
    for r in rows.iter() {
        match r {
            Ok(vals) => {
                for (o, x) in out.iter_mut().zip(vals) {
                    *o = if x.is_nan() { f64::NAN } else { o.max(*x) };
                }
            }
            Err(e) if e.is_pointwise_degeneracy() => masked += 1,
            Err(e) => return Err(e.clone()),
        }
    }
    Ok(DualityReport {
        swillmore_dev: out[0],
        adjoint_coincidence: out[1],
        sigma_residual: out[2],
        central_sphere_residual: out[3],
        degenerate_fraction: masked as f64 / rows.len().max(1) as f64,
    })
}
