//! Surface charts: maps `(u, v) ↦ Y(u, v)` into the light cone of `ℝ⁶₂`,
//! evaluated in jet arithmetic.
//!
//! Space forms enter through the conformal embeddings
//!
//! * `ℝ⁴₁ → Q⁴₁`, `x ↦ ((−1+⟨x,x⟩)/2, x, (1+⟨x,x⟩)/2)`,
//! * `S⁴₁ → Q⁴₁`, `x ↦ (x, 1)`,
//! * `H⁴₁ → Q⁴₁`, `x ↦ (1, x)`,
//!
//! laid out so that timelike coordinates land in slots 4 and 5.

pub mod catalog;
pub mod dsl;
pub mod templates;

use std::collections::BTreeMap;
use std::fmt;
use std::sync::Arc;

use serde::{Deserialize, Serialize};

use crate::error::{GeomError, Result};
use crate::grid::{sample_points, sweep, GridSpec};
use crate::jet_calculus::{seed_point, Jet, JetVec6};
use crate::pseudo_euclidean::{Motion, Vec6};

/// Parameter rectangle `[u0,u1] × [v0,v1]`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct Domain {
    pub u0: f64,
    pub u1: f64,
    pub v0: f64,
    pub v1: f64,
}

impl Domain {
    pub fn new(u0: f64, u1: f64, v0: f64, v1: f64) -> Self {
        Domain { u0, u1, v0, v1 }
    }

    pub fn area(&self) -> f64 {
        (self.u1 - self.u0) * (self.v1 - self.v0)
    }
}

pub type ChartEval = dyn Fn(&Jet, &Jet) -> Result<JetVec6> + Send + Sync;

/// A light-cone lift over a parameter rectangle.
#[derive(Clone)]
pub struct SurfaceChart {
    pub name: String,
    pub params: BTreeMap<String, f64>,
    pub domain: Domain,
    pub periodic_u: bool,
    pub periodic_v: bool,
    eval: Arc<ChartEval>,
}

impl fmt::Debug for SurfaceChart {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("SurfaceChart")
            .field("name", &self.name)
            .field("params", &self.params)
            .field("domain", &self.domain)
            .field("periodic_u", &self.periodic_u)
            .field("periodic_v", &self.periodic_v)
            .finish_non_exhaustive()
    }
}

impl SurfaceChart {
    pub fn new(
        name: impl Into<String>,
        domain: Domain,
        eval: impl Fn(&Jet, &Jet) -> Result<JetVec6> + Send + Sync + 'static,
    ) -> Self {
        SurfaceChart {
            name: name.into(),
            params: BTreeMap::new(),
            domain,
            periodic_u: false,
            periodic_v: false,
            eval: Arc::new(eval),
        }
    }

    pub fn with_params(mut self, params: BTreeMap<String, f64>) -> Self {
        self.params = params;
        self
    }

    pub fn with_periodicity(mut self, periodic_u: bool, periodic_v: bool) -> Self {
        self.periodic_u = periodic_u;
        self.periodic_v = periodic_v;
        self
    }

    pub fn with_domain(mut self, domain: Domain) -> Self {
        self.domain = domain;
        self
    }

    /// Evaluates the lift on coordinate jets.
    pub fn eval_jets(&self, u: &Jet, v: &Jet) -> Result<JetVec6> {
        (self.eval)(u, v)
    }

    /// Jet of the lift at `(u, v)` to the given order.
    pub fn eval_at(&self, u: f64, v: f64, order: usize) -> Result<JetVec6> {
        let (ju, jv) = seed_point(u, v, order);
        self.eval_jets(&ju, &jv)
    }

    /// The lift's value at `(u, v)`.
    pub fn point(&self, u: f64, v: f64) -> Result<Vec6> {
        Ok(self.eval_at(u, v, 0)?.value_re())
    }

    /// The same surface moved by an O(4,2) motion.
    pub fn transformed(&self, motion: &Motion) -> SurfaceChart {
        let inner = self.eval.clone();
        let m = *motion;
        SurfaceChart {
            name: format!("moved({})", self.name),
            eval: Arc::new(move |u, v| Ok(inner(u, v)?.transform(&m))),
            ..self.clone()
        }
    }

    /// Reparametrizes by `(u, v) ↦ (c u, c v)`, i.e. `z ↦ c z`, with the
    /// domain shrunk accordingly.
    pub fn rescaled(&self, c: f64) -> SurfaceChart {
        let inner = self.eval.clone();
        let d = self.domain;
        SurfaceChart {
            name: format!("rescaled({})", self.name),
            domain: Domain::new(d.u0 / c, d.u1 / c, d.v0 / c, d.v1 / c),
            eval: Arc::new(move |u, v| inner(&u.scale_re(c), &v.scale_re(c))),
            ..self.clone()
        }
    }
}

/// `φ₀`: the conformal embedding of `ℝ⁴₁` (last coordinate timelike).
pub fn embed_flat(x: &[Jet; 4]) -> JetVec6 {
    let q = &(&(&(&x[0] * &x[0]) + &(&x[1] * &x[1])) + &(&x[2] * &x[2])) - &(&x[3] * &x[3]);
    let half = 0.5;
    JetVec6([
        q.add_const((-1.0).into()).scale_re(half),
        x[0].clone(),
        x[1].clone(),
        x[2].clone(),
        x[3].clone(),
        q.add_const(1.0.into()).scale_re(half),
    ])
}

fn quadric_value(x: &[Jet; 5], signs: [f64; 5]) -> f64 {
    x.iter().zip(signs).map(|(c, s)| s * (c.value() * c.value()).re).sum()
}

const QUADRIC_TOL: f64 = 1e-10;

/// `φ₊`: `S⁴₁ = {⟨x,x⟩ = 1} ⊂ ℝ⁵₁ → Q⁴₁`, `x ↦ (x, 1)`.
pub fn embed_desitter(x: &[Jet; 5]) -> Result<JetVec6> {
    let q = quadric_value(x, [1.0, 1.0, 1.0, 1.0, -1.0]);
    if (q - 1.0).abs() > QUADRIC_TOL {
        return Err(GeomError::NotOnQuadric {
            expected: 1.0,
            residual: q - 1.0,
        });
    }
    let order = x.iter().map(Jet::order).min().unwrap();
    Ok(JetVec6([
        x[0].clone(),
        x[1].clone(),
        x[2].clone(),
        x[3].clone(),
        x[4].clone(),
        Jet::real(1.0, order),
    ]))
}

/// `φ₋`: `H⁴₁ = {⟨x,x⟩ = −1} ⊂ ℝ⁵₂ → Q⁴₁`, `x ↦ (1, x)`.
pub fn embed_antidesitter(x: &[Jet; 5]) -> Result<JetVec6> {
    let q = quadric_value(x, [1.0, 1.0, 1.0, -1.0, -1.0]);
    if (q + 1.0).abs() > QUADRIC_TOL {
        return Err(GeomError::NotOnQuadric {
            expected: -1.0,
            residual: q + 1.0,
        });
    }
    let order = x.iter().map(Jet::order).min().unwrap();
    Ok(JetVec6([
        Jet::real(1.0, order),
        x[0].clone(),
        x[1].clone(),
        x[2].clone(),
        x[3].clone(),
        x[4].clone(),
    ]))
}

/// Lift of a surface in Euclidean `ℝ³`: `φ₀(u, 1)`, i.e.
/// `(|u|²/2 − 1, u, 1, |u|²/2)`.
pub fn lift_euclidean3(x: &[Jet; 3]) -> JetVec6 {
    let order = x.iter().map(Jet::order).min().unwrap();
    embed_flat(&[x[0].clone(), x[1].clone(), x[2].clone(), Jet::real(1.0, order)])
}

/// Lift of a surface in `ℝ³₁` (last coordinate timelike):
/// `(⟨u,u⟩/2, 1, u, ⟨u,u⟩/2 + 1)`.
pub fn lift_minkowski3(x: &[Jet; 3]) -> JetVec6 {
    let order = x.iter().map(Jet::order).min().unwrap();
    embed_flat(&[Jet::real(1.0, order), x[0].clone(), x[1].clone(), x[2].clone()])
}

/// Laguerre lift `(n, u·n, −u·n, 1)` of a surface with unit normal `n` and
/// support function `u·n`.
pub fn lift_laguerre(n: &[Jet; 3], support: &Jet) -> JetVec6 {
    let order = n.iter().map(Jet::order).min().unwrap().min(support.order());
    JetVec6([
        n[0].clone(),
        n[1].clone(),
        n[2].clone(),
        support.clone(),
        -support,
        Jet::real(1.0, order),
    ])
}

/// Worst-case violations of the chart invariants over a grid.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct ChartCheck {
    /// `max |⟨Y,Y⟩| / ‖Y‖²`.
    pub null_residual: f64,
    /// `max |⟨Y_z,Y_z⟩| / ⟨Y_z,Y_z̄⟩`.
    pub conformal_residual: f64,
    /// `min ⟨Y_z,Y_z̄⟩ / ‖Y‖²`; positive for a spacelike chart.
    pub min_metric: f64,
}

/// Checks light-cone membership, conformality and spacelikeness on a grid.
pub fn check_chart(chart: &SurfaceChart, grid: GridSpec) -> Result<ChartCheck> {
    let pts = sample_points(&chart.domain, chart.periodic_u, chart.periodic_v, grid);
    let rows = sweep(&pts, |u, v| -> Result<(f64, f64, f64)> {
        let y = chart.eval_at(u, v, 1)?;
        let yz = y.d_z()?;
        let yv = y.value();
        let scale = yv.euclidean_norm().powi(2);
        let nul = yv.inner(&yv).norm() / scale;
        let zz = yz.value().inner(&yz.value()).norm();
        let zzb = yz.value().inner(&yz.value().conj()).re;
        Ok((nul, zz / zzb.abs().max(f64::MIN_POSITIVE), zzb / scale))
    });
    let mut out = ChartCheck {
        null_residual: 0.0,
        conformal_residual: 0.0,
        min_metric: f64::INFINITY,
    };
    for r in rows {
        let (a, b, c) = r?;
        out.null_residual = out.null_residual.max(a);
        out.conformal_residual = out.conformal_residual.max(b);
        out.min_metric = out.min_metric.min(c);
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::pseudo_euclidean::inner;
    use proptest::prelude::*;

    fn consts<const N: usize>(x: [f64; N]) -> [Jet; N] {
        x.map(|c| Jet::real(c, 2))
    }

    #[test]
    fn flat_origin() {
        let y = embed_flat(&consts([0.0; 4])).value_re();
        assert_eq!(y, Vec6([-0.5, 0.0, 0.0, 0.0, 0.0, 0.5]));
        assert_eq!(inner(&y, &y), 0.0);
    }

    #[test]
    fn flat_unit_vector_gap() {
        let y = embed_flat(&consts([0.6, 0.0, 0.8, 0.0])).value_re();
        assert!((y.0[5] - y.0[0] - 1.0).abs() < 1e-15);
    }

    #[test]
    fn desitter_and_antidesitter_points() {
        let y = embed_desitter(&consts([1.0, 0.0, 0.0, 0.0, 0.0])).unwrap().value_re();
        assert_eq!(y, Vec6([1.0, 0.0, 0.0, 0.0, 0.0, 1.0]));
        // 0.09 + 0.16 − 1 − 0.25 = −1
        let y = embed_antidesitter(&consts([0.3, 0.4, 0.0, 1.0, 0.5]))
            .unwrap()
            .value_re();
        assert!(inner(&y, &y).abs() < 1e-14);
        assert!(matches!(
            embed_desitter(&consts([0.5, 0.0, 0.0, 0.0, 0.0])),
            Err(GeomError::NotOnQuadric { .. })
        ));
    }

    #[test]
    fn flat_embedding_is_conformal_on_graphs() {
        // graph (u, v, f, g) with f, g chosen arbitrarily: the metric of the
        // lift equals the induced metric of the graph in ℝ⁴₁.
        let (u0, v0) = (0.2, -0.4);
        let (u, v) = seed_point(u0, v0, 2);
        let f = (&u * &v).scale_re(0.3);
        let g = (&u - &v).scale_re(0.2).sin();
        let x = [u.clone(), v.clone(), f.clone(), g.clone()];
        let y = embed_flat(&x);
        let yu = y.d_u().unwrap().value_re();
        let yv = y.d_v().unwrap().value_re();
        let xu: Vec<f64> = x.iter().map(|c| c.d_u().unwrap().value().re).collect();
        let xv: Vec<f64> = x.iter().map(|c| c.d_v().unwrap().value().re).collect();
        let mink = |a: &[f64], b: &[f64]| a[0] * b[0] + a[1] * b[1] + a[2] * b[2] - a[3] * b[3];
        assert!((inner(&yu, &yu) - mink(&xu, &xu)).abs() < 1e-14);
        assert!((inner(&yu, &yv) - mink(&xu, &xv)).abs() < 1e-14);
        assert!((inner(&yv, &yv) - mink(&xv, &xv)).abs() < 1e-14);
    }

    proptest! {
        #[test]
        fn flat_lift_is_null(x in prop::array::uniform4(-5.0f64..5.0)) {
            let y = embed_flat(&consts(x)).value_re();
            prop_assert!(inner(&y, &y).abs() < 1e-14 * (1.0 + y.euclidean_norm().powi(2)));
        }

        #[test]
        fn quadric_lifts_are_null(a in prop::array::uniform4(-2.0f64..2.0)) {
            // S⁴₁: scale a to |a|² = 2 and take x₅ = 1.
            let n2: f64 = a.iter().map(|c| c * c).sum();
            prop_assume!(n2 > 1e-3);
            let s = (2.0 / n2).sqrt();
            let a = a.map(|c| c * s);
            let x5 = 1.0;
            let y = embed_desitter(&consts([a[0], a[1], a[2], a[3], x5])).unwrap().value_re();
            prop_assert!(inner(&y, &y).abs() < 1e-12);
            // H⁴₁: (b₀,b₁,b₂, b₃,b₄) with b₀²+b₁²+b₂² − b₃² − b₄² = −1.
            let w = (a[0] * a[0] + a[1] * a[1] + a[2] * a[2] + 1.0).sqrt();
            let y = embed_antidesitter(&consts([a[0], a[1], a[2], w, 0.0])).unwrap().value_re();
            prop_assert!(inner(&y, &y).abs() < 1e-12);
        }
    }
}
