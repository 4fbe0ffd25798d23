//! Canonical lift, adapted frame `{Y, Y_z, Y_z̄, N, L, R}` and the pointwise
//! invariants of a spacelike surface, all as jets.
//!
//! Order ledger for a chart evaluated at jet order `K`:
//!
//! | field                              | order |
//! |------------------------------------|-------|
//! | `Y`                                | K−1   |
//! | `Y_z`                              | K−2   |
//! | `Y_zz`, `N`, `L`, `R`, `λ`, `s`, `β` | K−3   |
//! | `α`, `γ`, `μ`, `σ`, `Θ`             | K−4   |
//! | `ρ`, Willmore residual             | K−5   |
//!
//! The canonical normalization itself consumes one order, because the scale
//! factor depends on first derivatives of the raw lift.

use num_complex::Complex64;
use serde::Serialize;

use crate::error::{GeomError, Result};
use crate::jet_calculus::{combine, Jet, JetVec6};
use crate::pseudo_euclidean::{det6, gram_wedge_inner, Vec6};
use crate::surfaces::SurfaceChart;

/// Default jet order for base charts.
pub const DEFAULT_ORDER: usize = 8;
/// `|λ| < UMBILIC_TOL·(1+|s|)` marks a vanishing Hopf component.
pub const UMBILIC_TOL: f64 = 1e-8;
/// `⟨Y_z,Y_z̄⟩ ≤ SPACELIKE_TOL·‖Y‖²` is treated as a non-spacelike point.
pub const SPACELIKE_TOL: f64 = 1e-12;
/// Minimum relative Gram determinant of the normal plane.
pub const NORMAL_PLANE_TOL: f64 = 1e-10;
/// A gauge reference is used as soon as both null normals pair with it at
/// least this strongly (relative to their Euclidean length).
pub const GAUGE_ACCEPT: f64 = 0.1;
/// Hard floor for a usable gauge pairing.
pub const GAUGE_MIN: f64 = 1e-8;

/// Gauge references, tried in order.
pub const GAUGE_CANDIDATES: [usize; 6] = [4, 3, 0, 1, 2, 5];

const I: Complex64 = Complex64::new(0.0, 1.0);

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct FrameOptions {
    /// Fixed gauge reference `W`; when `None` the first good candidate among
    /// the basis vectors `e₄, e₃, e₀, e₁, e₂, e₅` is used.
    pub gauge_reference: Option<Vec6>,
    pub umbilic_tol: f64,
}

impl Default for FrameOptions {
    fn default() -> Self {
        FrameOptions {
            gauge_reference: None,
            umbilic_tol: UMBILIC_TOL,
        }
    }
}

/// The adapted frame at a point.
#[derive(Debug, Clone)]
pub struct FramePoint {
    pub u: f64,
    pub v: f64,
    pub y: JetVec6,
    pub yz: JetVec6,
    pub yzbar: JetVec6,
    pub yzz: JetVec6,
    pub yzzbar: JetVec6,
    pub n: JetVec6,
    pub l: JetVec6,
    pub r: JetVec6,
    /// `det(Y, Y_u, Y_v, N, R, L)` in the standard basis; negative by
    /// construction.
    pub orientation_det: f64,
    pub gauge_reference: Vec6,
}

/// `Y = raw / √(2⟨raw_z, raw_z̄⟩)`, so that `⟨Y_z, Y_z̄⟩ = ½`.
pub fn canonical_lift(raw: &JetVec6) -> Result<JetVec6> {
    let raw = raw.re();
    let rz = raw.d_z()?;
    let m = rz.inner(&rz.conj()).re();
    let scale = raw.value_re().euclidean_norm().powi(2);
    let m0 = m.value().re;
    if !(m0 > SPACELIKE_TOL * scale) {
        return Err(GeomError::NotSpacelike { value: m0 });
    }
    let k = m.scale_re(2.0).sqrt()?;
    raw.truncate(m.order()).div(&k)
}

/// Orthogonal projection onto the central sphere `V = span{Y, Y_z, Y_z̄, N}`.
pub fn project_onto_v(w: &JetVec6, y: &JetVec6, yz: &JetVec6, n: &JetVec6) -> JetVec6 {
    let yzb = yz.conj();
    let a = -w.inner(n);
    let b = -w.inner(y);
    let c = w.inner(&yzb).scale_re(2.0);
    let d = w.inner(yz).scale_re(2.0);
    combine(&[(&a, y), (&b, n), (&c, yz), (&d, &yzb)])
}

fn constant_basis(i: usize, order: usize) -> JetVec6 {
    JetVec6::constant(&Vec6::basis(i), order)
}

fn euclid(v: &JetVec6) -> f64 {
    v.value().euclidean_norm()
}

/// Orthonormal `(e₊, e₋)` of the Lorentzian normal plane from two spanning
/// vectors.
fn normal_pair(a: &JetVec6, b: &JetVec6) -> Result<(JetVec6, JetVec6)> {
    let sum = a + b;
    let diff = a - b;
    let cands = [a, b, &sum, &diff];
    let score = |x: &JetVec6| x.inner(x).value().re / euclid(x).powi(2).max(f64::MIN_POSITIVE);
    let (best, _) = cands
        .iter()
        .enumerate()
        .map(|(i, x)| (i, score(x)))
        .max_by(|p, q| p.1.abs().total_cmp(&q.1.abs()))
        .unwrap();
    let first = cands[best];
    let other = if best == 1 { a } else { b };
    let q = first.inner(first);
    if q.value().re > 0.0 {
        let ep = first.div(&q.sqrt()?)?;
        let rest = other - &ep.scale(&other.inner(&ep));
        let qq = -rest.inner(&rest);
        let em = rest.div(&qq.re().sqrt()?)?;
        Ok((ep, em))
    } else {
        let em = first.div(&(-&q).re().sqrt()?)?;
        let rest = &other.truncate(em.order()) + &em.scale(&other.inner(&em));
        let qq = rest.inner(&rest);
        let ep = rest.div(&qq.re().sqrt()?)?;
        Ok((ep, em))
    }
}

fn gauge_pairing(l: &JetVec6, r: &JetVec6, w: &Vec6) -> f64 {
    let lw = l.inner_const(w).value().re.abs() / euclid(l);
    let rw = r.inner_const(w).value().re.abs() / euclid(r);
    lw.min(rw) / w.euclidean_norm()
}

/// Builds the frame from a raw light-cone lift jet.
pub fn frame_from_lift(raw: &JetVec6, u: f64, v: f64, opts: &FrameOptions) -> Result<FramePoint> {
    let y = canonical_lift(raw)?;
    let yz = y.d_z()?;
    let yzbar = yz.conj();
    let yzz = yz.d_z()?;
    let yzzbar = yz.d_zbar()?.re();
    let order = yzz.order();
    let y3 = y.truncate(order);
    let yz3 = yz.truncate(order);
    let c = yzzbar.inner(&yzzbar);
    let n = (&yzzbar.scale_re(2.0) + &y3.scale(&c.scale_re(2.0))).re();

    // Normal plane: project the standard basis and keep the pair with the
    // largest Gram determinant.
    let perps: Vec<JetVec6> = (0..6)
        .map(|i| {
            let e = constant_basis(i, order);
            (&e - &project_onto_v(&e, &y3, &yz3, &n)).re()
        })
        .collect();
    let mut best = (0, 1, 0.0f64, 0.0f64);
    for i in 0..6 {
        for j in i + 1..6 {
            let (a, b) = (perps[i].value_re(), perps[j].value_re());
            // projections of basis vectors that nearly lie in V carry only
            // rounding noise
            if a.euclidean_norm() < 1e-6 || b.euclidean_norm() < 1e-6 {
                continue;
            }
            let det = gram_wedge_inner(&[a, b], &[a, b]);
            let rel = det / (a.euclidean_norm().powi(2) * b.euclidean_norm().powi(2)).max(f64::MIN_POSITIVE);
            // the basis vectors have unit length, so |det| also measures
            // how much of each survives the projection
            if det.abs() > best.2.abs() {
                best = (i, j, det, rel);
            }
        }
    }
    if !(best.3 < -NORMAL_PLANE_TOL) {
        return Err(GeomError::NormalPlaneDegenerate { det: best.2 });
    }
    let (mut ep, em) = normal_pair(&perps[best.0], &perps[best.1])?;

    let yv = y.value_re();
    let yu = yz.value().re().scale(2.0);
    let yvv = yz.value().im().scale(-2.0);
    let nv = n.value_re();
    let sqrt_half = std::f64::consts::FRAC_1_SQRT_2;
    let orient = |ep: &JetVec6| {
        let l = (&em - ep).value_re().scale(sqrt_half);
        let r = (&em + ep).value_re().scale(sqrt_half);
        det6([yv, yu, yvv, nv, r, l])
    };
    let mut det = orient(&ep);
    if det > 0.0 {
        ep = -&ep;
        det = -det;
    }
    let l0 = (&em - &ep).scale_re(sqrt_half);
    let r0 = (&em + &ep).scale_re(sqrt_half);

    let w = match opts.gauge_reference {
        Some(w) => {
            let p = gauge_pairing(&l0, &r0, &w);
            if !(p >= GAUGE_MIN) {
                return Err(GeomError::GaugeReferenceDegenerate { best: p });
            }
            w
        }
        None => {
            let mut best_w = (Vec6::basis(GAUGE_CANDIDATES[0]), -1.0);
            for &i in &GAUGE_CANDIDATES {
                let w = Vec6::basis(i);
                let p = gauge_pairing(&l0, &r0, &w);
                if p >= GAUGE_ACCEPT {
                    best_w = (w, p);
                    break;
                }
                if p > best_w.1 {
                    best_w = (w, p);
                }
            }
            if !(best_w.1 >= GAUGE_MIN) {
                return Err(GeomError::GaugeReferenceDegenerate { best: best_w.1 });
            }
            best_w.0
        }
    };
    let lw = l0.inner_const(&w);
    let rw = r0.inner_const(&w);
    let mut gauge = rw.abs_re().div(&lw.abs_re())?.sqrt()?;
    if lw.value().re > 0.0 {
        gauge = -gauge;
    }
    let l = l0.scale(&gauge);
    let r = r0.div(&gauge)?;

    Ok(FramePoint {
        u,
        v,
        y,
        yz,
        yzbar,
        yzz,
        yzzbar,
        n,
        l,
        r,
        orientation_det: det,
        gauge_reference: w,
    })
}

pub fn frame_at(chart: &SurfaceChart, u: f64, v: f64, order: usize) -> Result<FramePoint> {
    frame_at_with(chart, u, v, order, &FrameOptions::default())
}

pub fn frame_at_with(chart: &SurfaceChart, u: f64, v: f64, order: usize, opts: &FrameOptions) -> Result<FramePoint> {
    let raw = chart.eval_at(u, v, order)?;
    frame_from_lift(&raw, u, v, opts)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum PointClass {
    Umbilic,
    NullUmbilic,
    Generic,
}

impl PointClass {
    pub fn as_str(self) -> &'static str {
        match self {
            PointClass::Umbilic => "umbilic",
            PointClass::NullUmbilic => "null_umbilic",
            PointClass::Generic => "generic",
        }
    }
}

/// The invariants of a point, as jets.
#[derive(Debug, Clone)]
pub struct InvariantSet {
    pub lambda1: Jet,
    pub lambda2: Jet,
    pub s: Jet,
    pub alpha: Jet,
    pub beta: Jet,
    pub gamma1: Jet,
    pub gamma2: Jet,
    /// `⟨κ, κ̄⟩ = −β`.
    pub kappa_pair: Jet,
    /// `⟨κ, κ⟩ = −2λ₁λ₂`.
    pub kappa_iso: Jet,
    /// `μ̄ = −2γ₂/λ₂` where `λ₂` does not vanish.
    pub mubar_left: Option<Jet>,
    /// `μ̄₁ = −2γ₁/λ₁` where `λ₁` does not vanish.
    pub mubar_right: Option<Jet>,
    /// `Θ = (λ₁γ₂ − λ₂γ₁)²`.
    pub theta: Jet,
    /// `ρ = μ̄_z + 2β` (left `μ`); needs order `K ≥ 5`.
    pub rho: Option<Jet>,
    /// `σ = 2γ₁ + λ₁μ̄`.
    pub sigma: Option<Jet>,
    pub class: PointClass,
}

impl InvariantSet {
    pub fn mu_left(&self) -> Option<Jet> {
        self.mubar_left.as_ref().map(Jet::conj)
    }

    pub fn mu_right(&self) -> Option<Jet> {
        self.mubar_right.as_ref().map(Jet::conj)
    }

    pub fn lambda_degenerate(&self, which: usize, tol: f64) -> bool {
        let lam = if which == 1 { &self.lambda1 } else { &self.lambda2 };
        lam.value().norm() < tol * (1.0 + self.s.value().norm())
    }
}

/// `−⟨Y_zz, R⟩`, `−⟨Y_zz, L⟩` and `2⟨Y_zz, N⟩`.
pub fn hopf_components(f: &FramePoint) -> (Jet, Jet, Jet) {
    let l1 = -f.yzz.inner(&f.r);
    let l2 = -f.yzz.inner(&f.l);
    let s = f.yzz.inner(&f.n).scale_re(2.0);
    (l1, l2, s)
}

/// `β = λ₁λ̄₂ + λ₂λ̄₁`; only needs a frame of order 3.
pub fn beta_of(l1: &Jet, l2: &Jet) -> Jet {
    &(l1 * &l2.conj()) + &(l2 * &l1.conj())
}

pub fn classify(l1: Complex64, l2: Complex64, s: Complex64, tol: f64) -> PointClass {
    let t = tol * (1.0 + s.norm());
    match (l1.norm() < t, l2.norm() < t) {
        (true, true) => PointClass::Umbilic,
        (false, false) => PointClass::Generic,
        _ => PointClass::NullUmbilic,
    }
}

pub fn classify_point(inv: &InvariantSet) -> PointClass {
    inv.class
}

pub fn invariants_from_frame(f: &FramePoint, opts: &FrameOptions) -> Result<InvariantSet> {
    let (lambda1, lambda2, s) = hopf_components(f);
    let alpha = -f.l.d_z()?.inner(&f.r);
    let beta = beta_of(&lambda1, &lambda2);
    let abar = alpha.conj();
    let gamma1 = &crate::jet_calculus::wirtinger_zbar(&lambda1)? + &(&lambda1 * &abar);
    let gamma2 = &crate::jet_calculus::wirtinger_zbar(&lambda2)? - &(&lambda2 * &abar);
    let class = classify(lambda1.value(), lambda2.value(), s.value(), opts.umbilic_tol);
    let tol = opts.umbilic_tol * (1.0 + s.value().norm());
    let mubar = |g: &Jet, l: &Jet| -> Result<Option<Jet>> {
        if l.value().norm() < tol {
            Ok(None)
        } else {
            Ok(Some(g.div(l)?.scale_re(-2.0)))
        }
    };
    let mubar_left = mubar(&gamma2, &lambda2)?;
    let mubar_right = mubar(&gamma1, &lambda1)?;
    let d = &(&lambda1 * &gamma2) - &(&lambda2 * &gamma1);
    let theta = &d * &d;
    let rho = match &mubar_left {
        Some(m) if m.order() >= 1 => Some(&crate::jet_calculus::wirtinger_z(m)? + &beta.scale_re(2.0)),
        _ => None,
    };
    let sigma = mubar_left.as_ref().map(|m| &gamma1.scale_re(2.0) + &(&lambda1 * m));
    Ok(InvariantSet {
        kappa_pair: -&beta,
        kappa_iso: (&lambda1 * &lambda2).scale_re(-2.0),
        lambda1,
        lambda2,
        s,
        alpha,
        beta,
        gamma1,
        gamma2,
        mubar_left,
        mubar_right,
        theta,
        rho,
        sigma,
        class,
    })
}

pub fn invariants_at(chart: &SurfaceChart, u: f64, v: f64, order: usize) -> Result<InvariantSet> {
    invariants_at_with(chart, u, v, order, &FrameOptions::default())
}

pub fn invariants_at_with(
    chart: &SurfaceChart,
    u: f64,
    v: f64,
    order: usize,
    opts: &FrameOptions,
) -> Result<InvariantSet> {
    let f = frame_at_with(chart, u, v, order, opts)?;
    invariants_from_frame(&f, opts)
}

/// `⟨κ, κ̄⟩` at a point, from a frame of order 3.
pub fn kappa_pair_at(chart: &SurfaceChart, u: f64, v: f64, opts: &FrameOptions) -> Result<f64> {
    let f = frame_at_with(chart, u, v, 3, opts)?;
    let (l1, l2, _) = hopf_components(&f);
    Ok(-beta_of(&l1, &l2).value().re)
}

/// Conformal Gauss map data at a point.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct GaussData {
    /// `⟨G, G⟩` for `G = Y∧Y_u∧Y_v∧N`.
    pub gram: f64,
    /// Conformal factor of `¼⟨dG, dG⟩` in the `z` chart.
    pub quarter_dg2: f64,
    pub kappa_pair: f64,
}

/// Sign that makes the wedge pairing of the central sphere positive: the
/// Gram determinant of a Lorentzian 4-frame is negative.
const LAMBDA4_SIGN: f64 = -1.0;

pub fn conformal_gauss_data(chart: &SurfaceChart, u: f64, v: f64) -> Result<GaussData> {
    conformal_gauss_data_with(chart, u, v, &FrameOptions::default())
}

pub fn conformal_gauss_data_with(chart: &SurfaceChart, u: f64, v: f64, opts: &FrameOptions) -> Result<GaussData> {
    let f = frame_at_with(chart, u, v, 4, opts)?;
    let y = f.y.re();
    let yu = y.d_u()?;
    let yv = y.d_v()?;
    let factors = [y.clone(), yu.clone(), yv.clone(), f.n.clone()];
    let val = |j: &JetVec6| j.value_re();
    let g: [Vec6; 4] = factors.each_ref().map(val);
    let gram = LAMBDA4_SIGN * gram_wedge_inner(&g, &g);

    let dir = |d: &dyn Fn(&JetVec6) -> Result<JetVec6>| -> Result<f64> {
        let derivs: Vec<Vec6> = factors.iter().map(|x| d(x).map(|j| val(&j))).collect::<Result<_>>()?;
        let mut acc = 0.0;
        for i in 0..4 {
            let mut a = g;
            a[i] = derivs[i];
            for (j, dj) in derivs.iter().enumerate() {
                let mut b = g;
                b[j] = *dj;
                acc += gram_wedge_inner(&a, &b);
            }
        }
        Ok(LAMBDA4_SIGN * acc)
    };
    let guu = dir(&|x: &JetVec6| x.d_u())?;
    let gvv = dir(&|x: &JetVec6| x.d_v())?;
    let (l1, l2, _) = hopf_components(&f);
    Ok(GaussData {
        gram,
        quarter_dg2: (guu + gvv) / 8.0,
        kappa_pair: -beta_of(&l1, &l2).value().re,
    })
}

/// Real basis `{Y, Re Y_z, Im Y_z, N}` of the central sphere.
pub fn central_sphere_at(chart: &SurfaceChart, u: f64, v: f64) -> Result<[Vec6; 4]> {
    let f = frame_at(chart, u, v, 3)?;
    Ok(central_sphere_basis(&f))
}

pub fn central_sphere_basis(f: &FramePoint) -> [Vec6; 4] {
    let yz = f.yz.value();
    [f.y.value_re(), yz.re(), yz.im(), f.n.value_re()]
}

/// Relative distance of a vector from the central sphere at a frame.
pub fn central_sphere_residual(f: &FramePoint, w: &JetVec6) -> f64 {
    let order = f.n.order().min(w.order());
    let w = w.truncate(order);
    let p = project_onto_v(&w, &f.y.truncate(order), &f.yz.truncate(order), &f.n.truncate(order));
    (&w - &p).value().euclidean_norm() / euclid(&w).max(f64::MIN_POSITIVE)
}

/// `Y_u`, `Y_v` from `Y_z`.
pub fn tangent_basis(f: &FramePoint) -> (Vec6, Vec6) {
    let yz = f.yz.value();
    (yz.re().scale(2.0), yz.im().scale(-2.0))
}

/// Multiplies by `i`; handy for assembling Wirtinger expressions.
pub fn times_i(j: &Jet) -> Jet {
    j.scale(I)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::pseudo_euclidean::{inner, projective_distance_vec};
    use crate::surfaces::catalog;

    fn c(re: f64, im: f64) -> Complex64 {
        Complex64::new(re, im)
    }

    #[test]
    fn torus_frame_matches_closed_form() {
        let t = 2.0f64;
        let r = (t * t - 1.0).sqrt();
        let chart = catalog::homogeneous_torus(t).unwrap();
        let f = frame_at(&chart, 0.0, 0.0, DEFAULT_ORDER).unwrap();
        let n = f.n.value_re();
        let want = Vec6([-0.5, 0.0, 0.0, 0.0, 0.5, 0.0]);
        assert!((n - want).euclidean_norm() < 1e-12, "{n:?}");
        // L at θ = φ = 0: (√(t²−1) e₄ + e₃, 0, t)/(√2 √(t²−1)), with
        // e₃ = (0,0,1,0) and e₄ = (0,0,0,1).
        let l_ref = Vec6([0.0, 0.0, 1.0, r, 0.0, t]);
        let r_ref = Vec6([0.0, 0.0, 1.0, -r, 0.0, t]);
        assert!(projective_distance_vec(&f.l.value_re(), &l_ref).unwrap() < 1e-12);
        assert!(projective_distance_vec(&f.r.value_re(), &r_ref).unwrap() < 1e-12);
    }

    #[test]
    fn frame_relations_hold() {
        let chart = catalog::homogeneous_torus(1.5).unwrap();
        for (u, v) in [(0.3, 0.1), (2.0, 4.0)] {
            let f = frame_at(&chart, u, v, 6).unwrap();
            let y = f.y.value();
            let yz = f.yz.value();
            let n = f.n.value();
            let (l, r) = (f.l.value(), f.r.value());
            let checks = [
                y.inner(&y),
                yz.inner(&yz),
                yz.inner(&yz.conj()) - 0.5,
                n.inner(&yz),
                n.inner(&n),
                n.inner(&y) + 1.0,
                l.inner(&l),
                r.inner(&r),
                l.inner(&r) + 1.0,
                l.inner(&y),
                l.inner(&yz),
                l.inner(&n),
                r.inner(&y),
                r.inner(&yz),
                r.inner(&n),
            ];
            for (i, x) in checks.iter().enumerate() {
                assert!(x.norm() < 1e-10, "relation {i}: {x}");
            }
            assert!(f.orientation_det < 0.0);
        }
    }

    #[test]
    fn canonical_lift_is_projective() {
        let chart = catalog::minimal_lift(catalog::MinimalKind::Catenoid);
        let raw = chart.eval_at(0.3, 0.7, 5).unwrap();
        let a = canonical_lift(&raw).unwrap();
        let b = canonical_lift(&raw.scale_re(2.0)).unwrap();
        assert!((&a - &b).max_abs() < 1e-12);
        let yz = a.d_z().unwrap();
        let m = yz.inner(&yz.conj());
        assert!((m.value() - c(0.5, 0.0)).norm() < 1e-12);
        // the identity holds as a jet, not only at the point
        assert!(m.add_const(c(-0.5, 0.0)).max_abs() < 1e-12);
    }

    #[test]
    fn torus_scale_is_trivial() {
        let chart = catalog::homogeneous_torus(2.0).unwrap();
        let raw = chart.eval_at(0.4, 0.2, 6).unwrap();
        let y = canonical_lift(&raw).unwrap();
        assert!((&y - &raw.truncate(y.order())).max_abs() < 1e-14);
    }

    #[test]
    fn torus_invariants() {
        let t = 2.0f64;
        let t2 = t * t;
        let chart = catalog::homogeneous_torus(t).unwrap();
        let inv = invariants_at(&chart, 1.3, 0.6, DEFAULT_ORDER).unwrap();
        assert!((inv.s.value() - c(1.0 / (2.0 * (t2 - 1.0)), 0.0)).norm() < 1e-12);
        assert!((inv.beta.value() - c(-t2 / (4.0 * (t2 - 1.0)), 0.0)).norm() < 1e-12);
        let ll = &inv.lambda1 * &inv.lambda2;
        assert!((ll.value() - c(t2 / (8.0 * (t2 - 1.0)), 0.0)).norm() < 1e-12);
        let mu = inv.mu_left().unwrap();
        assert!((mu.value() - c(0.0, -1.0 / (t2 - 1.0).sqrt())).norm() < 1e-12);
        assert_eq!(inv.class, PointClass::Generic);
    }

    #[test]
    fn plane_is_umbilic() {
        let chart = catalog::plane();
        let inv = invariants_at(&chart, 0.2, -0.3, 6).unwrap();
        assert_eq!(inv.class, PointClass::Umbilic);
        assert!(inv.mubar_left.is_none());
    }

    #[test]
    fn gauss_data_on_torus() {
        let chart = catalog::homogeneous_torus(2.0).unwrap();
        let g = conformal_gauss_data(&chart, 0.7, 1.9).unwrap();
        assert!((g.gram - 1.0).abs() < 1e-10);
        assert!((g.quarter_dg2 - 1.0 / 3.0).abs() < 1e-10, "{g:?}");
        assert!((g.kappa_pair - 1.0 / 3.0).abs() < 1e-12);
    }

    #[test]
    fn central_sphere_is_lorentzian() {
        let chart = catalog::minimal_lift(catalog::MinimalKind::Enneper);
        let b = central_sphere_at(&chart, 0.3, -0.2).unwrap();
        let det = gram_wedge_inner(&b, &b);
        assert!(det < 0.0);
        let f = frame_at(&chart, 0.3, -0.2, 4).unwrap();
        for x in &b {
            assert!(inner(&f.l.value_re(), x).abs() < 1e-10);
            assert!(inner(&f.r.value_re(), x).abs() < 1e-10);
        }
    }
}
