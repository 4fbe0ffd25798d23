//! Pointwise residuals of the structure, integrability, Willmore and
//! holomorphy identities, and grid reports built from them.

use num_complex::Complex64;
use serde::Serialize;

use super::{sweep_report, AnalysisOptions, ResidualReport};
use crate::conformal_frame::{
    central_sphere_residual, conformal_gauss_data_with, frame_at_with, invariants_from_frame, FramePoint, InvariantSet,
};
use crate::error::{GeomError, Result};
use crate::grid::GridSpec;
use crate::jet_calculus::{wirtinger_z, wirtinger_zbar, Jet, JetVec6};
use crate::pseudo_euclidean::CVec6;
use crate::surfaces::SurfaceChart;
use crate::transforms::{adjoint_vector, Side};

/// Default bound on the Willmore residual for operations that assume it.
pub const WILLMORE_GATE: f64 = 1e-6;
/// Default bound on the S-Willmore deviation for operations that assume it.
pub const SWILLMORE_GATE: f64 = 1e-6;

/// Floor added to holomorphy denominators.
const HOLO_FLOOR: f64 = 1e-12;

fn vec_residual(terms: &[(Complex64, CVec6)]) -> f64 {
    let mut sum = CVec6::default();
    let mut scale = 1.0;
    for (c, v) in terms {
        let t = v.scale(*c);
        scale += t.euclidean_norm();
        sum = sum + t;
    }
    sum.euclidean_norm() / scale
}

fn scalar_residual(terms: &[Complex64]) -> f64 {
    let sum: Complex64 = terms.iter().sum();
    sum.norm() / (1.0 + terms.iter().map(|t| t.norm()).sum::<f64>())
}

fn one() -> Complex64 {
    Complex64::new(1.0, 0.0)
}

/// Residuals of the five structure equations at a frame, in order
/// `Y_zz`, `Y_zz̄`, `N_z`, `L_z`, `R_z`.
pub fn structure_residuals(f: &FramePoint, inv: &InvariantSet) -> Result<[f64; 5]> {
    let (l1, l2, s) = (inv.lambda1.value(), inv.lambda2.value(), inv.s.value());
    let (beta, alpha) = (inv.beta.value(), inv.alpha.value());
    let (g1, g2) = (inv.gamma1.value(), inv.gamma2.value());
    let y = f.y.value();
    let yz = f.yz.value();
    let yzb = f.yzbar.value();
    let n = f.n.value();
    let l = f.l.value();
    let r = f.r.value();
    let nz = f.n.d_z()?.value();
    let lz = f.l.d_z()?.value();
    let rz = f.r.d_z()?.value();
    Ok([
        vec_residual(&[(one(), f.yzz.value()), (s * 0.5, y), (-l1, l), (-l2, r)]),
        vec_residual(&[(one(), f.yzzbar.value()), (-beta, y), ((-0.5).into(), n)]),
        vec_residual(&[(one(), nz), (-2.0 * beta, yz), (s, yzb), (-2.0 * g1, l), (-2.0 * g2, r)]),
        vec_residual(&[(one(), lz), (-alpha, l), (2.0 * g2, y), (-2.0 * l2, yzb)]),
        vec_residual(&[(one(), rz), (alpha, r), (2.0 * g1, y), (-2.0 * l1, yzb)]),
    ])
}

/// `W₁ = γ₁_z̄ + γ₁ᾱ + (s̄/2)λ₁` and `W₂ = γ₂_z̄ − γ₂ᾱ + (s̄/2)λ₂`; both vanish
/// exactly on Willmore surfaces, and their imaginary parts vanish on every
/// surface.
pub fn willmore_components(inv: &InvariantSet) -> Result<(Jet, Jet)> {
    let abar = inv.alpha.conj();
    let half_sbar = inv.s.conj().scale_re(0.5);
    let w1 = &(&wirtinger_zbar(&inv.gamma1)? + &(&inv.gamma1 * &abar)) + &(&half_sbar * &inv.lambda1);
    let w2 = &(&wirtinger_zbar(&inv.gamma2)? - &(&inv.gamma2 * &abar)) + &(&half_sbar * &inv.lambda2);
    Ok((w1, w2))
}

/// Residuals of the Gauss equation, the two Codazzi lines and the two Ricci
/// lines, in that order.
pub fn integrability_residuals(f: &FramePoint, inv: &InvariantSet) -> Result<[f64; 5]> {
    let (l1, l2) = (inv.lambda1.value(), inv.lambda2.value());
    let (g1, g2) = (inv.gamma1.value(), inv.gamma2.value());
    let gauss = scalar_residual(&[
        wirtinger_zbar(&inv.s)?.value(),
        2.0 * wirtinger_z(&inv.beta)?.value(),
        4.0 * l1 * g2.conj(),
        4.0 * l2 * g1.conj(),
    ]);

    let abar = inv.alpha.conj().value();
    let sbar_half = inv.s.value().conj() * 0.5;
    let codazzi = |g: &Jet, sign: f64, lam: Complex64| -> Result<f64> {
        let terms = [wirtinger_zbar(g)?.value(), sign * g.value() * abar, sbar_half * lam];
        let im: f64 = terms.iter().map(|t| t.im).sum();
        Ok(im.abs() / (1.0 + terms.iter().map(|t| t.norm()).sum::<f64>()))
    };
    let c1 = codazzi(&inv.gamma1, 1.0, l1)?;
    let c2 = codazzi(&inv.gamma2, -1.0, l2)?;

    let curvature = 2.0 * (l2 * l1.conj() - l2.conj() * l1);
    let ricci = |a: &Jet, sign: f64| -> Result<f64> {
        let az = wirtinger_zbar(a)?.value();
        let abz = wirtinger_z(&a.conj())?.value();
        Ok(scalar_residual(&[az, -abz, -sign * curvature]))
    };
    let r_alpha = -f.r.d_z()?.inner(&f.l);
    let rl = ricci(&inv.alpha, 1.0)?;
    let rr = ricci(&r_alpha, -1.0)?;
    Ok([gauss, c1, c2, rl, rr])
}

fn invariant_scale(inv: &InvariantSet) -> f64 {
    1.0 + inv.lambda1.value().norm()
        + inv.lambda2.value().norm()
        + inv.gamma1.value().norm()
        + inv.gamma2.value().norm()
        + inv.s.value().norm()
}

/// `max(|W₁|, |W₂|) / (|λ₁|+|λ₂|+|γ₁|+|γ₂|+|s|+1)`.
pub fn willmore_at(inv: &InvariantSet) -> Result<f64> {
    let (w1, w2) = willmore_components(inv)?;
    Ok(w1.value().norm().max(w2.value().norm()) / invariant_scale(inv))
}

/// `|λ₁γ₂ − λ₂γ₁| / max(1, |λ₁λ₂|^{3/2})`; gauge invariant.
pub fn swillmore_deviation(inv: &InvariantSet) -> f64 {
    let d = (inv.lambda1.value() * inv.gamma2.value() - inv.lambda2.value() * inv.gamma1.value()).norm();
    let scale = (inv.lambda1.value() * inv.lambda2.value()).norm().powf(1.5).max(1.0);
    d / scale
}

/// `|σ| / (|λ₁|+|λ₂|+|γ₁|+|γ₂|+|s|+1)`, zero where `σ` is undefined.
pub fn sigma_at(inv: &InvariantSet) -> f64 {
    inv.sigma.as_ref().map_or(0.0, |s| s.value().norm()) / invariant_scale(inv)
}

/// Residuals of `ρ_z̄ = μ̄ρ − 2λ̄₂σ` and `σ_z̄ = (−ᾱ + μ̄/2)σ`, which hold on
/// Willmore surfaces.
pub fn rho_sigma_residuals(inv: &InvariantSet) -> Result<[f64; 2]> {
    let degenerate = || GeomError::DegenerateTransform {
        step: "adjoint_left",
        lambda: inv.lambda2.value().norm(),
    };
    let rho = inv.rho.as_ref().ok_or_else(degenerate)?;
    let sigma = inv.sigma.as_ref().ok_or_else(degenerate)?;
    let mubar = inv.mubar_left.as_ref().ok_or_else(degenerate)?.value();
    let (r, s) = (rho.value(), sigma.value());
    let a = scalar_residual(&[
        wirtinger_zbar(rho)?.value(),
        -mubar * r,
        2.0 * inv.lambda2.value().conj() * s,
    ]);
    let coeff = -inv.alpha.value().conj() + mubar * 0.5;
    let b = scalar_residual(&[wirtinger_zbar(sigma)?.value(), -coeff * s]);
    Ok([a, b])
}

/// Tangential part of `(Y∧Ŷ)_zz̄` relative to `|Y|·|Ŷ|`: the tension of
/// `Y∧Ŷ` as a map into the Grassmannian of (1,1)-planes.
pub fn harmonicity_at(f: &FramePoint, yhat: &JetVec6) -> Result<f64> {
    let y = f.y.truncate(yhat.order());
    let yz = y.d_z()?;
    let yzb = y.d_zbar()?;
    let yzzb = yz.d_zbar()?;
    let hz = yhat.d_z()?;
    let hzb = yhat.d_zbar()?;
    let hzzb = hz.d_zbar()?;
    let (yv, hv) = (y.value(), yhat.value());
    let pair = [
        (yzzb.value(), hv),
        (yz.value(), hzb.value()),
        (yzb.value(), hz.value()),
        (yv, hzzb.value()),
    ];
    // coefficients along Y and Ŷ use ⟨Y,Ŷ⟩ = −1
    let yy = yv.inner(&hv);
    let split = |w: &CVec6| -> (Complex64, Complex64, CVec6) {
        let cy = -w.inner(&hv) / (-yy);
        let ch = -w.inner(&yv) / (-yy);
        let perp = *w - yv.scale(cy) - hv.scale(ch);
        (cy, ch, perp)
    };
    let mut a = CVec6::default();
    let mut b = CVec6::default();
    for (p, q) in &pair {
        let (py, ph, pp) = split(p);
        let (qy, qh, qp) = split(q);
        a = a + qp.scale(py) - pp.scale(qy);
        b = b + qp.scale(ph) - pp.scale(qh);
    }
    Ok((a.euclidean_norm() + b.euclidean_norm()) / (yv.euclidean_norm() * hv.euclidean_norm()))
}

/// `|Θ_z̄| / (|Θ| + 1e-12)`.
pub fn theta_holomorphy_at(inv: &InvariantSet) -> Result<f64> {
    let dz = wirtinger_zbar(&inv.theta)?;
    Ok(dz.value().norm() / (inv.theta.value().norm() + HOLO_FLOOR))
}

/// Pointwise data of the 8-form `Ω = 4(ρλ₁λ₂)²`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct OmegaPoint {
    pub omega: Complex64,
    /// `|∂_z̄(ρλ₁λ₂)| / (1 + |ρλ₁λ₂|)`.
    pub holomorphy: f64,
    /// `|∂_z̄(ρλ₁λ₂)| / (|ρλ₁λ₂| + 1e-12)`; meaningless where `ρλ₁λ₂ ≡ 0`.
    pub holomorphy_rel: f64,
    /// `|⟨Ŷ_zz,Ŷ_zz⟩ + 2ρ²λ₁λ₂| / (1 + |2ρ²λ₁λ₂|)`.
    pub cross_check: f64,
}

pub fn omega_at(f: &FramePoint, inv: &InvariantSet, opts: &AnalysisOptions) -> Result<OmegaPoint> {
    let rho = inv.rho.as_ref().ok_or(GeomError::DegenerateTransform {
        step: "adjoint_left",
        lambda: inv.lambda2.value().norm(),
    })?;
    if inv.lambda_degenerate(1, opts.frame.umbilic_tol) {
        return Err(GeomError::DegenerateTransform {
            step: "adjoint_right",
            lambda: inv.lambda1.value().norm(),
        });
    }
    let q = &(rho * &inv.lambda1) * &inv.lambda2;
    let qv = q.value();
    let dq = wirtinger_zbar(&q)?.value().norm();
    let yhat = adjoint_vector(f, inv, Side::Left, &opts.frame)?;
    let hzz = yhat.d_z()?.d_z()?.value();
    let lhs = hzz.inner(&hzz);
    let rhs = -2.0 * rho.value() * rho.value() * inv.lambda1.value() * inv.lambda2.value();
    Ok(OmegaPoint {
        omega: 4.0 * qv * qv,
        holomorphy: dq / (1.0 + qv.norm()),
        holomorphy_rel: dq / (qv.norm() + HOLO_FLOOR),
        cross_check: (lhs - rhs).norm() / (1.0 + rhs.norm()),
    })
}

fn with_invariants<F>(
    identity: &str,
    chart: &SurfaceChart,
    grid: GridSpec,
    opts: &AnalysisOptions,
    f: F,
) -> Result<ResidualReport>
where
    F: Fn(&FramePoint, &InvariantSet) -> Result<f64> + Sync + Send,
{
    sweep_report(identity, chart, grid, |u, v| {
        let fr = frame_at_with(chart, u, v, opts.order, &opts.frame)?;
        let inv = invariants_from_frame(&fr, &opts.frame)?;
        f(&fr, &inv)
    })
}

fn max_of(xs: &[f64]) -> f64 {
    if xs.iter().any(|x| x.is_nan()) {
        f64::NAN
    } else {
        xs.iter().copied().fold(0.0, f64::max)
    }
}

/// Worst normalized residual of the five structure equations.
pub fn check_structure(chart: &SurfaceChart, grid: GridSpec, opts: &AnalysisOptions) -> Result<ResidualReport> {
    with_invariants("structure_equations", chart, grid, opts, |f, inv| {
        Ok(max_of(&structure_residuals(f, inv)?))
    })
}

/// Worst normalized residual of the Gauss, Codazzi and Ricci equations.
pub fn check_integrability(chart: &SurfaceChart, grid: GridSpec, opts: &AnalysisOptions) -> Result<ResidualReport> {
    with_invariants("integrability_equations", chart, grid, opts, |f, inv| {
        Ok(max_of(&integrability_residuals(f, inv)?))
    })
}

pub fn willmore_residual(chart: &SurfaceChart, grid: GridSpec, opts: &AnalysisOptions) -> Result<ResidualReport> {
    with_invariants("willmore", chart, grid, opts, |_, inv| willmore_at(inv))
}

/// S-Willmore deviation and the values of `Θ` over a grid.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct SWillmoreReport {
    pub deviation: ResidualReport,
    #[serde(skip)]
    pub theta: Vec<Option<Complex64>>,
}

pub fn swillmore_residual(chart: &SurfaceChart, grid: GridSpec, opts: &AnalysisOptions) -> Result<SWillmoreReport> {
    let deviation = with_invariants("swillmore", chart, grid, opts, |_, inv| Ok(swillmore_deviation(inv)))?;
    let theta = deviation
        .points
        .iter()
        .zip(&deviation.values)
        .map(|(&(u, v), val)| match val {
            None => Ok(None),
            Some(_) => {
                let fr = frame_at_with(chart, u, v, opts.order, &opts.frame)?;
                Ok(Some(invariants_from_frame(&fr, &opts.frame)?.theta.value()))
            }
        })
        .collect::<Result<_>>()?;
    Ok(SWillmoreReport { deviation, theta })
}

fn require_willmore(chart: &SurfaceChart, grid: GridSpec, opts: &AnalysisOptions, bound: f64) -> Result<()> {
    let rep = willmore_residual(chart, grid, opts)?;
    if !(rep.max_abs <= bound) {
        return Err(GeomError::NotWillmore {
            residual: rep.max_abs,
            bound,
        });
    }
    Ok(())
}

/// Relative holomorphy residual of `Θ`; refuses non-Willmore charts.
pub fn theta_holomorphy(chart: &SurfaceChart, grid: GridSpec, opts: &AnalysisOptions) -> Result<ResidualReport> {
    require_willmore(chart, grid, opts, WILLMORE_GATE)?;
    theta_holomorphy_unchecked(chart, grid, opts)
}

pub fn theta_holomorphy_unchecked(
    chart: &SurfaceChart,
    grid: GridSpec,
    opts: &AnalysisOptions,
) -> Result<ResidualReport> {
    with_invariants("theta_holomorphy", chart, grid, opts, |_, inv| theta_holomorphy_at(inv))
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct OmegaReport {
    /// `|Ω|` over the grid.
    pub omega: ResidualReport,
    pub holomorphy: ResidualReport,
    pub holomorphy_rel: ResidualReport,
    pub cross_check: ResidualReport,
}

/// `Ω = 4(ρλ₁λ₂)²`, its holomorphy residuals and the `⟨Ŷ_zz,Ŷ_zz⟩` cross-check.
/// Refuses charts that are not S-Willmore.
pub fn omega_value(chart: &SurfaceChart, grid: GridSpec, opts: &AnalysisOptions) -> Result<OmegaReport> {
    let dev = with_invariants("swillmore", chart, grid, opts, |_, inv| Ok(swillmore_deviation(inv)))?;
    if dev.degenerate_fraction >= 1.0 {
        return Err(GeomError::NotSWillmore {
            deviation: f64::NAN,
            bound: SWILLMORE_GATE,
        });
    }
    if !(dev.max_abs <= SWILLMORE_GATE) {
        return Err(GeomError::NotSWillmore {
            deviation: dev.max_abs,
            bound: SWILLMORE_GATE,
        });
    }
    let pick = |name: &str, which: usize| {
        with_invariants(name, chart, grid, opts, move |f, inv| {
            let o = omega_at(f, inv, opts)?;
            Ok([o.omega.norm(), o.holomorphy, o.holomorphy_rel, o.cross_check][which])
        })
    };
    Ok(OmegaReport {
        omega: pick("omega", 0)?,
        holomorphy: pick("omega_holomorphy", 1)?,
        holomorphy_rel: pick("omega_holomorphy_rel", 2)?,
        cross_check: pick("omega_cross_check", 3)?,
    })
}

/// `|¼⟨dG,dG⟩ − ⟨κ,κ̄⟩|` over a grid.
pub fn gauss_metric_check(chart: &SurfaceChart, grid: GridSpec, opts: &AnalysisOptions) -> Result<ResidualReport> {
    sweep_report("gauss_metric", chart, grid, |u, v| {
        let g = conformal_gauss_data_with(chart, u, v, &opts.frame)?;
        Ok(g.quarter_dg2 - g.kappa_pair)
    })
}

/// `|⟨G,G⟩ − 1|` over a grid.
pub fn gauss_gram_check(chart: &SurfaceChart, grid: GridSpec, opts: &AnalysisOptions) -> Result<ResidualReport> {
    sweep_report("gauss_gram", chart, grid, |u, v| {
        let g = conformal_gauss_data_with(chart, u, v, &opts.frame)?;
        Ok(g.gram - 1.0)
    })
}

/// Tangential part of `(Y∧Ŷ)_zz̄`; vanishes on Willmore charts.
pub fn harmonicity_residual(chart: &SurfaceChart, grid: GridSpec, opts: &AnalysisOptions) -> Result<ResidualReport> {
    with_invariants("harmonicity", chart, grid, opts, |f, inv| {
        let yhat = adjoint_vector(f, inv, Side::Left, &opts.frame)?;
        harmonicity_at(f, &yhat)
    })
}

/// Worst residual of the `ρ` and `σ` derivative identities.
pub fn rho_sigma_identities(chart: &SurfaceChart, grid: GridSpec, opts: &AnalysisOptions) -> Result<ResidualReport> {
    with_invariants("rho_sigma", chart, grid, opts, |_, inv| {
        Ok(max_of(&rho_sigma_residuals(inv)?))
    })
}

/// Distance of both adjoint lifts from the central sphere.
pub fn adjoint_on_sphere(chart: &SurfaceChart, grid: GridSpec, opts: &AnalysisOptions) -> Result<ResidualReport> {
    with_invariants("adjoint_on_sphere", chart, grid, opts, |f, inv| {
        let a = adjoint_vector(f, inv, Side::Left, &opts.frame)?;
        let b = adjoint_vector(f, inv, Side::Right, &opts.frame)?;
        Ok(central_sphere_residual(f, &a).max(central_sphere_residual(f, &b)))
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::surfaces::catalog::{self, MinimalKind};

    fn small() -> GridSpec {
        GridSpec { nu: 6, nv: 6 }
    }

    fn opts() -> AnalysisOptions {
        AnalysisOptions::default()
    }

    #[test]
    fn structure_holds_on_catalog() {
        for e in catalog::entries() {
            if e.name == "plane" {
                continue;
            }
            let c = catalog::build(e.name, &Default::default()).unwrap();
            let r = check_structure(&c, small(), &opts()).unwrap();
            assert!(r.max_abs < 1e-9, "{}: {}", e.name, r.max_abs);
            let r = check_integrability(&c, small(), &opts()).unwrap();
            assert!(r.max_abs < 1e-9, "{}: {}", e.name, r.max_abs);
        }
    }

    #[test]
    fn corrupted_frame_is_detected() {
        let c = catalog::homogeneous_torus(2.0).unwrap();
        let mut f = frame_at_with(&c, 0.4, 0.3, 8, &Default::default()).unwrap();
        f.l = f.l.scale_re(1.01);
        let inv = invariants_from_frame(&f, &Default::default()).unwrap();
        let r = structure_residuals(&f, &inv).unwrap();
        assert!(max_of(&r) > 1e-3, "{r:?}");
    }

    #[test]
    fn willmore_split() {
        let torus = catalog::homogeneous_torus(2.0).unwrap();
        assert!(willmore_residual(&torus, small(), &opts()).unwrap().max_abs < 1e-9);
        let sw = swillmore_residual(&torus, small(), &opts()).unwrap();
        assert!(sw.deviation.max_abs > 0.05);
        for t in sw.theta.iter().flatten() {
            assert!((t - Complex64::new(-1.0 / 108.0, 0.0)).norm() < 1e-10, "{t}");
        }
        for name in ["catenoid", "maximal-catenoid", "enneper", "laguerre-catenoid"] {
            let c = catalog::build(name, &Default::default()).unwrap();
            let r = willmore_residual(&c, small(), &opts()).unwrap();
            assert!(r.max_abs < 1e-8, "{name}: {}", r.max_abs);
        }
        let cyl = catalog::cylinder();
        assert!(willmore_residual(&cyl, small(), &opts()).unwrap().max_abs > 1e-2);
    }

    #[test]
    fn willmore_identities_on_catenoid() {
        let c = catalog::minimal_lift(MinimalKind::Catenoid);
        let o = opts();
        let sw = swillmore_residual(&c, small(), &o).unwrap();
        assert!(sw.deviation.max_abs < 1e-9, "{}", sw.deviation.max_abs);
        assert!(theta_holomorphy(&c, small(), &o).unwrap().max_abs < 1e-9);
        assert!(harmonicity_residual(&c, small(), &o).unwrap().max_abs < 1e-8);
        assert!(rho_sigma_identities(&c, small(), &o).unwrap().max_abs < 1e-8);
        assert!(adjoint_on_sphere(&c, small(), &o).unwrap().max_abs < 1e-9);
        let om = omega_value(&c, small(), &o).unwrap();
        assert!(om.holomorphy.max_abs < 1e-8, "{}", om.holomorphy.max_abs);
        // the adjoint of a minimal surface is a single point, so Ω vanishes
        assert!(om.omega.max_abs < 1e-8, "{}", om.omega.max_abs);
        assert!(om.cross_check.max_abs < 1e-9, "{}", om.cross_check.max_abs);
    }

    #[test]
    fn willmore_identities_on_torus() {
        let c = catalog::homogeneous_torus(2.0).unwrap();
        let o = opts();
        assert!(theta_holomorphy(&c, small(), &o).unwrap().max_abs < 1e-9);
        assert!(harmonicity_residual(&c, small(), &o).unwrap().max_abs < 1e-8);
        assert!(rho_sigma_identities(&c, small(), &o).unwrap().max_abs < 1e-8);
        assert!(matches!(
            omega_value(&c, small(), &o),
            Err(GeomError::NotSWillmore { .. })
        ));
    }

    #[test]
    fn gated_operations_refuse_non_willmore() {
        let c = catalog::cylinder();
        assert!(matches!(
            theta_holomorphy(&c, small(), &opts()),
            Err(GeomError::NotWillmore { .. })
        ));
        let h = harmonicity_residual(&c, small(), &opts()).unwrap();
        assert!(h.max_abs > 1e-4, "{}", h.max_abs);
    }

    #[test]
    fn gauss_map_identities() {
        for name in [
            "torus",
            "catenoid",
            "enneper",
            "maximal-catenoid",
            "laguerre-catenoid",
            "cylinder",
        ] {
            let c = catalog::build(name, &Default::default()).unwrap();
            let g = gauss_gram_check(&c, small(), &opts()).unwrap();
            assert!(g.max_abs < 1e-10, "{name}: {}", g.max_abs);
            let m = gauss_metric_check(&c, small(), &opts()).unwrap();
            assert!(m.max_abs < 1e-8, "{name}: {}", m.max_abs);
        }
    }

    #[test]
    fn umbilic_plane_is_masked() {
        let p = catalog::plane();
        let r = harmonicity_residual(&p, small(), &opts()).unwrap();
        assert_eq!(r.degenerate_fraction, 1.0);
        assert!(!r.passes(1.0));
        match omega_value(&p, small(), &opts()) {
            Ok(om) => assert_eq!(om.cross_check.degenerate_fraction, 1.0),
            Err(e) => assert_eq!(e.kind(), "NotSWillmore"),
        }
    }
}
