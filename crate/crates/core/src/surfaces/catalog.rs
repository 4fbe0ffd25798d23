//! Named surfaces with known closed-form geometry.

use std::collections::BTreeMap;
use std::f64::consts::PI;

use serde::Serialize;

use super::{embed_flat, lift_euclidean3, lift_laguerre, lift_minkowski3, Domain, SurfaceChart};
use crate::error::{GeomError, Result};
use crate::jet_calculus::{Jet, JetVec6};

#[derive(Debug, Clone, Serialize)]
pub struct CatalogEntry {
    pub name: &'static str,
    pub description: &'static str,
    /// Parameter names with their defaults.
    pub params: Vec<(&'static str, f64)>,
}

pub fn entries() -> Vec<CatalogEntry> {
    vec![
        CatalogEntry {
            name: "torus",
            description: "homogeneous Willmore torus Y_t (give t, or p and q with t = p/q)",
            params: vec![("t", 2.0)],
        },
        CatalogEntry {
            name: "catenoid",
            description: "lift of the catenoid (cosh a cos b, cosh a sin b, a) in R^3",
            params: vec![],
        },
        CatalogEntry {
            name: "enneper",
            description: "lift of Enneper's surface in its cubic conformal parametrization",
            params: vec![],
        },
        CatalogEntry {
            name: "maximal-catenoid",
            description: "lift of the maximal catenoid (sinh a cos b, sinh a sin b, a) in R^3_1",
            params: vec![],
        },
        CatalogEntry {
            name: "laguerre-catenoid",
            description: "Laguerre lift (n, u.n, -u.n, 1) of the catenoid",
            params: vec![],
        },
        CatalogEntry {
            name: "plane",
            description: "flat plane in R^4_1 (totally umbilic)",
            params: vec![],
        },
        CatalogEntry {
            name: "cylinder",
            description: "round cylinder in R^3 (not Willmore)",
            params: vec![],
        },
    ]
}

/// Builds a catalog chart by name. Unknown parameter names are rejected.
pub fn build(name: &str, params: &BTreeMap<String, f64>) -> Result<SurfaceChart> {
    let entry = entries()
        .into_iter()
        .find(|e| e.name == name)
        .ok_or_else(|| GeomError::UnknownSurface(name.to_string()))?;
    let allowed: &[&str] = if name == "torus" { &["t", "p", "q"] } else { &[] };
    if let Some(k) = params.keys().find(|k| !allowed.contains(&k.as_str())) {
        return Err(GeomError::ParameterOutOfRange {
            name: k.clone(),
            value: params[k],
            reason: "not a parameter of this surface",
        });
    }
    match entry.name {
        "torus" => match (params.get("p"), params.get("q"), params.get("t")) {
            (Some(&p), Some(&q), None) => homogeneous_torus_pq(p, q),
            (None, None, t) => homogeneous_torus(t.copied().unwrap_or(2.0)),
            _ => Err(GeomError::ParameterOutOfRange {
                name: "t".into(),
                value: f64::NAN,
                reason: "give either t or both p and q",
            }),
        },
        "catenoid" => Ok(minimal_lift(MinimalKind::Catenoid)),
        "enneper" => Ok(minimal_lift(MinimalKind::Enneper)),
        "maximal-catenoid" => Ok(maximal_lift()),
        "laguerre-catenoid" => Ok(laguerre_lift()),
        "plane" => Ok(plane()),
        "cylinder" => Ok(cylinder()),
        _ => unreachable!(),
    }
}

/// Best rational `p/q` with `q ≤ 1000` matching `t` to 1e-12 relative.
pub fn rational_approx(t: f64) -> Option<(u64, u64)> {
    (1..=1000u64).find_map(|q| {
        let p = (t * q as f64).round();
        ((t - p / q as f64).abs() <= 1e-12 * t.abs().max(1.0)).then_some((p as u64, q))
    })
}

/// The homogeneous torus
/// `Y_t(θ, φ) = (e₁, cos(θ/r), sin(θ/r))`, `r = √(t²−1)`, with
/// `e₁ = (cos a cos φ, cos a sin φ, sin a cos φ, sin a sin φ)`, `a = tθ/r`.
///
/// For rational `t = p/q` the chart covers one fundamental domain
/// `θ ∈ [0, 2πq r)`, `φ ∈ [0, 2π)` and is doubly periodic.
pub fn homogeneous_torus(t: f64) -> Result<SurfaceChart> {
    if !(t > 1.0 + 1e-6) || !t.is_finite() {
        return Err(GeomError::ParameterOutOfRange {
            name: "t".into(),
            value: t,
            reason: "the torus family needs t > 1",
        });
    }
    let r = (t * t - 1.0).sqrt();
    let mut params = BTreeMap::from([("t".to_string(), t)]);
    let (domain, periodic_u) = match rational_approx(t) {
        Some((p, q)) => {
            params.insert("p".into(), p as f64);
            params.insert("q".into(), q as f64);
            (Domain::new(0.0, 2.0 * PI * q as f64 * r, 0.0, 2.0 * PI), true)
        }
        None => (Domain::new(0.0, 2.0 * PI * r, 0.0, 2.0 * PI), false),
    };
    let chart = SurfaceChart::new("torus", domain, move |th, ph| {
        let a = th.scale_re(t / r);
        let b = th.scale_re(1.0 / r);
        let (ca, sa) = (a.cos(), a.sin());
        let (cp, sp) = (ph.cos(), ph.sin());
        Ok(JetVec6([&ca * &cp, &ca * &sp, &sa * &cp, &sa * &sp, b.cos(), b.sin()]))
    });
    Ok(chart.with_params(params).with_periodicity(periodic_u, true))
}

pub fn homogeneous_torus_pq(p: f64, q: f64) -> Result<SurfaceChart> {
    if !(p > 0.0 && q > 0.0 && p.fract() == 0.0 && q.fract() == 0.0) {
        return Err(GeomError::ParameterOutOfRange {
            name: "p/q".into(),
            value: p / q,
            reason: "p and q must be positive integers",
        });
    }
    homogeneous_torus(p / q)
}

/// `p²π²/√(p²−q²)`: the Willmore energy of the torus with `t = p/q` over its
/// fundamental domain.
pub fn torus_energy_reference(p: f64, q: f64) -> f64 {
    p * p * PI * PI / (p * p - q * q).sqrt()
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum MinimalKind {
    Catenoid,
    Enneper,
}

/// Lift `(|u|²/2 − 1, u, 1, |u|²/2)` of a minimal surface in `ℝ³`.
pub fn minimal_lift(kind: MinimalKind) -> SurfaceChart {
    match kind {
        MinimalKind::Catenoid => SurfaceChart::new("catenoid", Domain::new(-1.0, 1.0, 0.0, 2.0 * PI), |a, b| {
            let ch = a.cosh();
            Ok(lift_euclidean3(&[&ch * &b.cos(), &ch * &b.sin(), a.clone()]))
        })
        .with_periodicity(false, true),
        MinimalKind::Enneper => SurfaceChart::new("enneper", Domain::new(-1.0, 1.0, -1.0, 1.0), |u, v| {
            let (u2, v2) = (u * u, v * v);
            let x = u - &(&(&u2 * u).scale_re(1.0 / 3.0) - &(u * &v2));
            let y = &(&(&v2 * v).scale_re(1.0 / 3.0) - v) - &(&u2 * v);
            let z = &u2 - &v2;
            Ok(lift_euclidean3(&[x, y, z]))
        }),
    }
}

/// Lift `(⟨u,u⟩/2, 1, u, ⟨u,u⟩/2 + 1)` of the spacelike maximal catenoid
/// `u(a, b) = (sinh a cos b, sinh a sin b, a)` in `ℝ³₁`, on `a ∈ [0.2, 1.2]`
/// (the metric `sinh² a` degenerates at `a = 0`).
pub fn maximal_lift() -> SurfaceChart {
    SurfaceChart::new("maximal-catenoid", Domain::new(0.2, 1.2, 0.0, 2.0 * PI), |a, b| {
        let sh = a.sinh();
        Ok(lift_minkowski3(&[&sh * &b.cos(), &sh * &b.sin(), a.clone()]))
    })
    .with_periodicity(false, true)
}

/// Catenoid unit normal and support function:
/// `n = (−cos b, −sin b, sinh a)/cosh a`, `u·n = a tanh a − 1`.
pub fn catenoid_normal_and_support(a: &Jet, b: &Jet) -> Result<([Jet; 3], Jet)> {
    let sech = a.cosh().recip()?;
    let n = [-&(&b.cos() * &sech), -&(&b.sin() * &sech), &a.sinh() * &sech];
    let support = (&(a * &a.sinh()) * &sech).add_const((-1.0).into());
    Ok((n, support))
}

/// Laguerre lift of the catenoid.
pub fn laguerre_lift() -> SurfaceChart {
    SurfaceChart::new("laguerre-catenoid", Domain::new(-1.0, 1.0, 0.0, 2.0 * PI), |a, b| {
        let (n, h) = catenoid_normal_and_support(a, b)?;
        Ok(lift_laguerre(&n, &h))
    })
    .with_periodicity(false, true)
}

/// The plane `(u, v, 0, 0)` of `ℝ⁴₁`: totally umbilic.
pub fn plane() -> SurfaceChart {
    SurfaceChart::new("plane", Domain::new(-1.0, 1.0, -1.0, 1.0), |u, v| {
        let z = Jet::zero(u.order().min(v.order()));
        Ok(embed_flat(&[u.clone(), v.clone(), z.clone(), z]))
    })
}

/// The cylinder `(cos v, sin v, u)` in `ℝ³`.
pub fn cylinder() -> SurfaceChart {
    SurfaceChart::new("cylinder", Domain::new(-1.0, 1.0, 0.0, 2.0 * PI), |u, v| {
        Ok(lift_euclidean3(&[v.cos(), v.sin(), u.clone()]))
    })
    .with_periodicity(false, true)
}
