use num_complex::Complex64;
use q41_core::analysis::{self, AnalysisOptions, EnergyOptions};
use q41_core::conformal_frame::{invariants_at, invariants_at_with, kappa_pair_at, FrameOptions};
use q41_core::grid::{sample_points, sweep_sequential, GridSpec};
use q41_core::pseudo_euclidean::{Motion, Vec6};
use q41_core::surfaces::catalog::{self, MinimalKind};
use q41_core::surfaces::dsl::dsl_parse;
use q41_core::surfaces::templates::{reparam_domain, reparametrized_source, Template};
use q41_core::surfaces::{Domain, SurfaceChart};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

fn grid(n: usize) -> GridSpec {
    GridSpec { nu: n, nv: n }
}

fn random_motion(rng: &mut ChaCha8Rng) -> Motion {
    let mut m = Motion::identity();
    for _ in 0..6 {
        let i = rng.random_range(0..6);
        let mut j = rng.random_range(0..5);
        if j >= i {
            j += 1;
        }
        m = m.then(&Motion::plane(i, j, rng.random_range(-0.6..0.6)));
    }
    m
}

#[test]
fn dsl_matches_catalog_pointwise() {
    let mut rng = ChaCha8Rng::seed_from_u64(7);
    let pairs = [
        (
            "r3 [cosh(u)*cos(v), cosh(u)*sin(v), u]",
            catalog::minimal_lift(MinimalKind::Catenoid),
        ),
        (
            "raw6 [cos(2*u/sqrt(3))*cos(v), cos(2*u/sqrt(3))*sin(v), sin(2*u/sqrt(3))*cos(v), \
             sin(2*u/sqrt(3))*sin(v), cos(u/sqrt(3)), sin(u/sqrt(3))]",
            catalog::homogeneous_torus(2.0).unwrap(),
        ),
        ("r31 [sinh(u)*cos(v), sinh(u)*sin(v), u]", catalog::maximal_lift()),
    ];
    for (src, chart) in pairs {
        let prog = dsl_parse(src).unwrap();
        let d = chart.domain;
        for _ in 0..100 {
            let u = rng.random_range(d.u0..d.u1);
            let v = rng.random_range(d.v0..d.v1);
            let a = prog.eval(&Default::default(), u, v, 3).unwrap();
            let b = chart.eval_at(u, v, 3).unwrap();
            assert!((&a - &b).max_abs() < 1e-12, "{src} at ({u},{v})");
        }
    }
}

#[test]
fn motions_preserve_invariants_and_energy() {
    let mut rng = ChaCha8Rng::seed_from_u64(11);
    let torus = catalog::homogeneous_torus(2.0).unwrap();
    let m = random_motion(&mut rng);
    assert!(m.orthogonality_defect() < 1e-12);
    let moved = torus.transformed(&m);
    for _ in 0..5 {
        let (u, v) = (rng.random_range(0.0..10.0), rng.random_range(0.0..6.0));
        let a = invariants_at(&torus, u, v, 6).unwrap();
        let b = invariants_at(&moved, u, v, 6).unwrap();
        let pa = &a.lambda1 * &a.lambda2;
        let pb = &b.lambda1 * &b.lambda2;
        assert!((a.s.value() - b.s.value()).norm() < 1e-10);
        assert!((a.beta.value() - b.beta.value()).norm() < 1e-10);
        assert!((pa.value() - pb.value()).norm() < 1e-10);
        assert!((a.theta.value() - b.theta.value()).norm() < 1e-10);
    }
    let opts = EnergyOptions {
        grid: grid(24),
        ..Default::default()
    };
    let e0 = analysis::willmore_energy(&torus, &opts).unwrap().value;
    let e1 = analysis::willmore_energy(&moved, &opts).unwrap().value;
    assert!(((e0 - e1) / e0).abs() < 1e-8);

    let o = AnalysisOptions::default();
    let r = analysis::willmore_residual(&moved, grid(4), &o).unwrap();
    assert!(r.max_abs < 1e-8);
    let cat = catalog::minimal_lift(MinimalKind::Catenoid).transformed(&m);
    assert!(analysis::check_structure(&cat, grid(4), &o).unwrap().max_abs < 1e-8);
    assert!(analysis::willmore_residual(&cat, grid(4), &o).unwrap().max_abs < 1e-8);
}

#[test]
fn coordinate_scaling() {
    let cat = catalog::minimal_lift(MinimalKind::Catenoid);
    let c = 2.0;
    let scaled = cat.rescaled(c);
    let o = FrameOptions::default();
    for &(u, v) in &[(0.2, 0.4), (-0.5, 3.0)] {
        let k = kappa_pair_at(&cat, u, v, &o).unwrap();
        let ks = kappa_pair_at(&scaled, u / c, v / c, &o).unwrap();
        assert!((ks - c * c * k).abs() < 1e-10 * (1.0 + k.abs()), "{ks} vs {k}");
    }
    let opts = EnergyOptions {
        grid: grid(32),
        ..Default::default()
    };
    let e0 = analysis::willmore_energy(&cat, &opts).unwrap().value;
    let e1 = analysis::willmore_energy(&scaled, &opts).unwrap().value;
    assert!(((e0 - e1) / e0).abs() < 1e-8, "{e0} {e1}");

    let torus = catalog::homogeneous_torus(1.5).unwrap();
    let opts = EnergyOptions {
        grid: grid(16),
        ..Default::default()
    };
    let e0 = analysis::willmore_energy(&torus, &opts).unwrap().value;
    let e1 = analysis::willmore_energy(&torus.rescaled(0.5), &opts).unwrap().value;
    assert!(((e0 - e1) / e0).abs() < 1e-8);
}

#[test]
fn gauge_invariant_quantities() {
    let chart = catalog::minimal_lift(MinimalKind::Enneper);
    let other = FrameOptions {
        gauge_reference: Some(Vec6([0.2, -0.4, 1.0, 0.3, 0.7, -0.1])),
        ..Default::default()
    };
    for &(u, v) in &[(0.1, 0.3), (-0.6, -0.2)] {
        let a = invariants_at(&chart, u, v, 7).unwrap();
        let b = invariants_at_with(&chart, u, v, 7, &other).unwrap();
        let close = |x: Complex64, y: Complex64| (x - y).norm() < 1e-9 * (1.0 + x.norm());
        assert!(close(a.beta.value(), b.beta.value()));
        assert!(close(
            (&a.lambda1 * &a.lambda2).value(),
            (&b.lambda1 * &b.lambda2).value()
        ));
        assert!(close(a.theta.value(), b.theta.value()));
        assert!(close(a.mu_left().unwrap().value(), b.mu_left().unwrap().value()));
        assert!(close(a.rho.unwrap().value(), b.rho.unwrap().value()));
    }
}

#[test]
fn residuals_do_not_depend_on_grid() {
    let o = AnalysisOptions::default();
    let chart = catalog::maximal_lift();
    let a = analysis::check_integrability(&chart, grid(4), &o).unwrap();
    let b = analysis::check_integrability(&chart, grid(8), &o).unwrap();
    assert!(a.max_abs < 1e-9 && b.max_abs < 1e-9);
    assert!(a.max_abs >= a.mean_abs && a.mean_abs >= 0.0);
}

#[test]
fn energy_converges_fast() {
    let chart = catalog::minimal_lift(MinimalKind::Catenoid);
    let est = |n: usize| {
        let opts = EnergyOptions {
            grid: grid(n),
            ..Default::default()
        };
        analysis::willmore_energy(&chart, &opts).unwrap().estimate
    };
    let (e8, e16) = (est(8), est(16));
    assert!(e16 * 1e2 <= e8, "{e8} {e16}");
}

#[test]
fn random_reparametrized_charts_satisfy_universal_identities() {
    let mut rng = ChaCha8Rng::seed_from_u64(3);
    let o = AnalysisOptions::default();
    for k in 0..5 {
        let t = Template::ALL[k % Template::ALL.len()];
        let a = (rng.random_range(-0.2..0.2), rng.random_range(-0.2..0.2));
        let b = (rng.random_range(-0.1..0.1), rng.random_range(-0.1..0.1));
        let src = reparametrized_source(t, a, b);
        let chart = dsl_parse(&src)
            .unwrap()
            .into_chart(t.name(), Default::default(), reparam_domain(), false, false)
            .unwrap();
        let s = analysis::check_structure(&chart, grid(4), &o).unwrap();
        let i = analysis::check_integrability(&chart, grid(4), &o).unwrap();
        assert!(
            s.max_abs < 1e-8 && i.max_abs < 1e-8,
            "{src}: {} {}",
            s.max_abs,
            i.max_abs
        );
        let w = analysis::willmore_residual(&chart, grid(4), &o).unwrap();
        if t.is_willmore() {
            assert!(w.max_abs < 1e-8, "{src}: {}", w.max_abs);
        } else {
            assert!(w.max_abs > 1e-3, "{src}: {}", w.max_abs);
        }
    }
}

#[test]
fn sequential_and_parallel_sweeps_agree() {
    let chart = catalog::homogeneous_torus(2.0).unwrap();
    let pts = sample_points(&chart.domain, true, true, grid(6));
    let f = |u: f64, v: f64| kappa_pair_at(&chart, u, v, &FrameOptions::default()).unwrap();
    let a = sweep_sequential(&pts, f);
    let b = q41_core::grid::sweep(&pts, f);
    assert_eq!(a, b);
}

#[test]
fn degenerate_charts_are_masked_not_fatal() {
    let plane = catalog::plane();
    let r = analysis::willmore_residual(&plane, grid(3), &AnalysisOptions::default()).unwrap();
    assert!(r.max_abs < 1e-12);
    let bad = SurfaceChart::new("point", Domain::new(0.0, 1.0, 0.0, 1.0), |u, _| {
        Ok(q41_core::JetVec6::constant(
            &Vec6([1.0, 0.0, 0.0, 0.0, 1.0, 0.0]),
            u.order(),
        ))
    });
    let r = analysis::check_structure(&bad, grid(3), &AnalysisOptions::default()).unwrap();
    assert_eq!(r.degenerate_fraction, 1.0);
    assert!(!r.passes(1.0));
}
