//! One-dimensional quadrature rules and their tensor products.

use std::f64::consts::PI;

/// Nodes and weights of a quadrature rule on an interval.
#[derive(Debug, Clone, PartialEq)]
pub struct Rule {
    pub nodes: Vec<f64>,
    pub weights: Vec<f64>,
}

impl Rule {
    /// Composite trapezoid rule for a periodic integrand on `[lo, hi)`.
    pub fn periodic_trapezoid(lo: f64, hi: f64, n: usize) -> Rule {
        let h = (hi - lo) / n as f64;
        Rule {
            nodes: (0..n).map(|i| lo + i as f64 * h).collect(),
            weights: vec![h; n],
        }
    }

    /// `n`-point Gauss–Legendre rule mapped to `[lo, hi]`.
    pub fn gauss_legendre(lo: f64, hi: f64, n: usize) -> Rule {
        let (x, w) = gauss_legendre_unit(n);
        let (mid, half) = (0.5 * (lo + hi), 0.5 * (hi - lo));
        Rule {
            nodes: x.iter().map(|t| mid + half * t).collect(),
            weights: w.iter().map(|w| w * half).collect(),
        }
    }

    /// Trapezoid in periodic directions, Gauss–Legendre otherwise.
    pub fn for_axis(lo: f64, hi: f64, n: usize, periodic: bool) -> Rule {
        if periodic {
            Rule::periodic_trapezoid(lo, hi, n)
        } else {
            Rule::gauss_legendre(lo, hi, n)
        }
    }

    pub fn len(&self) -> usize {
        self.nodes.len()
    }

    pub fn is_empty(&self) -> bool {
        self.nodes.is_empty()
    }

    pub fn integrate(&self, f: impl Fn(f64) -> f64) -> f64 {
        self.nodes.iter().zip(&self.weights).map(|(&x, w)| w * f(x)).sum()
    }
}

/// Legendre `P_n(x)` and its derivative.
fn legendre(n: usize, x: f64) -> (f64, f64) {
    let (mut p0, mut p1) = (1.0, x);
    if n == 0 {
        return (1.0, 0.0);
    }
    for k in 2..=n {
        let k = k as f64;
        let p2 = ((2.0 * k - 1.0) * x * p1 - (k - 1.0) * p0) / k;
        p0 = p1;
        p1 = p2;
    }
    let dp = n as f64 * (x * p1 - p0) / (x * x - 1.0);
    (p1, dp)
}

/// Gauss–Legendre nodes (ascending) and weights on `[−1, 1]`, by Newton
/// iteration from Chebyshev-like initial guesses.
pub fn gauss_legendre_unit(n: usize) -> (Vec<f64>, Vec<f64>) {
    let mut x = vec![0.0; n];
    let mut w = vec![0.0; n];
    let nf = n as f64;
    for i in 0..n.div_ceil(2) {
        let mut t = (PI * (i as f64 + 0.75) / (nf + 0.5)).cos();
        for _ in 0..100 {
            let (p, dp) = legendre(n, t);
            let dt = p / dp;
            t -= dt;
            if dt.abs() < 1e-16 {
                break;
            }
        }
        let (_, dp) = legendre(n, t);
        let wi = 2.0 / ((1.0 - t * t) * dp * dp);
        x[i] = -t;
        x[n - 1 - i] = t;
        w[i] = wi;
        w[n - 1 - i] = wi;
    }
    (x, w)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn gauss_legendre_is_exact_for_polynomials() {
        let r = Rule::gauss_legendre(0.0, 2.0, 5);
        // degree 9 is the limit for five nodes
        let got = r.integrate(|x| x.powi(9) + 3.0 * x * x);
        let want = 2f64.powi(10) / 10.0 + 8.0;
        assert!((got - want).abs() < 1e-11, "{got} vs {want}");
        assert!((r.weights.iter().sum::<f64>() - 2.0).abs() < 1e-14);
    }

    #[test]
    fn nodes_are_sorted_and_symmetric() {
        for n in [1, 2, 7, 32, 128] {
            let (x, w) = gauss_legendre_unit(n);
            assert!(x.windows(2).all(|p| p[0] < p[1]));
            for i in 0..n {
                assert!((x[i] + x[n - 1 - i]).abs() < 1e-15);
                assert!(w[i] > 0.0);
            }
        }
    }

    #[test]
    fn trapezoid_converges_fast_on_periodic() {
        // ∫₀^{2π} e^{cos x} dx = 2π I₀(1)
        let exact = 2.0 * PI * 1.266_065_877_752_008_4;
        let coarse = Rule::periodic_trapezoid(0.0, 2.0 * PI, 8).integrate(|x| x.cos().exp());
        let fine = Rule::periodic_trapezoid(0.0, 2.0 * PI, 16).integrate(|x| x.cos().exp());
        assert!((fine - exact).abs() < 1e-13, "{}", fine - exact);
        assert!((coarse - exact).abs() < 1e-5, "{}", coarse - exact);
        assert!((coarse - exact).abs() > 1e3 * (fine - exact).abs());
    }

    #[test]
    fn gauss_legendre_smooth_integrand() {
        let r = Rule::gauss_legendre(-1.0, 1.0, 20);
        let got = r.integrate(|x| x.exp());
        assert!((got - (1f64.exp() - (-1f64).exp())).abs() < 1e-14);
    }
}
