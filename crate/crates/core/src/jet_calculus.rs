//! Truncated bivariate Taylor arithmetic.
//!
//! A [`Jet`] of order `K` stores the coefficients `a_{jk}`, `j + k ≤ K`, of
//! `f(u + δu, v + δv) = Σ a_{jk} δuʲ δvᵏ` around a fixed point. Arithmetic is
//! exact truncation of the composed series, so every derivative the frame
//! pipeline needs (`Y_z`, `Y_{zz̄}`, `κ_z̄`, ...) is read off without any
//! finite differencing.
//!
//! Coefficients are complex; real-valued fields simply carry zero imaginary
//! parts. Differentiation lowers the order by one, and binary operations
//! truncate to the smaller order of their operands, so the order of a result
//! is exactly the number of Taylor terms that are still correct.

use std::ops::{Add, Mul, Neg, Sub};

use num_complex::Complex64;

use crate::error::{GeomError, Result};
use crate::pseudo_euclidean::{CVec6, Motion, Vec6, SIGNATURE};

/// Constant terms below this magnitude are rejected by division and `sqrt`.
pub const JET_SINGULAR_TOL: f64 = 1e-10;

const ZERO: Complex64 = Complex64::new(0.0, 0.0);
const ONE: Complex64 = Complex64::new(1.0, 0.0);
const I: Complex64 = Complex64::new(0.0, 1.0);

#[inline]
fn block(d: usize) -> usize {
    d * (d + 1) / 2
}

#[inline]
fn idx(j: usize, k: usize) -> usize {
    block(j + k) + k
}

#[inline]
fn len_for(order: usize) -> usize {
    block(order + 1)
}

#[derive(Debug, Clone, PartialEq)]
pub struct Jet {
    order: usize,
    c: Vec<Complex64>,
}

impl Jet {
    pub fn zero(order: usize) -> Self {
        Jet {
            order,
            c: vec![ZERO; len_for(order)],
        }
    }

    pub fn constant(value: Complex64, order: usize) -> Self {
        let mut j = Self::zero(order);
        j.c[0] = value;
        j
    }

    pub fn real(value: f64, order: usize) -> Self {
        Self::constant(Complex64::new(value, 0.0), order)
    }

    /// The coordinate function `u` expanded around `u0`.
    pub fn variable_u(u0: f64, order: usize) -> Self {
        let mut j = Self::real(u0, order);
        if order >= 1 {
            j.c[idx(1, 0)] = ONE;
        }
        j
    }

    pub fn variable_v(v0: f64, order: usize) -> Self {
        let mut j = Self::real(v0, order);
        if order >= 1 {
            j.c[idx(0, 1)] = ONE;
        }
        j
    }

    /// Builds a jet from a coefficient function `(j, k) ↦ a_{jk}`.
    pub fn from_fn(order: usize, mut f: impl FnMut(usize, usize) -> Complex64) -> Self {
        let mut out = Self::zero(order);
        for d in 0..=order {
            for k in 0..=d {
                out.c[idx(d - k, k)] = f(d - k, k);
            }
        }
        out
    }

    pub fn order(&self) -> usize {
        self.order
    }

    /// Value at the expansion point.
    pub fn value(&self) -> Complex64 {
        self.c[0]
    }

    /// Taylor coefficient `a_{jk}` (zero beyond the order).
    pub fn coeff(&self, j: usize, k: usize) -> Complex64 {
        if j + k > self.order {
            ZERO
        } else {
            self.c[idx(j, k)]
        }
    }

    /// Partial derivative `∂uʲ ∂vᵏ f` at the expansion point.
    pub fn derivative(&self, j: usize, k: usize) -> Complex64 {
        self.coeff(j, k) * (factorial(j) * factorial(k))
    }

    pub fn coeffs(&self) -> &[Complex64] {
        &self.c
    }

    pub fn truncate(&self, order: usize) -> Jet {
        if order >= self.order {
            return self.clone();
        }
        Jet {
            order,
            c: self.c[..len_for(order)].to_vec(),
        }
    }

    pub fn conj(&self) -> Jet {
        Jet {
            order: self.order,
            c: self.c.iter().map(|z| z.conj()).collect(),
        }
    }

    pub fn re(&self) -> Jet {
        Jet {
            order: self.order,
            c: self.c.iter().map(|z| Complex64::new(z.re, 0.0)).collect(),
        }
    }

    pub fn im(&self) -> Jet {
        Jet {
            order: self.order,
            c: self.c.iter().map(|z| Complex64::new(z.im, 0.0)).collect(),
        }
    }

    pub fn scale(&self, k: Complex64) -> Jet {
        Jet {
            order: self.order,
            c: self.c.iter().map(|z| z * k).collect(),
        }
    }

    pub fn scale_re(&self, k: f64) -> Jet {
        Jet {
            order: self.order,
            c: self.c.iter().map(|z| z * k).collect(),
        }
    }

    pub fn add_const(&self, k: Complex64) -> Jet {
        let mut out = self.clone();
        out.c[0] += k;
        out
    }

    /// Largest coefficient magnitude.
    pub fn max_abs(&self) -> f64 {
        self.c.iter().map(|z| z.norm()).fold(0.0, f64::max)
    }

    fn binary(&self, other: &Jet, f: impl Fn(Complex64, Complex64) -> Complex64) -> Jet {
        let order = self.order.min(other.order);
        let n = len_for(order);
        Jet {
            order,
            c: (0..n).map(|i| f(self.c[i], other.c[i])).collect(),
        }
    }

    fn mul_jet(&self, other: &Jet) -> Jet {
        let order = self.order.min(other.order);
        let mut out = Self::zero(order);
        for d1 in 0..=order {
            let a = &self.c[block(d1)..block(d1) + d1 + 1];
            if a.iter().all(|z| *z == ZERO) {
                continue;
            }
            for d2 in 0..=order - d1 {
                let b = &other.c[block(d2)..block(d2) + d2 + 1];
                let base = block(d1 + d2);
                for (k1, x) in a.iter().enumerate() {
                    if *x == ZERO {
                        continue;
                    }
                    for (k2, y) in b.iter().enumerate() {
                        out.c[base + k1 + k2] += x * y;
                    }
                }
            }
        }
        out
    }

    fn check_invertible(&self, op: &'static str) -> Result<()> {
        let v = self.c[0].norm();
        if !(v > JET_SINGULAR_TOL) || !v.is_finite() {
            return Err(GeomError::SingularJet { op, value: v });
        }
        Ok(())
    }

    /// `self / g`. Errors when `|g(0,0)| ≤ JET_SINGULAR_TOL`.
    pub fn div(&self, g: &Jet) -> Result<Jet> {
        g.check_invertible("division")?;
        let order = self.order.min(g.order);
        let g0 = g.c[0];
        let mut q = Self::zero(order);
        let mut acc = vec![ZERO; order + 1];
        for d in 0..=order {
            acc[..=d].iter_mut().for_each(|a| *a = ZERO);
            for d1 in 0..d {
                let d2 = d - d1;
                for k1 in 0..=d1 {
                    let x = q.c[block(d1) + k1];
                    if x == ZERO {
                        continue;
                    }
                    for k2 in 0..=d2 {
                        acc[k1 + k2] += x * g.c[block(d2) + k2];
                    }
                }
            }
            for k in 0..=d {
                q.c[block(d) + k] = (self.c[block(d) + k] - acc[k]) / g0;
            }
        }
        Ok(q)
    }

    pub fn recip(&self) -> Result<Jet> {
        Jet::constant(ONE, self.order).div(self)
    }

    /// Principal square root; the constant term must be real and positive.
    pub fn sqrt(&self) -> Result<Jet> {
        let c0 = self.c[0];
        self.check_invertible("sqrt")?;
        if c0.re <= 0.0 || c0.im.abs() > 1e-9 * c0.re {
            return Err(GeomError::JetDomain {
                op: "sqrt",
                value: format!("{c0}"),
            });
        }
        let order = self.order;
        let s0 = c0.sqrt();
        let mut s = Self::zero(order);
        s.c[0] = s0;
        let mut acc = vec![ZERO; order + 1];
        for d in 1..=order {
            acc[..=d].iter_mut().for_each(|a| *a = ZERO);
            for d1 in 1..d {
                let d2 = d - d1;
                for k1 in 0..=d1 {
                    let x = s.c[block(d1) + k1];
                    for k2 in 0..=d2 {
                        acc[k1 + k2] += x * s.c[block(d2) + k2];
                    }
                }
            }
            for k in 0..=d {
                s.c[block(d) + k] = (self.c[block(d) + k] - acc[k]) / (s0 * 2.0);
            }
        }
        Ok(s)
    }

    /// `g(f)` for a univariate analytic `g` given its Taylor coefficients
    /// `g⁽ⁿ⁾(f₀)/n!` at the constant term.
    fn compose(&self, taylor: &[Complex64]) -> Jet {
        let mut h = self.clone();
        h.c[0] = ZERO;
        let mut acc = Jet::constant(taylor[self.order], self.order);
        for n in (0..self.order).rev() {
            acc = acc.mul_jet(&h);
            acc.c[0] += taylor[n];
        }
        acc
    }

    fn cyclic(&self, cycle: [Complex64; 4]) -> Jet {
        let taylor: Vec<Complex64> = (0..=self.order).map(|n| cycle[n % 4] / factorial(n)).collect();
        self.compose(&taylor)
    }

    pub fn sin(&self) -> Jet {
        let (s, c) = (self.c[0].sin(), self.c[0].cos());
        self.cyclic([s, c, -s, -c])
    }

    pub fn cos(&self) -> Jet {
        let (s, c) = (self.c[0].sin(), self.c[0].cos());
        self.cyclic([c, -s, -c, s])
    }

    pub fn sinh(&self) -> Jet {
        let (s, c) = (self.c[0].sinh(), self.c[0].cosh());
        self.cyclic([s, c, s, c])
    }

    pub fn cosh(&self) -> Jet {
        let (s, c) = (self.c[0].sinh(), self.c[0].cosh());
        self.cyclic([c, s, c, s])
    }

    pub fn exp(&self) -> Jet {
        let e = self.c[0].exp();
        self.cyclic([e; 4])
    }

    /// Natural logarithm; the constant term must be real and positive.
    pub fn ln(&self) -> Result<Jet> {
        let c0 = self.c[0];
        if c0.re <= JET_SINGULAR_TOL || c0.im.abs() > 1e-12 * c0.re.abs() {
            return Err(GeomError::JetDomain {
                op: "ln",
                value: format!("{c0}"),
            });
        }
        let mut taylor = vec![c0.ln()];
        for n in 1..=self.order {
            let sign = if n % 2 == 1 { 1.0 } else { -1.0 };
            taylor.push(Complex64::new(sign / n as f64, 0.0) / c0.powu(n as u32));
        }
        Ok(self.compose(&taylor))
    }

    /// Integer power by repeated squaring; negative exponents divide.
    pub fn powi(&self, n: i32) -> Result<Jet> {
        if n < 0 {
            return self.powi(-n)?.recip();
        }
        let mut result = Jet::constant(ONE, self.order);
        let mut base = self.clone();
        let mut e = n as u32;
        while e > 0 {
            if e & 1 == 1 {
                result = result.mul_jet(&base);
            }
            e >>= 1;
            if e > 0 {
                base = base.mul_jet(&base);
            }
        }
        Ok(result)
    }

    /// Real power `f^p`; integral `p` goes through [`Jet::powi`], otherwise
    /// the constant term must be real and positive.
    pub fn powf(&self, p: f64) -> Result<Jet> {
        if p.fract() == 0.0 && p.abs() <= i32::MAX as f64 {
            return self.powi(p as i32);
        }
        let c0 = self.c[0];
        if c0.re <= JET_SINGULAR_TOL || c0.im.abs() > 1e-12 * c0.re.abs() {
            return Err(GeomError::JetDomain {
                op: "pow",
                value: format!("{c0}"),
            });
        }
        let mut taylor = Vec::with_capacity(self.order + 1);
        let mut binom = 1.0;
        for n in 0..=self.order {
            if n > 0 {
                binom *= (p - (n - 1) as f64) / n as f64;
            }
            taylor.push(c0.powf(p - n as f64) * binom);
        }
        Ok(self.compose(&taylor))
    }

    /// `f^g = exp(g ln f)` for a jet exponent.
    pub fn pow_jet(&self, g: &Jet) -> Result<Jet> {
        if g.c[1..].iter().all(|z| *z == ZERO) && g.c[0].im == 0.0 {
            return self.powf(g.c[0].re);
        }
        Ok((&self.ln()? * g).exp())
    }

    /// `∂_u`, lowering the order by one.
    pub fn d_u(&self) -> Result<Jet> {
        if self.order == 0 {
            return Err(GeomError::OrderExhausted {
                context: "d/du of an order-0 jet".into(),
            });
        }
        let order = self.order - 1;
        let mut out = Self::zero(order);
        for d in 0..=order {
            for k in 0..=d {
                let j = d - k;
                out.c[idx(j, k)] = self.c[idx(j + 1, k)] * (j + 1) as f64;
            }
        }
        Ok(out)
    }

    pub fn d_v(&self) -> Result<Jet> {
        if self.order == 0 {
            return Err(GeomError::OrderExhausted {
                context: "d/dv of an order-0 jet".into(),
            });
        }
        let order = self.order - 1;
        let mut out = Self::zero(order);
        for d in 0..=order {
            for k in 0..=d {
                let j = d - k;
                out.c[idx(j, k)] = self.c[idx(j, k + 1)] * (k + 1) as f64;
            }
        }
        Ok(out)
    }

    /// Substitutes `δu ↦ du`, `δv ↦ dv`, where both inputs have zero
    /// constant term: the Taylor series of `f(u₀ + du, v₀ + dv)`.
    pub fn compose2(&self, du: &Jet, dv: &Jet) -> Jet {
        let order = self.order.min(du.order).min(dv.order);
        let mut pu = vec![Jet::constant(ONE, order)];
        let mut pv = vec![Jet::constant(ONE, order)];
        for n in 1..=order {
            pu.push(pu[n - 1].mul_jet(du));
            pv.push(pv[n - 1].mul_jet(dv));
        }
        let mut out = Jet::zero(order);
        for d in 0..=order {
            for k in 0..=d {
                let a = self.c[idx(d - k, k)];
                if a != ZERO {
                    out = out + pu[d - k].mul_jet(&pv[k]).scale(a);
                }
            }
        }
        out
    }

    /// True when this is exactly the coordinate jet `u` (or `v`) seeded at
    /// some point, so composition with it is the identity.
    pub fn is_seed(&self, direction: usize) -> bool {
        self.c.iter().enumerate().all(|(i, z)| match i {
            0 => z.im == 0.0,
            1 | 2 if i == direction + 1 => *z == ONE,
            _ => *z == ZERO,
        })
    }

    /// Sign of the real part of the constant term (as ±1).
    pub fn sign_re(&self) -> f64 {
        if self.c[0].re < 0.0 {
            -1.0
        } else {
            1.0
        }
    }

    /// `|f|` for a real-valued jet whose constant term is nonzero.
    pub fn abs_re(&self) -> Jet {
        self.scale_re(self.sign_re())
    }
}

/// `½(∂_u − i∂_v) f`.
pub fn wirtinger_z(f: &Jet) -> Result<Jet> {
    let du = f.d_u()?;
    let dv = f.d_v()?;
    Ok((&du - &dv.scale(I)).scale_re(0.5))
}

/// `½(∂_u + i∂_v) f`.
pub fn wirtinger_zbar(f: &Jet) -> Result<Jet> {
    let du = f.d_u()?;
    let dv = f.d_v()?;
    Ok((&du + &dv.scale(I)).scale_re(0.5))
}

/// Coordinate jets `(u, v)` centred at the given point.
pub fn seed_point(u: f64, v: f64, order: usize) -> (Jet, Jet) {
    (Jet::variable_u(u, order), Jet::variable_v(v, order))
}

pub(crate) fn factorial(n: usize) -> f64 {
    (1..=n).map(|k| k as f64).product()
}

macro_rules! jet_binop {
    ($tr:ident, $m:ident, $body:expr) => {
        impl $tr<&Jet> for &Jet {
            type Output = Jet;
            fn $m(self, rhs: &Jet) -> Jet {
                $body(self, rhs)
            }
        }
        impl $tr<Jet> for Jet {
            type Output = Jet;
            fn $m(self, rhs: Jet) -> Jet {
                $body(&self, &rhs)
            }
        }
        impl $tr<&Jet> for Jet {
            type Output = Jet;
            fn $m(self, rhs: &Jet) -> Jet {
                $body(&self, rhs)
            }
        }
        impl $tr<Jet> for &Jet {
            type Output = Jet;
            fn $m(self, rhs: Jet) -> Jet {
                $body(self, &rhs)
            }
        }
    };
}

jet_binop!(Add, add, |a: &Jet, b: &Jet| a.binary(b, |x, y| x + y));
jet_binop!(Sub, sub, |a: &Jet, b: &Jet| a.binary(b, |x, y| x - y));
jet_binop!(Mul, mul, |a: &Jet, b: &Jet| a.mul_jet(b));

impl Neg for &Jet {
    type Output = Jet;
    fn neg(self) -> Jet {
        self.scale_re(-1.0)
    }
}

impl Neg for Jet {
    type Output = Jet;
    fn neg(self) -> Jet {
        self.scale_re(-1.0)
    }
}

/// Six jets: a vector field of ℝ⁶ (or its complexification) near a point.
#[derive(Debug, Clone, PartialEq)]
pub struct JetVec6(pub [Jet; 6]);

impl JetVec6 {
    pub fn from_fn(f: impl FnMut(usize) -> Jet) -> Self {
        JetVec6(std::array::from_fn(f))
    }

    pub fn constant(v: &Vec6, order: usize) -> Self {
        Self::from_fn(|i| Jet::real(v.0[i], order))
    }

    pub fn order(&self) -> usize {
        self.0.iter().map(Jet::order).min().unwrap()
    }

    /// Bilinear inner product as a jet.
    pub fn inner(&self, other: &JetVec6) -> Jet {
        let mut acc = &self.0[0] * &other.0[0];
        for i in 1..6 {
            let term = &self.0[i] * &other.0[i];
            acc = if SIGNATURE[i] > 0.0 { acc + term } else { acc - term };
        }
        acc
    }

    /// Inner product with a constant vector.
    pub fn inner_const(&self, w: &Vec6) -> Jet {
        let mut acc = Jet::zero(self.order());
        for i in 0..6 {
            if w.0[i] != 0.0 {
                acc = acc + self.0[i].scale_re(SIGNATURE[i] * w.0[i]);
            }
        }
        acc
    }

    pub fn value(&self) -> CVec6 {
        CVec6(std::array::from_fn(|i| self.0[i].value()))
    }

    /// Real part of the constant term.
    pub fn value_re(&self) -> Vec6 {
        Vec6(std::array::from_fn(|i| self.0[i].value().re))
    }

    pub fn scale(&self, k: &Jet) -> JetVec6 {
        Self::from_fn(|i| &self.0[i] * k)
    }

    pub fn scale_c(&self, k: Complex64) -> JetVec6 {
        Self::from_fn(|i| self.0[i].scale(k))
    }

    pub fn scale_re(&self, k: f64) -> JetVec6 {
        Self::from_fn(|i| self.0[i].scale_re(k))
    }

    pub fn div(&self, k: &Jet) -> Result<JetVec6> {
        let r = k.recip()?;
        Ok(self.scale(&r))
    }

    pub fn conj(&self) -> JetVec6 {
        Self::from_fn(|i| self.0[i].conj())
    }

    pub fn re(&self) -> JetVec6 {
        Self::from_fn(|i| self.0[i].re())
    }

    pub fn truncate(&self, order: usize) -> JetVec6 {
        Self::from_fn(|i| self.0[i].truncate(order))
    }

    pub fn d_z(&self) -> Result<JetVec6> {
        let comps = self.0.iter().map(wirtinger_z).collect::<Result<Vec<_>>>()?;
        Ok(JetVec6(comps.try_into().unwrap()))
    }

    pub fn d_zbar(&self) -> Result<JetVec6> {
        let comps = self.0.iter().map(wirtinger_zbar).collect::<Result<Vec<_>>>()?;
        Ok(JetVec6(comps.try_into().unwrap()))
    }

    pub fn d_u(&self) -> Result<JetVec6> {
        let comps = self.0.iter().map(Jet::d_u).collect::<Result<Vec<_>>>()?;
        Ok(JetVec6(comps.try_into().unwrap()))
    }

    pub fn d_v(&self) -> Result<JetVec6> {
        let comps = self.0.iter().map(Jet::d_v).collect::<Result<Vec<_>>>()?;
        Ok(JetVec6(comps.try_into().unwrap()))
    }

    /// Applies an O(4,2) motion componentwise (`x ↦ x T`).
    pub fn transform(&self, t: &Motion) -> JetVec6 {
        let m = t.matrix();
        let order = self.order();
        Self::from_fn(|j| {
            let mut acc = Jet::zero(order);
            for i in 0..6 {
                if m[i][j] != 0.0 {
                    acc = acc + self.0[i].scale_re(m[i][j]);
                }
            }
            acc
        })
    }

    /// Largest coefficient magnitude over all components.
    pub fn max_abs(&self) -> f64 {
        self.0.iter().map(Jet::max_abs).fold(0.0, f64::max)
    }

    /// Re-expands a field computed at a seeded point in terms of arbitrary
    /// coordinate jets `u`, `v` centred at that point.
    pub fn reexpand(&self, u: &Jet, v: &Jet) -> JetVec6 {
        let order = self.order().min(u.order()).min(v.order());
        if u.is_seed(0) && v.is_seed(1) {
            return self.truncate(order);
        }
        let du = u.add_const(-u.value());
        let dv = v.add_const(-v.value());
        Self::from_fn(|i| self.0[i].compose2(&du, &dv))
    }
}

impl Add<&JetVec6> for &JetVec6 {
    type Output = JetVec6;
    fn add(self, rhs: &JetVec6) -> JetVec6 {
        JetVec6::from_fn(|i| &self.0[i] + &rhs.0[i])
    }
}

impl Sub<&JetVec6> for &JetVec6 {
    type Output = JetVec6;
    fn sub(self, rhs: &JetVec6) -> JetVec6 {
        JetVec6::from_fn(|i| &self.0[i] - &rhs.0[i])
    }
}

impl Neg for &JetVec6 {
    type Output = JetVec6;
    fn neg(self) -> JetVec6 {
        self.scale_re(-1.0)
    }
}

/// Sum of `coefficient · vector` terms; the usual way frame identities are
/// assembled.
pub fn combine(terms: &[(&Jet, &JetVec6)]) -> JetVec6 {
    let mut iter = terms.iter();
    let (k, v) = iter.next().expect("at least one term");
    let mut acc = v.scale(k);
    for (k, v) in iter {
        acc = &acc + &v.scale(k);
    }
    acc
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn c(re: f64) -> Complex64 {
        Complex64::new(re, 0.0)
    }

    fn close(a: Complex64, b: Complex64, tol: f64) -> bool {
        (a - b).norm() <= tol * (1.0 + b.norm())
    }

    #[test]
    fn wirtinger_on_coordinates() {
        let (u, v) = seed_point(0.3, -0.2, 3);
        assert_eq!(wirtinger_z(&u).unwrap().value(), c(0.5));
        let z = &u + &v.scale(I);
        let zb = &u - &v.scale(I);
        assert!(close(wirtinger_z(&z).unwrap().value(), ONE, 1e-15));
        assert!(wirtinger_zbar(&z).unwrap().max_abs() < 1e-15);
        assert!(close(wirtinger_zbar(&zb).unwrap().value(), ONE, 1e-15));
        assert!(wirtinger_z(&zb).unwrap().max_abs() < 1e-15);
    }

    #[test]
    fn wirtinger_of_sin_cos() {
        let (u0, v0) = (0.3, 0.7);
        let (u, v) = seed_point(u0, v0, 4);
        let f = &u.sin() * &v.cos();
        let got = wirtinger_z(&f).unwrap().value();
        let want = Complex64::new(0.5 * u0.cos() * v0.cos(), 0.5 * u0.sin() * v0.sin());
        assert!((got - want).norm() < 1e-14);
    }

    #[test]
    fn laplacian_identity() {
        let (u, v) = seed_point(0.4, 1.1, 3);
        let f = &(&u * &u) + &(&v * &v);
        let lap = wirtinger_zbar(&wirtinger_z(&f).unwrap()).unwrap();
        assert!(close(lap.value(), ONE, 1e-15));
    }

    #[test]
    fn order_zero_cannot_differentiate() {
        let f = Jet::real(1.0, 0);
        assert!(matches!(wirtinger_z(&f), Err(GeomError::OrderExhausted { .. })));
    }

    #[test]
    fn seeded_products() {
        let (u, v) = seed_point(0.0, 0.0, 2);
        let uv = &u * &v;
        for d in 0..=2 {
            for k in 0..=d {
                let want = if (d - k, k) == (1, 1) { ONE } else { ZERO };
                assert_eq!(uv.coeff(d - k, k), want);
            }
        }
        let (u, _) = seed_point(1.0, 2.0, 3);
        let u2 = &u * &u;
        assert_eq!(u2.coeff(0, 0), c(1.0));
        assert_eq!(u2.coeff(1, 0), c(2.0));
        assert_eq!(u2.coeff(2, 0), c(1.0));
        assert_eq!(u2.coeff(3, 0), ZERO);
    }

    #[test]
    fn exp_series_oracle() {
        let (u, v) = seed_point(0.5, 0.5, 5);
        let f = (&u + &v).exp();
        let e = 1f64.exp();
        for d in 0..=5 {
            for k in 0..=d {
                let j = d - k;
                let want = e / (factorial(j) * factorial(k));
                assert!((f.coeff(j, k).re - want).abs() < 1e-14, "{j} {k}");
            }
        }
    }

    #[test]
    fn singular_division_is_rejected() {
        let (u, _) = seed_point(1e-12, 0.0, 3);
        assert!(matches!(Jet::real(1.0, 3).div(&u), Err(GeomError::SingularJet { .. })));
        assert!(matches!(Jet::real(-2.0, 3).sqrt(), Err(GeomError::JetDomain { .. })));
    }

    /// Analytic derivative battery. Each case supplies the closed-form mixed
    /// partial `∂uʲ∂vᵏ f` at the point; the jet must reproduce the Taylor
    /// coefficient `∂uʲ∂vᵏ f / (j! k!)`.
    #[test]
    fn analytic_battery_up_to_order_six() {
        let worst = battery_max_error(6);
        assert!(worst < 1e-13, "worst coefficient error {worst:e}");
    }

    pub(crate) fn battery_max_error(order: usize) -> f64 {
        let (u0, v0) = (0.37, -0.81);
        let (a, b) = (1.3, -0.7);
        let (u, v) = seed_point(u0, v0, order);
        let lin = &u.scale_re(a) + &v.scale_re(b);
        let x0 = a * u0 + b * v0;
        type Case = (Jet, Box<dyn Fn(usize, usize) -> f64>);
        let cases: Vec<Case> = vec![
            (
                lin.sin(),
                Box::new(move |j, k| {
                    a.powi(j as i32) * b.powi(k as i32) * (x0 + (j + k) as f64 * std::f64::consts::FRAC_PI_2).sin()
                }),
            ),
            (
                lin.cos(),
                Box::new(move |j, k| {
                    a.powi(j as i32) * b.powi(k as i32) * (x0 + (j + k) as f64 * std::f64::consts::FRAC_PI_2).cos()
                }),
            ),
            (
                lin.exp(),
                Box::new(move |j, k| a.powi(j as i32) * b.powi(k as i32) * x0.exp()),
            ),
            (
                lin.add_const(c(2.0)).sqrt().unwrap(),
                Box::new(move |j, k| {
                    let n = j + k;
                    let falling: f64 = (0..n).map(|i| 0.5 - i as f64).product();
                    a.powi(j as i32) * b.powi(k as i32) * falling * (2.0 + x0).powf(0.5 - n as f64)
                }),
            ),
            (
                Jet::real(1.0, order).div(&lin.add_const(c(3.0))).unwrap(),
                Box::new(move |j, k| {
                    let n = j + k;
                    let sign = if n % 2 == 0 { 1.0 } else { -1.0 };
                    a.powi(j as i32) * b.powi(k as i32) * sign * factorial(n) * (3.0 + x0).powi(-(n as i32) - 1)
                }),
            ),
            (
                &u.sin() * &v.cos(),
                Box::new(move |j, k| {
                    use std::f64::consts::FRAC_PI_2;
                    (u0 + j as f64 * FRAC_PI_2).sin() * (v0 + k as f64 * FRAC_PI_2).cos()
                }),
            ),
            (
                &u.sinh() * &v.cosh(),
                Box::new(move |j, k| {
                    let sh = if j % 2 == 0 { u0.sinh() } else { u0.cosh() };
                    let ch = if k % 2 == 0 { v0.cosh() } else { v0.sinh() };
                    sh * ch
                }),
            ),
            (
                // exp((u+v)/2) computed the long way round.
                (&u + &v).exp().sqrt().unwrap(),
                Box::new(move |j, k| 0.5f64.powi((j + k) as i32) * (0.5 * (u0 + v0)).exp()),
            ),
        ];
        let mut worst: f64 = 0.0;
        for (jet, oracle) in &cases {
            for d in 0..=order {
                for k in 0..=d {
                    let j = d - k;
                    let want = oracle(j, k) / (factorial(j) * factorial(k));
                    let got = jet.coeff(j, k);
                    worst = worst.max((got.re - want).abs() / want.abs().max(1.0)).max(got.im.abs());
                }
            }
        }
        worst
    }

    fn arb_poly(deg: usize) -> impl Strategy<Value = Vec<f64>> {
        prop::collection::vec(-2.0f64..2.0, len_for(deg))
    }

    fn poly_jet(coeffs: &[f64], deg: usize, order: usize) -> Jet {
        Jet::from_fn(order, |j, k| if j + k <= deg { c(coeffs[idx(j, k)]) } else { ZERO })
    }

    proptest! {
        #[test]
        fn product_matches_polynomial_product(p in arb_poly(3), q in arb_poly(3)) {
            let order = 6;
            let a = poly_jet(&p, 3, order);
            let b = poly_jet(&q, 3, order);
            let prod = &a * &b;
            for d in 0..=order {
                for k in 0..=d {
                    let j = d - k;
                    let mut want = 0.0;
                    for j1 in 0..=j.min(3) {
                        for k1 in 0..=k.min(3) {
                            let (j2, k2) = (j - j1, k - k1);
                            if j1 + k1 <= 3 && j2 + k2 <= 3 {
                                want += p[idx(j1, k1)] * q[idx(j2, k2)];
                            }
                        }
                    }
                    prop_assert!((prod.coeff(j, k).re - want).abs() < 1e-12);
                }
            }
        }

        #[test]
        fn wirtinger_operators_commute(p in arb_poly(4)) {
            let f = poly_jet(&p, 4, 4);
            let zzb = wirtinger_zbar(&wirtinger_z(&f).unwrap()).unwrap();
            let zbz = wirtinger_z(&wirtinger_zbar(&f).unwrap()).unwrap();
            prop_assert!((&zzb - &zbz).max_abs() == 0.0);
        }

        #[test]
        fn division_then_multiplication_roundtrips(p in arb_poly(3), q in arb_poly(3)) {
            prop_assume!(q[0].abs() > 0.3);
            let f = poly_jet(&p, 3, 5);
            let g = poly_jet(&q, 3, 5);
            let back = &f.div(&g).unwrap() * &g;
            prop_assert!((&back - &f).max_abs() < 1e-9 * (1.0 + f.max_abs()));
        }
    }
}
