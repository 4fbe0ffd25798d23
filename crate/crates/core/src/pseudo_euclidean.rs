//! Linear algebra of ℝ⁶ with the signature-(4,2) inner product.
//!
//! Coordinates are laid out as `diag(+,+,+,+,−,−)`: slots 0..=3 are
//! spacelike, slots 4 and 5 timelike. Every embedding in [`crate::surfaces`]
//! is arranged against this layout.
//!
//! Inner products of wedge products are never materialized as coordinates of
//! Λᵏℝ⁶; they are evaluated as Gram determinants `det[⟨aᵢ, bⱼ⟩]`.

use std::ops::{Add, Index, IndexMut, Mul, Neg, Sub};

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::error::{GeomError, Result};

/// Diagonal of the ambient form.
pub const SIGNATURE: [f64; 6] = [1.0, 1.0, 1.0, 1.0, -1.0, -1.0];

/// Tolerance used when validating a [`Motion`].
pub const MOTION_TOL: f64 = 1e-12;

#[derive(Debug, Clone, Copy, PartialEq, Default, Serialize, Deserialize)]
pub struct Vec6(pub [f64; 6]);

#[derive(Debug, Clone, Copy, PartialEq, Default)]
pub struct CVec6(pub [Complex64; 6]);

impl Vec6 {
    pub const ZERO: Vec6 = Vec6([0.0; 6]);

    pub fn new(c: [f64; 6]) -> Self {
        Vec6(c)
    }

    /// The i-th standard basis vector.
    pub fn basis(i: usize) -> Self {
        let mut c = [0.0; 6];
        c[i] = 1.0;
        Vec6(c)
    }

    pub fn inner(&self, other: &Vec6) -> f64 {
        (0..6).map(|i| SIGNATURE[i] * self.0[i] * other.0[i]).sum()
    }

    pub fn norm_sq(&self) -> f64 {
        self.inner(self)
    }

    /// Euclidean norm of the coordinates (not the indefinite form).
    pub fn euclidean_norm(&self) -> f64 {
        self.0.iter().map(|x| x * x).sum::<f64>().sqrt()
    }

    pub fn scale(&self, k: f64) -> Vec6 {
        Vec6(self.0.map(|x| k * x))
    }

    pub fn complexify(&self) -> CVec6 {
        CVec6(self.0.map(|x| Complex64::new(x, 0.0)))
    }

    /// Light-cone membership relative to the Euclidean size of the vector.
    pub fn is_lightlike(&self, tol: f64) -> bool {
        self.norm_sq().abs() <= tol * self.euclidean_norm().powi(2)
    }
}

impl CVec6 {
    pub fn inner(&self, other: &CVec6) -> Complex64 {
        (0..6).map(|i| self.0[i] * other.0[i] * SIGNATURE[i]).sum()
    }

    pub fn conj(&self) -> CVec6 {
        CVec6(self.0.map(|z| z.conj()))
    }

    pub fn re(&self) -> Vec6 {
        Vec6(self.0.map(|z| z.re))
    }

    pub fn im(&self) -> Vec6 {
        Vec6(self.0.map(|z| z.im))
    }

    pub fn euclidean_norm(&self) -> f64 {
        self.0.iter().map(|z| z.norm_sqr()).sum::<f64>().sqrt()
    }

    pub fn scale(&self, k: Complex64) -> CVec6 {
        CVec6(self.0.map(|z| k * z))
    }
}

macro_rules! impl_vec_ops {
    ($t:ty) => {
        impl Add for $t {
            type Output = $t;
            fn add(self, rhs: $t) -> $t {
                let mut out = self;
                for i in 0..6 {
                    out.0[i] = self.0[i] + rhs.0[i];
                }
                out
            }
        }
        impl Sub for $t {
            type Output = $t;
            fn sub(self, rhs: $t) -> $t {
                let mut out = self;
                for i in 0..6 {
                    out.0[i] = self.0[i] - rhs.0[i];
                }
                out
            }
        }
        impl Neg for $t {
            type Output = $t;
            fn neg(self) -> $t {
                let mut out = self;
                for i in 0..6 {
                    out.0[i] = -self.0[i];
                }
                out
            }
        }
    };
}
impl_vec_ops!(Vec6);
impl_vec_ops!(CVec6);

impl Mul<Vec6> for f64 {
    type Output = Vec6;
    fn mul(self, rhs: Vec6) -> Vec6 {
        rhs.scale(self)
    }
}

impl Index<usize> for Vec6 {
    type Output = f64;
    fn index(&self, i: usize) -> &f64 {
        &self.0[i]
    }
}

impl IndexMut<usize> for Vec6 {
    fn index_mut(&mut self, i: usize) -> &mut f64 {
        &mut self.0[i]
    }
}

impl From<[f64; 6]> for Vec6 {
    fn from(c: [f64; 6]) -> Self {
        Vec6(c)
    }
}

/// Bilinear inner product of real vectors.
pub fn inner(x: &Vec6, y: &Vec6) -> f64 {
    x.inner(y)
}

/// Bilinear (not sesquilinear) extension to complex vectors.
pub fn inner_c(x: &CVec6, y: &CVec6) -> Complex64 {
    x.inner(y)
}

/// `⟨a₁∧…∧a_k, b₁∧…∧b_k⟩ = det[⟨aᵢ, bⱼ⟩]`.
///
/// # Panics
/// If the sequences differ in length or `k` is outside `1..=6`.
pub fn gram_wedge_inner(a: &[Vec6], b: &[Vec6]) -> f64 {
    assert_eq!(a.len(), b.len(), "wedge factors must have equal length");
    assert!((1..=6).contains(&a.len()), "wedge degree must be in 1..=6");
    let k = a.len();
    let mut m = vec![vec![0.0; k]; k];
    for i in 0..k {
        for j in 0..k {
            m[i][j] = a[i].inner(&b[j]);
        }
    }
    det_real(m)
}

/// Complex-bilinear variant of [`gram_wedge_inner`].
pub fn gram_wedge_inner_c(a: &[CVec6], b: &[CVec6]) -> Complex64 {
    assert_eq!(a.len(), b.len(), "wedge factors must have equal length");
    assert!((1..=6).contains(&a.len()), "wedge degree must be in 1..=6");
    let k = a.len();
    let mut m = vec![vec![Complex64::new(0.0, 0.0); k]; k];
    for i in 0..k {
        for j in 0..k {
            m[i][j] = a[i].inner(&b[j]);
        }
    }
    det_complex(m)
}

/// Determinant by Gaussian elimination with partial pivoting.
pub fn det_real(mut m: Vec<Vec<f64>>) -> f64 {
    let n = m.len();
    let mut det = 1.0;
    for col in 0..n {
        let pivot = (col..n)
            .max_by(|&a, &b| m[a][col].abs().total_cmp(&m[b][col].abs()))
            .unwrap();
        if m[pivot][col] == 0.0 {
            return 0.0;
        }
        if pivot != col {
            m.swap(pivot, col);
            det = -det;
        }
        det *= m[col][col];
        for row in col + 1..n {
            let f = m[row][col] / m[col][col];
            for c in col..n {
                m[row][c] -= f * m[col][c];
            }
        }
    }
    det
}

pub fn det_complex(mut m: Vec<Vec<Complex64>>) -> Complex64 {
    let n = m.len();
    let mut det = Complex64::new(1.0, 0.0);
    for col in 0..n {
        let pivot = (col..n)
            .max_by(|&a, &b| m[a][col].norm().total_cmp(&m[b][col].norm()))
            .unwrap();
        if m[pivot][col].norm() == 0.0 {
            return Complex64::new(0.0, 0.0);
        }
        if pivot != col {
            m.swap(pivot, col);
            det = -det;
        }
        det *= m[col][col];
        for row in col + 1..n {
            let f = m[row][col] / m[col][col];
            for c in col..n {
                let sub = f * m[col][c];
                m[row][c] -= sub;
            }
        }
    }
    det
}

/// Determinant of six vectors taken as rows, in the standard orientation.
pub fn det6(rows: [Vec6; 6]) -> f64 {
    det_real(rows.iter().map(|r| r.0.to_vec()).collect())
}

/// An element of O(4,2), acting on row vectors: `x ↦ x T`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct Motion {
    t: [[f64; 6]; 6],
}

impl Motion {
    /// Validates that the rows (images of the basis vectors) preserve the form.
    pub fn new(t: [[f64; 6]; 6]) -> Result<Self> {
        let m = Motion { t };
        let dev = m.orthogonality_defect();
        if dev > MOTION_TOL {
            return Err(GeomError::MotionNotOrthogonal { deviation: dev });
        }
        Ok(m)
    }

    pub fn identity() -> Self {
        let mut t = [[0.0; 6]; 6];
        for (i, row) in t.iter_mut().enumerate() {
            row[i] = 1.0;
        }
        Motion { t }
    }

    /// Rotation by `angle` in the plane of basis vectors `i`, `j` of equal sign.
    /// Opposite-sign planes get a boost with rapidity `angle` instead.
    pub fn plane(i: usize, j: usize, angle: f64) -> Self {
        assert!(i != j && i < 6 && j < 6);
        let mut m = Self::identity();
        if SIGNATURE[i] == SIGNATURE[j] {
            let (s, c) = angle.sin_cos();
            m.t[i][i] = c;
            m.t[i][j] = s;
            m.t[j][i] = -s;
            m.t[j][j] = c;
        } else {
            let (s, c) = (angle.sinh(), angle.cosh());
            m.t[i][i] = c;
            m.t[i][j] = s;
            m.t[j][i] = s;
            m.t[j][j] = c;
        }
        m
    }

    /// `self` followed by `other`.
    pub fn then(&self, other: &Motion) -> Motion {
        let mut t = [[0.0; 6]; 6];
        for i in 0..6 {
            for j in 0..6 {
                t[i][j] = (0..6).map(|k| self.t[i][k] * other.t[k][j]).sum();
            }
        }
        Motion { t }
    }

    pub fn matrix(&self) -> &[[f64; 6]; 6] {
        &self.t
    }

    /// Largest deviation of `⟨T eᵢ, T eⱼ⟩` from `⟨eᵢ, eⱼ⟩`.
    pub fn orthogonality_defect(&self) -> f64 {
        let mut dev: f64 = 0.0;
        for i in 0..6 {
            for j in 0..6 {
                let img = Vec6(self.t[i]).inner(&Vec6(self.t[j]));
                let want = if i == j { SIGNATURE[i] } else { 0.0 };
                dev = dev.max((img - want).abs());
            }
        }
        dev
    }

    pub fn apply(&self, x: &Vec6) -> Vec6 {
        let mut out = [0.0; 6];
        for (j, o) in out.iter_mut().enumerate() {
            *o = (0..6).map(|i| x.0[i] * self.t[i][j]).sum();
        }
        Vec6(out)
    }

    pub fn apply_c(&self, x: &CVec6) -> CVec6 {
        let mut out = [Complex64::new(0.0, 0.0); 6];
        for (j, o) in out.iter_mut().enumerate() {
            *o = (0..6).map(|i| x.0[i] * self.t[i][j]).sum();
        }
        CVec6(out)
    }
}

/// Re-validates the motion before applying it, so hand-built tables that
/// drifted off O(4,2) are rejected rather than silently used.
pub fn apply_motion(t: &Motion, x: &Vec6) -> Result<Vec6> {
    let dev = t.orthogonality_defect();
    if dev > MOTION_TOL {
        return Err(GeomError::MotionNotOrthogonal { deviation: dev });
    }
    Ok(t.apply(x))
}

/// A point of ℝP⁵ given by a nonzero representative.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct ProjectivePoint {
    rep: Vec6,
}

impl ProjectivePoint {
    pub fn new(rep: Vec6) -> Result<Self> {
        if rep.euclidean_norm() == 0.0 || !rep.euclidean_norm().is_finite() {
            return Err(GeomError::ZeroRepresentative);
        }
        Ok(ProjectivePoint { rep })
    }

    pub fn rep(&self) -> &Vec6 {
        &self.rep
    }

    /// Unit Euclidean representative.
    pub fn normalized(&self) -> Vec6 {
        self.rep.scale(1.0 / self.rep.euclidean_norm())
    }

    pub fn on_light_cone(&self, tol: f64) -> bool {
        self.rep.is_lightlike(tol)
    }

    pub fn transformed(&self, t: &Motion) -> Result<Self> {
        ProjectivePoint::new(apply_motion(t, &self.rep)?)
    }
}

/// `min(‖p̂ − q̂‖, ‖p̂ + q̂‖)` after Euclidean normalization.
pub fn projective_distance(p: &ProjectivePoint, q: &ProjectivePoint) -> f64 {
    let a = p.normalized();
    let b = q.normalized();
    (a - b).euclidean_norm().min((a + b).euclidean_norm())
}

/// Convenience wrapper taking raw representatives.
pub fn projective_distance_vec(p: &Vec6, q: &Vec6) -> Result<f64> {
    Ok(projective_distance(
        &ProjectivePoint::new(*p)?,
        &ProjectivePoint::new(*q)?,
    ))
}
