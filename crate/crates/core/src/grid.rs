//! Sample grids over chart domains and the data-parallel sweep used by every
//! pointwise check.
//!
//! With the `parallel` feature (on by default) sweeps run on the rayon pool;
//! without it they run on the calling thread. Both collect results in grid
//! order, so reductions over a sweep are deterministic either way.

use serde::{Deserialize, Serialize};

use crate::error::{GeomError, Result};
use crate::surfaces::Domain;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct GridSpec {
    pub nu: usize,
    pub nv: usize,
}

impl GridSpec {
    pub const DEFAULT: GridSpec = GridSpec { nu: 32, nv: 32 };

    pub fn new(nu: usize, nv: usize) -> Result<Self> {
        if nu == 0 || nv == 0 {
            return Err(GeomError::InvalidGrid(format!("{nu}x{nv} has no points")));
        }
        Ok(GridSpec { nu, nv })
    }

    /// Parses `NUxNV`, e.g. `32x32`.
    pub fn parse(text: &str) -> Result<Self> {
        let bad = || GeomError::InvalidGrid(format!("expected NUxNV, got {text:?}"));
        let (a, b) = text.trim().split_once(['x', 'X']).ok_or_else(bad)?;
        let nu = a.trim().parse().map_err(|_| bad())?;
        let nv = b.trim().parse().map_err(|_| bad())?;
        Self::new(nu, nv)
    }

    pub fn len(&self) -> usize {
        self.nu * self.nv
    }

    pub fn is_empty(&self) -> bool {
        self.len() == 0
    }
}

/// Interior sample coordinates along one axis. Periodic axes take `n` equally
/// spaced points starting at the lower end; bounded axes stay one step away
/// from both ends.
pub fn axis_samples(lo: f64, hi: f64, n: usize, periodic: bool) -> Vec<f64> {
    if periodic {
        let h = (hi - lo) / n as f64;
        (0..n).map(|i| lo + i as f64 * h).collect()
    } else {
        let h = (hi - lo) / (n + 1) as f64;
        (0..n).map(|i| lo + (i + 1) as f64 * h).collect()
    }
}

/// Row-major sample points, `u` varying slowest.
pub fn sample_points(domain: &Domain, periodic_u: bool, periodic_v: bool, grid: GridSpec) -> Vec<(f64, f64)> {
    let us = axis_samples(domain.u0, domain.u1, grid.nu, periodic_u);
    let vs = axis_samples(domain.v0, domain.v1, grid.nv, periodic_v);
    us.iter().flat_map(|&u| vs.iter().map(move |&v| (u, v))).collect()
}

/// Evaluates `f` at every point on the calling thread.
pub fn sweep_sequential<T, F>(points: &[(f64, f64)], f: F) -> Vec<T>
where
    F: Fn(f64, f64) -> T,
{
    points.iter().map(|&(u, v)| f(u, v)).collect()
}

/// Evaluates `f` at every point on the rayon pool, preserving order.
#[cfg(feature = "parallel")]
pub fn sweep_parallel<T, F>(points: &[(f64, f64)], f: F) -> Vec<T>
where
    T: Send,
    F: Fn(f64, f64) -> T + Sync + Send,
{
    use rayon::prelude::*;
    points.par_iter().map(|&(u, v)| f(u, v)).collect()
}

/// The default sweep: parallel when the feature is enabled.
pub fn sweep<T, F>(points: &[(f64, f64)], f: F) -> Vec<T>
where
    T: Send,
    F: Fn(f64, f64) -> T + Sync + Send,
{
    #[cfg(feature = "parallel")]
    {
        sweep_parallel(points, f)
    }
    #[cfg(not(feature = "parallel"))]
    {
        sweep_sequential(points, f)
    }
}
