//! Uniform 1D grids, sampled complex fields and their scalar diagnostics.

use num_complex::Complex64;
use serde::Serialize;

use crate::error::{Error, Result};

/// Whether the right end point is a grid node.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum GridLayout {
    /// `x_j = x_min + j h`, `h = (x_max − x_min)/n`, `x_max` identified
    /// with `x_min`.
    Periodic,
    /// Both ends are nodes: `h = (x_max − x_min)/(n − 1)`.
    Closed,
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct Grid1D {
    x_min: f64,
    x_max: f64,
    n: usize,
    layout: GridLayout,
}

impl Grid1D {
    pub const MIN_POINTS: usize = 16;

    /// Spectral grid; `n` must be a power of two.
    pub fn periodic(x_min: f64, x_max: f64, n: usize) -> Result<Self> {
        if !n.is_power_of_two() {
            return Err(Error::invalid(
                "grid.n",
                format!("spectral grids need a power of two, got {n}"),
            ));
        }
        Self::with_layout(x_min, x_max, n, GridLayout::Periodic)
    }

    pub fn closed(x_min: f64, x_max: f64, n: usize) -> Result<Self> {
        Self::with_layout(x_min, x_max, n, GridLayout::Closed)
    }

    fn with_layout(x_min: f64, x_max: f64, n: usize, layout: GridLayout) -> Result<Self> {
        if !(x_min.is_finite() && x_max.is_finite()) || x_max <= x_min {
            return Err(Error::invalid(
                "grid",
                format!("need finite x_max > x_min, got [{x_min}, {x_max}]"),
            ));
        }
        if n < Self::MIN_POINTS {
            return Err(Error::invalid(
                "grid.n",
                format!("need at least {} points, got {n}", Self::MIN_POINTS),
            ));
        }
        Ok(Self {
            x_min,
            x_max,
            n,
            layout,
        })
    }

    pub fn x_min(&self) -> f64 {
        self.x_min
    }

    pub fn x_max(&self) -> f64 {
        self.x_max
    }

    pub fn len(&self) -> usize {
        self.n
    }

    pub fn is_empty(&self) -> bool {
        self.n == 0
    }

    pub fn layout(&self) -> GridLayout {
        self.layout
    }

    pub fn spacing(&self) -> f64 {
        match self.layout {
            GridLayout::Periodic => (self.x_max - self.x_min) / self.n as f64,
            GridLayout::Closed => (self.x_max - self.x_min) / (self.n - 1) as f64,
        }
    }

    pub fn point(&self, j: usize) -> f64 {
        self.x_min + j as f64 * self.spacing()
    }

    pub fn points(&self) -> Vec<f64> {
        (0..self.n).map(|j| self.point(j)).collect()
    }

    /// Trapezoid weights: uniform on periodic grids, halved end points on
    /// closed ones.
    pub fn weight(&self, j: usize) -> f64 {
        let h = self.spacing();
        match self.layout {
            GridLayout::Closed if j == 0 || j + 1 == self.n => 0.5 * h,
            _ => h,
        }
    }
}

/// Field samples `Ψ(x_j, t)`.
#[derive(Debug, Clone, PartialEq)]
pub struct FieldState {
    pub grid: Grid1D,
    pub t: f64,
    pub values: Vec<Complex64>,
}

impl FieldState {
    pub fn new(grid: Grid1D, t: f64, values: Vec<Complex64>) -> Result<Self> {
        if values.len() != grid.len() {
            return Err(Error::GridMismatch {
                expected: grid.len(),
                found: values.len(),
            });
        }
        if values.iter().any(|v| !v.is_finite()) {
            return Err(Error::invalid("values", "field contains NaN or Inf"));
        }
        Ok(Self { grid, t, values })
    }

    pub fn from_fn(grid: Grid1D, t: f64, f: impl Fn(f64) -> Complex64) -> Result<Self> {
        let values = grid.points().into_iter().map(f).collect();
        Self::new(grid, t, values)
    }

    pub fn is_finite(&self) -> bool {
        self.values.iter().all(|v| v.is_finite())
    }

    pub fn density(&self) -> Vec<f64> {
        self.values.iter().map(|v| v.norm_sqr()).collect()
    }

    pub fn norm(&self) -> f64 {
        self.values
            .iter()
            .enumerate()
            .map(|(j, v)| v.norm_sqr() * self.grid.weight(j))
            .sum()
    }
}

/// Scalar diagnostics of one field sample.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct Observables {
    pub t: f64,
    pub norm: f64,
    pub peak: f64,
    pub centroid: f64,
    pub width: f64,
    /// Discrete L² norm of `|Ψ|² − |Ψ_ref|²`.
    pub l2_error: f64,
    /// Max of `||Ψ|² − |Ψ_ref|²|`.
    pub linf_error: f64,
}

pub fn compute_observables(state: &FieldState, reference: &[Complex64]) -> Result<Observables> {
    let grid = &state.grid;
    if reference.len() != grid.len() {
        return Err(Error::GridMismatch {
            expected: grid.len(),
            found: reference.len(),
        });
    }
    let mut norm = 0.0;
    let mut first = 0.0;
    let mut peak = 0.0f64;
    let mut l2 = 0.0;
    let mut linf = 0.0f64;
    for (j, (psi, r)) in state.values.iter().zip(reference).enumerate() {
        let w = grid.weight(j);
        let d = psi.norm_sqr();
        norm += d * w;
        first += grid.point(j) * d * w;
        peak = peak.max(d);
        let e = d - r.norm_sqr();
        l2 += e * e * w;
        linf = linf.max(e.abs());
    }
    let (centroid, width) = if norm > 0.0 {
        let c = first / norm;
        let second: f64 = state
            .values
            .iter()
            .enumerate()
            .map(|(j, psi)| (grid.point(j) - c).powi(2) * psi.norm_sqr() * grid.weight(j))
            .sum();
        (c, (second / norm).sqrt())
    } else {
        (0.0, 0.0)
    };
    Ok(Observables {
        t: state.t,
        norm,
        peak,
        centroid,
        width,
        l2_error: l2.sqrt(),
        linf_error: linf,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn grid_validation() {
        assert!(Grid1D::periodic(-1.0, 1.0, 100).is_err());
        assert!(Grid1D::periodic(-1.0, 1.0, 8).is_err());
        assert!(Grid1D::periodic(1.0, -1.0, 64).is_err());
        assert!(Grid1D::closed(-1.0, 1.0, 17).is_ok());
        let g = Grid1D::closed(-20.0, 20.0, 2001).unwrap();
        assert_eq!(g.spacing(), 0.02);
        assert_eq!(g.point(1000), 0.0);
        assert_eq!(g.point(2000), 20.0);
        let g = Grid1D::periodic(-40.0, 40.0, 2048).unwrap();
        assert_eq!(g.point(1024), 0.0);
    }

    #[test]
    fn zero_field() {
        let g = Grid1D::periodic(-5.0, 5.0, 64).unwrap();
        let s = FieldState::from_fn(g, 0.0, |_| Complex64::new(0.0, 0.0)).unwrap();
        let reference: Vec<_> = g.points().iter().map(|x| Complex64::new((-x * x).exp(), 0.0)).collect();
        let o = compute_observables(&s, &reference).unwrap();
        assert_eq!(o.norm, 0.0);
        assert_eq!(o.peak, 0.0);
        assert_eq!(o.linf_error, 1.0);
        let l2: f64 = reference.iter().map(|r| r.norm_sqr().powi(2) * g.spacing()).sum::<f64>().sqrt();
        assert!((o.l2_error - l2).abs() < 1e-15);
    }

    #[test]
    fn even_density_is_centred() {
        let g = Grid1D::periodic(-8.0, 8.0, 256).unwrap();
        let s = FieldState::from_fn(g, 0.0, |x| Complex64::new((-(x * x)).exp(), 0.3 * x * (-(x * x)).exp())).unwrap();
        let o = compute_observables(&s, &s.values).unwrap();
        assert!(o.centroid.abs() < 1e-10);
        assert_eq!(o.linf_error, 0.0);
    }

    #[test]
    fn mismatched_reference_is_rejected() {
        let g = Grid1D::closed(0.0, 1.0, 20).unwrap();
        let s = FieldState::from_fn(g, 0.0, |_| Complex64::new(1.0, 0.0)).unwrap();
        assert!(matches!(
            compute_observables(&s, &[Complex64::new(0.0, 0.0); 3]),
            Err(Error::GridMismatch { expected: 20, found: 3 })
        ));
        assert!((s.norm() - 1.0).abs() < 1e-14);
    }

    #[test]
    fn non_finite_values_are_rejected() {
        let g = Grid1D::closed(0.0, 1.0, 20).unwrap();
        assert!(FieldState::from_fn(g, 0.0, |x| Complex64::new(1.0 / (x - x), 0.0)).is_err());
    }
}
