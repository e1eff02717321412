//! Sampled probability densities over one or more coordinates.

use crate::error::{Error, Result};

/// One named coordinate axis with strictly increasing samples.
#[derive(Debug, Clone)]
pub struct Axis {
    pub name: String,
    pub samples: Vec<f64>,
}

impl Axis {
    pub fn new(name: impl Into<String>, samples: Vec<f64>) -> Result<Self> {
        if samples.len() < 2 {
            return Err(Error::InvalidGrid(
                "axis needs at least 2 samples".into(),
            ));
        }
        if samples.windows(2).any(|w| !(w[1] > w[0])) {
            return Err(Error::InvalidGrid(
                "axis samples must be strictly increasing".into(),
            ));
        }
        if samples.iter().any(|x| !x.is_finite()) {
            return Err(Error::InvalidGrid("axis samples must be finite".into()));
        }
        Ok(Self {
            name: name.into(),
            samples,
        })
    }

    /// Uniformly spaced axis over [start, stop].
    pub fn linspace(name: impl Into<String>, start: f64, stop: f64, count: usize) -> Result<Self> {
        if count < 2 {
            return Err(Error::InvalidGrid("axis needs at least 2 samples".into()));
        }
        let step = (stop - start) / (count - 1) as f64;
        Axis::new(name, (0..count).map(|i| start + step * i as f64).collect())
    }

    /// Trapezoidal quadrature weights for this axis.
    fn trapezoid_weights(&self) -> Vec<f64> {
        let n = self.samples.len();
        let mut w = vec![0.0; n];
        for i in 0..n - 1 {
            let h = 0.5 * (self.samples[i + 1] - self.samples[i]);
            w[i] += h;
            w[i + 1] += h;
        }
        w
    }
}

/// Sampled density over the product of its axes, row-major with the last
/// axis fastest.
#[derive(Debug, Clone)]
pub struct PdfGrid {
    pub axes: Vec<Axis>,
    pub values: Vec<f64>,
    /// Trapezoidal integral of the stored values at construction or the last
    /// normalization (1.0 after `normalize`).
    pub norm: f64,
}

impl PdfGrid {
    pub fn new(axes: Vec<Axis>, values: Vec<f64>) -> Result<Self> {
        if axes.is_empty() {
            return Err(Error::InvalidGrid("grid needs at least one axis".into()));
        }
        let expected: usize = axes.iter().map(|a| a.samples.len()).product();
        if values.len() != expected {
            return Err(Error::InvalidGrid(format!(
                "value count {} does not match grid shape product {expected}",
                values.len()
            )));
        }
        if values.iter().any(|v| !v.is_finite()) {
            return Err(Error::InvalidGrid("grid values must be finite".into()));
        }
        if values.iter().any(|v| *v < 0.0) {
            return Err(Error::InvalidGrid("grid values must be non-negative".into()));
        }
        let mut grid = Self {
            axes,
            values,
            norm: 0.0,
        };
        grid.norm = grid.integral();
        Ok(grid)
    }

    /// Fill a 1D grid from a function of the axis coordinate.
    pub fn from_fn_1d(axis: Axis, f: impl Fn(f64) -> f64) -> Result<Self> {
        let values = axis.samples.iter().map(|&x| f(x)).collect();
        Self::new(vec![axis], values)
    }

    pub fn shape(&self) -> Vec<usize> {
        self.axes.iter().map(|a| a.samples.len()).collect()
    }

    /// Trapezoidal integral over all axes.
    pub fn integral(&self) -> f64 {
        let weights: Vec<Vec<f64>> = self.axes.iter().map(|a| a.trapezoid_weights()).collect();
        let shape = self.shape();
        let mut total = 0.0;
        let mut idx = vec![0usize; shape.len()];
        for &v in &self.values {
            let mut w = v;
            for (d, &i) in idx.iter().enumerate() {
                w *= weights[d][i];
            }
            total += w;
            // advance the multi-index, last axis fastest
            for d in (0..shape.len()).rev() {
                idx[d] += 1;
                if idx[d] < shape[d] {
                    break;
                }
                idx[d] = 0;
            }
        }
        total
    }

    /// Rescale so the trapezoidal integral is 1. Shape is preserved up to
    /// the overall factor; an all-zero grid is rejected.
    pub fn normalize(mut self) -> Result<Self> {
        let total = self.integral();
        if total <= 0.0 {
            return Err(Error::DegeneratePdf);
        }
        for v in &mut self.values {
            *v /= total;
        }
        self.norm = 1.0;
        Ok(self)
    }
}
