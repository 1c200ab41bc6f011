//! Kernel density estimation on the normalized axis, automatic plot height
//! and the varying height profile used for centrality.

use alloc::vec::Vec;
use core::f64::consts::PI;

use crate::analysis::quantile_sorted;
use crate::error::{Error, Result};

/// Number of evaluation points of a [`DensityEstimate`] on `[0, 1]`.
pub const GRID_POINTS: usize = 512;

/// Smallest bandwidth the rule of thumb may return.
pub const MIN_BANDWIDTH: f64 = 1.0 / 512.0;

/// A density on `[0, 1]` tabulated on [`GRID_POINTS`] evenly spaced points.
///
/// Between grid points the density is linearly interpolated; queries outside
/// `[0, 1]` clamp to the nearest end.
#[derive(Debug, Clone, PartialEq)]
pub struct DensityEstimate {
    values: Vec<f64>,
    bandwidth: f64,
    d_max: f64,
    argmax: usize,
}

impl DensityEstimate {
    /// Builds an estimate from tabulated grid values.
    pub fn from_grid(values: Vec<f64>, bandwidth: f64) -> Result<Self> {
        if values.len() != GRID_POINTS {
            return Err(Error::InvalidConfig("density grid must have 512 points"));
        }
        if values.iter().any(|v| !v.is_finite() || *v < 0.0) {
            return Err(Error::InvalidConfig(
                "density values must be finite and non-negative",
            ));
        }
        let (argmax, d_max) =
            values
                .iter()
                .copied()
                .enumerate()
                .fold((0, f64::NEG_INFINITY), |best, (i, v)| {
                    if v > best.1 {
                        (i, v)
                    } else {
                        best
                    }
                });
        if d_max <= 0.0 {
            return Err(Error::InvalidConfig("density must be positive somewhere"));
        }
        Ok(DensityEstimate {
            values,
            bandwidth,
            d_max,
            argmax,
        })
    }

    /// The normalized coordinate of grid point `k`.
    pub fn grid_x(k: usize) -> f64 {
        k as f64 / (GRID_POINTS - 1) as f64
    }

    pub fn grid_values(&self) -> &[f64] {
        &self.values
    }

    pub fn bandwidth(&self) -> f64 {
        self.bandwidth
    }

    pub fn d_max(&self) -> f64 {
        self.d_max
    }

    /// Grid index of the (first) maximum.
    pub fn argmax(&self) -> usize {
        self.argmax
    }

    pub fn at(&self, x: f64) -> f64 {
        let last = GRID_POINTS - 1;
        let t = x.clamp(0.0, 1.0) * last as f64;
        let k = (libm::floor(t) as usize).min(last - 1);
        let frac = t - k as f64;
        if frac == 0.0 {
            return self.values[k];
        }
        self.values[k] + frac * (self.values[k + 1] - self.values[k])
    }

    /// Trapezoid-rule integral over `[0, 1]`.
    pub fn integral(&self) -> f64 {
        let h = 1.0 / (GRID_POINTS - 1) as f64;
        let inner: f64 = self.values[1..GRID_POINTS - 1].iter().sum();
        h * (inner + 0.5 * (self.values[0] + self.values[GRID_POINTS - 1]))
    }
}

/// Silverman's rule of thumb, `0.9 min(σ, IQR/1.34) n^(-1/5)`, floored at
/// [`MIN_BANDWIDTH`]. When one spread measure is zero the other is used.
pub fn silverman_bandwidth(xs: &[f64]) -> f64 {
    let n = xs.len();
    if n < 2 {
        return MIN_BANDWIDTH;
    }
    let nf = n as f64;
    let mean = xs.iter().sum::<f64>() / nf;
    let var = xs.iter().map(|x| (x - mean) * (x - mean)).sum::<f64>() / (nf - 1.0);
    let sd = libm::sqrt(var);
    let mut sorted = xs.to_vec();
    sorted.sort_by(f64::total_cmp);
    let iqr = quantile_sorted(&sorted, 0.75) - quantile_sorted(&sorted, 0.25);
    let spread = match (sd > 0.0, iqr > 0.0) {
        (true, true) => sd.min(iqr / 1.34),
        (true, false) => sd,
        (false, true) => iqr / 1.34,
        (false, false) => 0.0,
    };
    (0.9 * spread * libm::pow(nf, -0.2)).max(MIN_BANDWIDTH)
}

/// Gaussian KDE of normalized values, reflected at 0 and 1 so the mass stays
/// inside the unit interval.
pub fn estimate_density(xs: &[f64], bandwidth: Option<f64>) -> Result<DensityEstimate> {
    if xs.is_empty() {
        return Err(Error::EmptyData);
    }
    if let Some(index) = xs.iter().position(|x| !x.is_finite()) {
        return Err(Error::NonFinite { index });
    }
    // Sorted summation makes the grid independent of input order.
    let mut sorted = xs.to_vec();
    sorted.sort_by(f64::total_cmp);
    let bw = match bandwidth {
        Some(bw) if bw.is_finite() && bw > 0.0 => bw,
        Some(bw) => return Err(Error::InvalidBandwidth(bw)),
        None => silverman_bandwidth(&sorted),
    };
    let norm = 1.0 / (xs.len() as f64 * bw * libm::sqrt(2.0 * PI));
    let kernel = |u: f64| libm::exp(-0.5 * u * u);
    let values = (0..GRID_POINTS)
        .map(|k| {
            let g = DensityEstimate::grid_x(k);
            let sum: f64 = sorted
                .iter()
                .map(|&x| {
                    kernel((g - x) / bw) + kernel((g + x) / bw) + kernel((g - (2.0 - x)) / bw)
                })
                .sum();
            sum * norm
        })
        .collect();
    DensityEstimate::from_grid(values, bw)
}

/// Plot height needed to stack the densest column of `n` dots of radius `r`:
/// `r² d_max n`, but never less than one dot diameter.
pub fn automatic_height(d_max: f64, n: usize, r: f64) -> f64 {
    debug_assert!(d_max > 0.0 && n > 0 && r > 0.0);
    (r * r * d_max * n as f64).max(2.0 * r)
}

/// Height as a function of the data coordinate, `max(2r, r² d(x) n)`.
#[derive(Debug, Clone, PartialEq)]
pub struct HeightProfile {
    density: DensityEstimate,
    n: usize,
    radius: f64,
}

pub fn height_profile(density: &DensityEstimate, n: usize, r: f64) -> HeightProfile {
    HeightProfile {
        density: density.clone(),
        n,
        radius: r,
    }
}

impl HeightProfile {
    pub fn at(&self, x: f64) -> f64 {
        let r = self.radius;
        (r * r * self.density.at(x) * self.n as f64).max(2.0 * r)
    }

    /// The profile's largest value; equals [`automatic_height`] for the same
    /// density, count and radius.
    pub fn max(&self) -> f64 {
        automatic_height(self.density.d_max(), self.n, self.radius)
    }

    /// `(x, h(x))` at every density grid point.
    pub fn samples(&self) -> Vec<(f64, f64)> {
        (0..GRID_POINTS)
            .map(|k| {
                let x = DensityEstimate::grid_x(k);
                (x, self.at(x))
            })
            .collect()
    }

    pub fn density(&self) -> &DensityEstimate {
        &self.density
    }
}
