//! Distances that govern Voronoi assignment and the relaxation cost.
//!
//! Both metrics are weighted L1 norms. The encoding (horizontal) difference
//! is scaled up relative to the vertical one, so cells stretch vertically
//! and dots spread along the free axis.
//!
//! * Uniform: `|2 Δx| + |Δy|`.
//! * Density-warped: `|w(x*) Δx| + |Δy|` with `w = 1 + d / d_max`, so the
//!   horizontal weight varies in `(1, 2]` and reaches the uniform weight at
//!   peak density. `x*` is the point where the density is sampled, see
//!   [`WarpCoordinate`].

use crate::data::Point;
use crate::density::DensityEstimate;
use crate::error::{Error, Result};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum MetricKind {
    #[default]
    Uniform,
    DensityWarped,
}

impl MetricKind {
    pub fn as_str(self) -> &'static str {
        match self {
            MetricKind::Uniform => "uniform",
            MetricKind::DensityWarped => "density_warped",
        }
    }
}

/// Where a density-warped distance samples the density.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum WarpCoordinate {
    /// `(x1 + x2) / 2`, the point between the two.
    #[default]
    Midpoint,
    /// `(x1 - x2) / 2`, taken literally. Negative values clamp to 0, so the
    /// distance is not symmetric.
    HalfDifference,
}

#[derive(Debug, Clone, PartialEq, Default)]
pub struct MetricSpec {
    pub kind: MetricKind,
    pub density: Option<DensityEstimate>,
    pub warp: WarpCoordinate,
}

impl MetricSpec {
    pub fn uniform() -> Self {
        MetricSpec::default()
    }

    pub fn density_warped(density: DensityEstimate) -> Self {
        MetricSpec {
            kind: MetricKind::DensityWarped,
            density: Some(density),
            warp: WarpCoordinate::Midpoint,
        }
    }

    pub fn with_warp(mut self, warp: WarpCoordinate) -> Self {
        self.warp = warp;
        self
    }

    /// Checks the spec and borrows it as an evaluable [`Metric`].
    pub fn resolve(&self) -> Result<Metric<'_>> {
        match (self.kind, &self.density) {
            (MetricKind::Uniform, _) => Ok(Metric::Uniform),
            (MetricKind::DensityWarped, Some(density)) => Ok(Metric::Warped {
                density,
                warp: self.warp,
            }),
            (MetricKind::DensityWarped, None) => Err(Error::MissingDensity),
        }
    }
}

/// A validated metric, cheap to evaluate in inner loops.
#[derive(Debug, Clone, Copy)]
pub enum Metric<'a> {
    Uniform,
    Warped {
        density: &'a DensityEstimate,
        warp: WarpCoordinate,
    },
}

impl Metric<'_> {
    #[inline]
    pub fn distance(&self, a: Point, b: Point) -> f64 {
        self.horizontal(a.x, b.x) + (a.y - b.y).abs()
    }

    /// The horizontal term of [`Metric::distance`].
    #[inline]
    pub fn horizontal(&self, x1: f64, x2: f64) -> f64 {
        match *self {
            Metric::Uniform => (2.0 * (x1 - x2)).abs(),
            Metric::Warped { density, warp } => {
                let at = match warp {
                    WarpCoordinate::Midpoint => (x1 + x2) / 2.0,
                    WarpCoordinate::HalfDifference => (x1 - x2) / 2.0,
                };
                let weight = 1.0 + density.at(at) / density.d_max();
                (weight * (x1 - x2)).abs()
            }
        }
    }

    /// A lower bound on [`Metric::distance`] from the horizontal gap alone,
    /// monotone in `|x1 - x2|`.
    #[inline]
    pub fn horizontal_bound(&self, x1: f64, x2: f64) -> f64 {
        match self {
            Metric::Uniform => (2.0 * (x1 - x2)).abs(),
            // weight >= 1
            Metric::Warped { .. } => (x1 - x2).abs(),
        }
    }
}

/// Distance between two points in normalized coordinates under `spec`.
pub fn metric_distance(spec: &MetricSpec, a: Point, b: Point) -> Result<f64> {
    Ok(spec.resolve()?.distance(a, b))
}
