//! Blue-noise dot plots for univariate data.
//!
//! Dots keep their data value on the horizontal (encoding) axis and only
//! move vertically. A Lloyd relaxation over a site-sampled Voronoi
//! diagram spreads them out, giving a blue-noise distribution instead of
//! the white noise of a jitter plot.
//!
//! The crate is `no_std` and only needs `alloc`. File formats, rendering
//! and the command line live in the `bnplot` crate.
//!
//! ```
//! use bnplot_core::{relax, DataSet, PlotDomain, SolverConfig};
//!
//! let data = DataSet::new(vec![1.0, 1.5, 1.6, 2.0, 3.5, 3.6, 3.7]).unwrap();
//! let norm = bnplot_core::normalize(data.values()).unwrap();
//! let domain = PlotDomain::new(norm.x_min, norm.x_max, 0.2, 0.02).unwrap();
//! let mut config = SolverConfig::new(7);
//! config.n_sites = 1024;
//! let layout = relax(&data, &domain, &config).unwrap();
//! assert_eq!(layout.xs(), norm.values);
//! ```
#![no_std]

extern crate alloc;
#[cfg(test)]
extern crate std;

pub mod analysis;
pub mod data;
pub mod density;
mod error;
pub mod metric;
pub mod rng;
pub mod solver;

pub use analysis::{cost_estimate, overlap_metric, power_spectrum, SpectrumGrid, Summary};
pub use data::{normalize, DataSet, DotLayout, Normalized, PlotDomain, Point};
pub use density::{
    automatic_height, estimate_density, height_profile, DensityEstimate, HeightProfile,
};
pub use error::{Error, Result};
pub use metric::{metric_distance, Metric, MetricKind, MetricSpec, WarpCoordinate};
pub use solver::{
    assign_sites, jitter_init, lloyd_step, relax, relax_multiclass, relax_unconstrained,
    CentroidRule, SolverConfig, VoronoiAssignment,
};
