//! Input data, plot domain and dot layouts.

use alloc::string::String;
use alloc::vec::Vec;

use crate::error::{Error, Result};

/// A 2D point in normalized plot coordinates: `x` in `[0, 1]`, `y` in `[0, h]`.
#[derive(Debug, Clone, Copy, PartialEq, Default)]
pub struct Point {
    pub x: f64,
    pub y: f64,
}

impl Point {
    pub const fn new(x: f64, y: f64) -> Self {
        Point { x, y }
    }

    pub fn distance(self, other: Point) -> f64 {
        libm::hypot(self.x - other.x, self.y - other.y)
    }
}

/// A univariate data set with optional class labels.
///
/// Labels are class indices into `class_names`.
#[derive(Debug, Clone, PartialEq)]
pub struct DataSet {
    values: Vec<f64>,
    labels: Option<Vec<u32>>,
    class_names: Vec<String>,
    name: Option<String>,
}

impl DataSet {
    pub fn new(values: Vec<f64>) -> Result<Self> {
        check_values(&values)?;
        Ok(DataSet {
            values,
            labels: None,
            class_names: Vec::new(),
            name: None,
        })
    }

    /// Attaches class labels. Every label must index into `class_names`.
    pub fn with_labels(mut self, labels: Vec<u32>, class_names: Vec<String>) -> Result<Self> {
        if labels.len() != self.values.len() {
            return Err(Error::LabelCount {
                labels: labels.len(),
                values: self.values.len(),
            });
        }
        if let Some((index, &label)) = labels
            .iter()
            .enumerate()
            .find(|(_, &l)| l as usize >= class_names.len())
        {
            return Err(Error::UnknownLabel { index, label });
        }
        self.labels = Some(labels);
        self.class_names = class_names;
        Ok(self)
    }

    pub fn with_name(mut self, name: impl Into<String>) -> Self {
        self.name = Some(name.into());
        self
    }

    pub fn values(&self) -> &[f64] {
        &self.values
    }

    pub fn labels(&self) -> Option<&[u32]> {
        self.labels.as_deref()
    }

    pub fn class_names(&self) -> &[String] {
        &self.class_names
    }

    pub fn name(&self) -> Option<&str> {
        self.name.as_deref()
    }

    pub fn len(&self) -> usize {
        self.values.len()
    }

    pub fn is_empty(&self) -> bool {
        self.values.is_empty()
    }

    /// Number of distinct labels actually present.
    pub fn class_count(&self) -> usize {
        match &self.labels {
            None => 0,
            Some(labels) => {
                let mut seen = alloc::vec![false; self.class_names.len()];
                for &l in labels {
                    seen[l as usize] = true;
                }
                seen.into_iter().filter(|&s| s).count()
            }
        }
    }

    /// Drops the labels, keeping values and name.
    pub fn without_labels(&self) -> DataSet {
        DataSet {
            values: self.values.clone(),
            labels: None,
            class_names: Vec::new(),
            name: self.name.clone(),
        }
    }

    /// Keeps only the rows at `indices`, in the given order.
    pub fn subset(&self, indices: &[usize]) -> DataSet {
        DataSet {
            values: indices.iter().map(|&i| self.values[i]).collect(),
            labels: self
                .labels
                .as_ref()
                .map(|l| indices.iter().map(|&i| l[i]).collect()),
            class_names: self.class_names.clone(),
            name: self.name.clone(),
        }
    }
}

fn check_values(values: &[f64]) -> Result<()> {
    if values.is_empty() {
        return Err(Error::EmptyData);
    }
    match values.iter().position(|v| !v.is_finite()) {
        Some(index) => Err(Error::NonFinite { index }),
        None => Ok(()),
    }
}

/// Normalized data values plus the raw range they were mapped from.
#[derive(Debug, Clone, PartialEq)]
pub struct Normalized {
    pub values: Vec<f64>,
    pub x_min: f64,
    pub x_max: f64,
}

/// Maps raw values affinely onto `[0, 1]`.
///
/// Constant data maps to 0.5 everywhere with a synthetic unit range centered
/// on the value.
pub fn normalize(values: &[f64]) -> Result<Normalized> {
    check_values(values)?;
    let (lo, hi) = values
        .iter()
        .fold((f64::INFINITY, f64::NEG_INFINITY), |(lo, hi), &v| {
            (lo.min(v), hi.max(v))
        });
    if lo == hi {
        return Ok(Normalized {
            values: alloc::vec![0.5; values.len()],
            x_min: lo - 0.5,
            x_max: lo + 0.5,
        });
    }
    let span = hi - lo;
    Ok(Normalized {
        values: values.iter().map(|&v| (v - lo) / span).collect(),
        x_min: lo,
        x_max: hi,
    })
}

/// Raw x-range plus height and dot radius in normalized units.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct PlotDomain {
    pub x_min: f64,
    pub x_max: f64,
    pub height: f64,
    pub radius: f64,
}

impl PlotDomain {
    pub fn new(x_min: f64, x_max: f64, height: f64, radius: f64) -> Result<Self> {
        if !(x_min.is_finite() && x_max.is_finite() && x_min < x_max) {
            return Err(Error::InvalidDomain(
                "x range must be finite with x_min < x_max",
            ));
        }
        if !(height.is_finite() && height > 0.0) {
            return Err(Error::InvalidDomain("height must be positive"));
        }
        if !(radius.is_finite() && radius > 0.0) {
            return Err(Error::InvalidDomain("radius must be positive"));
        }
        Ok(PlotDomain {
            x_min,
            x_max,
            height,
            radius,
        })
    }

    pub fn to_normalized(&self, raw: f64) -> f64 {
        (raw - self.x_min) / (self.x_max - self.x_min)
    }

    pub fn to_raw(&self, x: f64) -> f64 {
        self.x_min + x * (self.x_max - self.x_min)
    }
}

/// Dots in data order. Dot `i` always belongs to data value `i`.
#[derive(Debug, Clone, PartialEq)]
pub struct DotLayout {
    pub dots: Vec<Point>,
    pub labels: Option<Vec<u32>>,
    pub domain: PlotDomain,
    pub seed: u64,
    pub iterations_run: usize,
}

impl DotLayout {
    pub fn len(&self) -> usize {
        self.dots.len()
    }

    pub fn is_empty(&self) -> bool {
        self.dots.is_empty()
    }

    pub fn height(&self) -> f64 {
        self.domain.height
    }

    pub fn xs(&self) -> Vec<f64> {
        self.dots.iter().map(|p| p.x).collect()
    }

    pub fn ys(&self) -> Vec<f64> {
        self.dots.iter().map(|p| p.y).collect()
    }

    /// The sub-layout of dots carrying `class`, in original order.
    pub fn class_subset(&self, class: u32) -> DotLayout {
        let dots: Vec<Point> = match &self.labels {
            Some(labels) => self
                .dots
                .iter()
                .zip(labels)
                .filter(|(_, &l)| l == class)
                .map(|(p, _)| *p)
                .collect(),
            None => Vec::new(),
        };
        let n = dots.len();
        DotLayout {
            dots,
            labels: Some(alloc::vec![class; n]),
            domain: self.domain,
            seed: self.seed,
            iterations_run: self.iterations_run,
        }
    }
}
