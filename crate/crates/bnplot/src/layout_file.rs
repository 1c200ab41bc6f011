//! The JSON layout file written by `bnplot plot`.

use std::path::Path;

use anyhow::{bail, Context};
use bnplot_core::{DataSet, DotLayout, MetricKind, PlotDomain, Point};
use serde::{Deserialize, Serialize};

pub const LAYOUT_VERSION: u32 = 1;

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct LayoutFile {
    pub version: u32,
    pub dataset_name: String,
    pub treatment: String,
    pub seed: u64,
    pub iterations_run: usize,
    pub n_sites: usize,
    pub domain: DomainRecord,
    pub metric: MetricRecord,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub classes: Vec<String>,
    pub dots: Vec<DotRecord>,
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct DomainRecord {
    pub x_min: f64,
    pub x_max: f64,
    pub height: f64,
    pub radius: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct MetricRecord {
    pub kind: String,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct DotRecord {
    pub x_raw: f64,
    pub x_norm: f64,
    pub y: f64,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub class: Option<String>,
}

impl LayoutFile {
    pub fn new(
        data: &DataSet,
        layout: &DotLayout,
        metric: MetricKind,
        treatment: &str,
        n_sites: usize,
    ) -> Self {
        let names = data.class_names();
        let dots = data
            .values()
            .iter()
            .zip(&layout.dots)
            .enumerate()
            .map(|(i, (&x_raw, p))| DotRecord {
                x_raw,
                x_norm: p.x,
                y: p.y,
                class: layout.labels.as_ref().map(|l| names[l[i] as usize].clone()),
            })
            .collect();
        let d = layout.domain;
        LayoutFile {
            version: LAYOUT_VERSION,
            dataset_name: data.name().unwrap_or_default().to_owned(),
            treatment: treatment.to_owned(),
            seed: layout.seed,
            iterations_run: layout.iterations_run,
            n_sites,
            domain: DomainRecord {
                x_min: d.x_min,
                x_max: d.x_max,
                height: d.height,
                radius: d.radius,
            },
            metric: MetricRecord {
                kind: metric.as_str().to_owned(),
            },
            classes: if layout.labels.is_some() {
                names.to_vec()
            } else {
                Vec::new()
            },
            dots,
        }
    }

    pub fn domain(&self) -> anyhow::Result<PlotDomain> {
        let d = self.domain;
        Ok(PlotDomain::new(d.x_min, d.x_max, d.height, d.radius)?)
    }

    /// Rebuilds the dot layout, checking the file's invariants on the way.
    pub fn to_layout(&self) -> anyhow::Result<DotLayout> {
        self.check()?;
        let labels = if self.classes.is_empty() {
            None
        } else {
            let labels = self
                .dots
                .iter()
                .map(|d| {
                    let class = d.class.as_deref().context("dot without class")?;
                    self.classes
                        .iter()
                        .position(|c| c == class)
                        .map(|i| i as u32)
                        .with_context(|| format!("unknown class `{class}`"))
                })
                .collect::<anyhow::Result<Vec<_>>>()?;
            Some(labels)
        };
        Ok(DotLayout {
            dots: self
                .dots
                .iter()
                .map(|d| Point::new(d.x_norm, d.y))
                .collect(),
            labels,
            domain: self.domain()?,
            seed: self.seed,
            iterations_run: self.iterations_run,
        })
    }

    /// `x_norm` must follow from `x_raw` and the domain, and `y` must lie in
    /// the plot.
    pub fn check(&self) -> anyhow::Result<()> {
        if self.version != LAYOUT_VERSION {
            bail!("unsupported layout version {}", self.version);
        }
        let domain = self.domain()?;
        for (i, d) in self.dots.iter().enumerate() {
            let expected = domain.to_normalized(d.x_raw);
            if (expected - d.x_norm).abs() > 1e-12 {
                bail!(
                    "dot {i}: x_norm {} does not match x_raw {}",
                    d.x_norm,
                    d.x_raw
                );
            }
            if !(0.0..=domain.height).contains(&d.y) {
                bail!("dot {i}: y {} outside [0, {}]", d.y, domain.height);
            }
        }
        Ok(())
    }

    pub fn to_json(&self) -> String {
        let mut s = serde_json::to_string_pretty(self).expect("layout serializes");
        s.push('\n');
        s
    }

    pub fn read(path: impl AsRef<Path>) -> anyhow::Result<Self> {
        let path = path.as_ref();
        let text =
            std::fs::read_to_string(path).with_context(|| format!("reading {}", path.display()))?;
        serde_json::from_str(&text).with_context(|| format!("parsing {}", path.display()))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use bnplot_core::{normalize, relax_multiclass, SolverConfig};

    #[test]
    fn round_trips_through_json() {
        // Enough awkward fractions that inexact float parsing would show.
        let values: Vec<f64> = (0..200).map(|i| ((i * 37) % 101) as f64 / 7.0).collect();
        let labels: Vec<u32> = (0..200).map(|i| (i % 3 == 1) as u32).collect();
        let data = DataSet::new(values)
            .unwrap()
            .with_labels(labels, vec!["a".into(), "b".into()])
            .unwrap()
            .with_name("demo");
        let norm = normalize(data.values()).unwrap();
        let domain = PlotDomain::new(norm.x_min, norm.x_max, 0.1, 0.01).unwrap();
        let mut config = SolverConfig::new(3);
        config.n_sites = 1024;
        let layout = relax_multiclass(&data, &domain, &config).unwrap();
        let file = LayoutFile::new(&data, &layout, MetricKind::Uniform, "blue", 1024);
        file.check().unwrap();
        let parsed: LayoutFile = serde_json::from_str(&file.to_json()).unwrap();
        assert_eq!(parsed, file);
        assert_eq!(parsed.to_layout().unwrap(), layout);
        assert_eq!(parsed.dots[1].class.as_deref(), Some("b"));
    }

    #[test]
    fn check_rejects_inconsistent_x() {
        let data = DataSet::new(vec![0.0, 1.0]).unwrap();
        let layout = DotLayout {
            dots: vec![Point::new(0.0, 0.0), Point::new(0.9, 0.0)],
            labels: None,
            domain: PlotDomain::new(0.0, 1.0, 0.1, 0.01).unwrap(),
            seed: 0,
            iterations_run: 0,
        };
        let file = LayoutFile::new(&data, &layout, MetricKind::Uniform, "jitter", 8192);
        assert!(file.check().is_err());
    }
}
