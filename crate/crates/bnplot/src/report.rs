//! CSV reports and spectrum images.

use std::io::Write;
use std::path::Path;

use anyhow::Context;
use bnplot_core::SpectrumGrid;
use serde::Serialize;

/// One overlap measurement.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct OverlapRow {
    pub dataset: String,
    pub treatment: String,
    pub seed: u64,
    pub n: usize,
    pub value: f64,
}

/// Overlap statistics of one (treatment, count) cell across seeds.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct OverlapSummaryRow {
    pub dataset: String,
    pub treatment: String,
    pub n: usize,
    pub seeds: usize,
    pub median: f64,
    pub q1: f64,
    pub q3: f64,
    pub iqr: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct SpectrumSummaryRow {
    pub dataset: String,
    pub treatment: String,
    pub n: usize,
    pub height: f64,
    pub realizations: usize,
    pub kmax: usize,
    pub mean_non_dc: f64,
    pub mean_off_axis: f64,
    pub low_band: f64,
    pub high_band: f64,
}

impl SpectrumSummaryRow {
    pub fn new(dataset: &str, treatment: &str, n: usize, grid: &SpectrumGrid) -> Self {
        SpectrumSummaryRow {
            dataset: dataset.to_owned(),
            treatment: treatment.to_owned(),
            n,
            height: grid.height(),
            realizations: grid.n_realizations(),
            kmax: grid.kmax(),
            mean_non_dc: grid.mean_non_dc(),
            mean_off_axis: grid.mean_off_axis(),
            low_band: grid.low_band_mean(),
            high_band: grid.high_band_mean(),
        }
    }
}

pub fn write_rows<T: Serialize>(path: &Path, rows: &[T]) -> anyhow::Result<()> {
    let mut w =
        csv::Writer::from_path(path).with_context(|| format!("creating {}", path.display()))?;
    for row in rows {
        w.serialize(row)?;
    }
    w.flush()?;
    Ok(())
}

/// `(kx, ky, power)` for every lattice point; `ky` is the actual vertical
/// frequency `m / h`.
pub fn write_spectrum_csv(path: &Path, grid: &SpectrumGrid) -> anyhow::Result<()> {
    let mut w =
        csv::Writer::from_path(path).with_context(|| format!("creating {}", path.display()))?;
    w.write_record(["kx", "ky", "power"])?;
    for (kx, m, p) in grid.entries() {
        w.write_record([kx.to_string(), grid.ky(m).to_string(), p.to_string()])?;
    }
    w.flush()?;
    Ok(())
}

/// Binary PGM of the spectrum, highest vertical frequency on top. White
/// noise power (1.0) maps to gray 128, about twice that or more to white.
pub fn spectrum_pgm(grid: &SpectrumGrid) -> Vec<u8> {
    let side = grid.side();
    let k = grid.kmax() as i64;
    let mut out = format!("P5\n{side} {side}\n255\n").into_bytes();
    for m in (-k..=k).rev() {
        for kx in -k..=k {
            let p = if (kx, m) == (0, 0) {
                2.0
            } else {
                grid.at(kx, m)
            };
            out.push((p * 128.0).round().clamp(0.0, 255.0) as u8);
        }
    }
    out
}

pub fn write_bytes(path: &Path, bytes: &[u8]) -> anyhow::Result<()> {
    let mut f =
        std::fs::File::create(path).with_context(|| format!("creating {}", path.display()))?;
    f.write_all(bytes)?;
    Ok(())
}
