//! The `plot` and `analyze` commands.

use std::path::{Path, PathBuf};
use std::str::FromStr;

use anyhow::{bail, Context};
use bnplot_core::solver::band_init;
use bnplot_core::{
    automatic_height, estimate_density, height_profile, jitter_init, normalize, overlap_metric,
    power_spectrum, relax, relax_multiclass, relax_unconstrained, DataSet, DotLayout,
    HeightProfile, MetricKind, MetricSpec, PlotDomain, SolverConfig, SpectrumGrid, Summary,
};
use clap::{Args, ValueEnum};
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;

use crate::input::load_csv;
use crate::layout_file::LayoutFile;
use crate::render::{render_svg_with_envelope, EnvelopeStyle, RenderStyle};
use crate::report::{
    spectrum_pgm, write_bytes, write_rows, write_spectrum_csv, OverlapRow, OverlapSummaryRow,
    SpectrumSummaryRow,
};

#[derive(Debug, Clone, Copy, PartialEq)]
pub enum HeightArg {
    Auto,
    Fixed(f64),
}

impl FromStr for HeightArg {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        if s == "auto" {
            return Ok(HeightArg::Auto);
        }
        match s.parse::<f64>() {
            Ok(h) if h.is_finite() && h > 0.0 => Ok(HeightArg::Fixed(h)),
            _ => Err(format!("expected `auto` or a positive number, got `{s}`")),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Treatment {
    /// Blue-noise relaxation.
    Blue,
    /// Random vertical jitter.
    Jitter,
    /// Unconstrained 2D Lloyd relaxation; ignores the data values.
    Lloyd2d,
}

impl Treatment {
    pub fn as_str(self) -> &'static str {
        match self {
            Treatment::Blue => "blue",
            Treatment::Jitter => "jitter",
            Treatment::Lloyd2d => "lloyd2d",
        }
    }
}

/// Input data and plot geometry shared by every command.
#[derive(Debug, Clone, Args)]
pub struct DataArgs {
    /// CSV file with a header row.
    #[arg(long)]
    pub input: PathBuf,
    /// Column holding the data values.
    #[arg(long)]
    pub column: String,
    /// Optional column of class labels.
    #[arg(long)]
    pub class_column: Option<String>,
    /// Dot radius in normalized units (the x-axis spans 1).
    #[arg(long, default_value_t = 0.01)]
    pub radius: f64,
    /// Plot height in normalized units, or `auto` to derive it from the
    /// estimated data density.
    #[arg(long, default_value = "auto")]
    pub height: HeightArg,
    /// Confine dots to a centered band that follows the data density.
    #[arg(long)]
    pub centrality: bool,
}

/// Solver knobs shared by every command.
#[derive(Debug, Clone, Args)]
pub struct SolverArgs {
    #[arg(long, default_value_t = SolverConfig::DEFAULT_ITERATIONS)]
    pub iterations: usize,
    /// Random sites discretizing the Voronoi cells.
    #[arg(long, default_value_t = SolverConfig::DEFAULT_SITES)]
    pub sites: usize,
}

impl Default for SolverArgs {
    fn default() -> Self {
        SolverArgs {
            iterations: SolverConfig::DEFAULT_ITERATIONS,
            sites: SolverConfig::DEFAULT_SITES,
        }
    }
}

#[derive(Debug, Clone, Args)]
pub struct PlotArgs {
    #[command(flatten)]
    pub data: DataArgs,
    #[command(flatten)]
    pub solver: SolverArgs,
    #[arg(long, value_enum, default_value = "blue")]
    pub treatment: Treatment,
    #[arg(long, default_value_t = 0)]
    pub seed: u64,
    /// SVG canvas width in pixels.
    #[arg(long, default_value_t = 800)]
    pub width: u32,
    /// Output prefix; writes PREFIX.json and PREFIX.svg.
    #[arg(long)]
    pub out: PathBuf,
}

/// Plot height used by the analysis commands unless overridden: the
/// `[0,1) x [0,0.2)` domain, constant across dot counts.
pub const ANALYSIS_HEIGHT: &str = "0.2";

/// Like [`DataArgs`], with a constant default height so that layouts of
/// different sizes are compared on the same domain.
#[derive(Debug, Clone, Args)]
pub struct AnalysisDataArgs {
    #[arg(long)]
    pub input: PathBuf,
    #[arg(long)]
    pub column: String,
    #[arg(long)]
    pub class_column: Option<String>,
    #[arg(long, default_value_t = 0.01)]
    pub radius: f64,
    /// Plot height in normalized units, or `auto`.
    #[arg(long, default_value = ANALYSIS_HEIGHT)]
    pub height: HeightArg,
    #[arg(long)]
    pub centrality: bool,
}

impl From<&AnalysisDataArgs> for DataArgs {
    fn from(a: &AnalysisDataArgs) -> Self {
        DataArgs {
            input: a.input.clone(),
            column: a.column.clone(),
            class_column: a.class_column.clone(),
            radius: a.radius,
            height: a.height,
            centrality: a.centrality,
        }
    }
}

#[derive(Debug, Clone, Args)]
pub struct SpectrumArgs {
    #[command(flatten)]
    pub data: AnalysisDataArgs,
    #[command(flatten)]
    pub solver: SolverArgs,
    #[arg(long, value_enum, default_value = "blue")]
    pub treatment: Treatment,
    #[arg(long, default_value_t = 100)]
    pub realizations: usize,
    /// Use a fixed random subset of this many rows.
    #[arg(long)]
    pub count: Option<usize>,
    /// Seed of the subset selection.
    #[arg(long, default_value_t = 0)]
    pub subset_seed: u64,
    /// Largest frequency index on either axis.
    #[arg(long, default_value_t = 16)]
    pub kmax: usize,
    /// Realization `i` uses seed `seed + i`.
    #[arg(long, default_value_t = 0)]
    pub seed: u64,
    /// Output prefix; writes PREFIX.spectrum.{csv,pgm} and
    /// PREFIX.spectrum-summary.csv.
    #[arg(long)]
    pub out: PathBuf,
}

#[derive(Debug, Clone, Args)]
pub struct OverlapArgs {
    #[command(flatten)]
    pub data: AnalysisDataArgs,
    #[command(flatten)]
    pub solver: SolverArgs,
    #[arg(long, default_value_t = 20)]
    pub seeds: u64,
    /// Dot counts; each uses a fixed random subset of the data.
    #[arg(long, value_delimiter = ',', default_value = "64,128,256")]
    pub counts: Vec<usize>,
    #[arg(long, value_enum, value_delimiter = ',', default_value = "blue,jitter")]
    pub treatments: Vec<Treatment>,
    /// Seed of the subset selection.
    #[arg(long, default_value_t = 0)]
    pub subset_seed: u64,
    /// Output prefix; writes PREFIX.overlap.csv and PREFIX.overlap-summary.csv.
    #[arg(long)]
    pub out: PathBuf,
}

/// A data set with its plot geometry resolved.
#[derive(Debug, Clone)]
pub struct Prepared {
    pub data: DataSet,
    pub domain: PlotDomain,
    pub metric: MetricSpec,
    pub profile: Option<HeightProfile>,
}

/// Resolves height, metric and centrality band for `data`.
pub fn prepare(data: DataSet, args: &DataArgs) -> anyhow::Result<Prepared> {
    if !(args.radius.is_finite() && args.radius > 0.0) {
        bail!("radius must be positive, got {}", args.radius);
    }
    let norm = normalize(data.values())?;
    let density = match (args.height, args.centrality) {
        (HeightArg::Fixed(_), false) => None,
        _ => Some(estimate_density(&norm.values, None)?),
    };
    let n = data.len();
    let height = match args.height {
        HeightArg::Fixed(h) => h,
        HeightArg::Auto => {
            let d = density.as_ref().expect("density estimated for auto height");
            automatic_height(d.d_max(), n, args.radius)
        }
    };
    let domain = PlotDomain::new(norm.x_min, norm.x_max, height, args.radius)?;
    let (metric, profile) = match (&density, args.centrality) {
        (Some(d), true) => (
            MetricSpec::density_warped(d.clone()),
            Some(height_profile(d, n, args.radius)),
        ),
        _ => (MetricSpec::uniform(), None),
    };
    Ok(Prepared {
        data,
        domain,
        metric,
        profile,
    })
}

impl Prepared {
    pub fn config(&self, solver: &SolverArgs, seed: u64) -> SolverConfig {
        let mut config = SolverConfig::new(seed);
        config.n_sites = solver.sites;
        config.max_iterations = solver.iterations;
        config.metric = self.metric.clone();
        config.centrality = self.profile.clone();
        config
    }

    /// Lays out the data with `treatment`.
    pub fn run(
        &self,
        treatment: Treatment,
        solver: &SolverArgs,
        seed: u64,
    ) -> anyhow::Result<DotLayout> {
        let config = self.config(solver, seed);
        let layout = match treatment {
            Treatment::Jitter => {
                let xs = normalize(self.data.values())?.values;
                let mut layout = match &self.profile {
                    Some(profile) => band_init(&xs, &self.domain, profile, seed),
                    None => jitter_init(&xs, &self.domain, seed),
                };
                layout.labels = self.data.labels().map(<[u32]>::to_vec);
                layout
            }
            Treatment::Blue if self.data.class_count() >= 2 => {
                relax_multiclass(&self.data, &self.domain, &config)?
            }
            Treatment::Blue => relax(&self.data, &self.domain, &config)?,
            Treatment::Lloyd2d => relax_unconstrained(self.data.len(), &self.domain, &config)?,
        };
        Ok(layout)
    }

    pub fn metric_kind(&self) -> MetricKind {
        self.metric.kind
    }
}

fn with_suffix(prefix: &Path, suffix: &str) -> PathBuf {
    let mut s = prefix.as_os_str().to_owned();
    s.push(suffix);
    PathBuf::from(s)
}

fn load(args: &DataArgs) -> anyhow::Result<DataSet> {
    Ok(load_csv(
        &args.input,
        &args.column,
        args.class_column.as_deref(),
    )?)
}

#[derive(Debug, Clone)]
pub struct PlotOutput {
    pub layout: DotLayout,
    pub file: LayoutFile,
    pub json_path: PathBuf,
    pub svg_path: PathBuf,
}

pub fn cmd_plot(args: &PlotArgs) -> anyhow::Result<PlotOutput> {
    if args.treatment == Treatment::Lloyd2d {
        bail!("lloyd2d ignores the data and is only available for spectrum analysis");
    }
    let prepared = prepare(load(&args.data)?, &args.data)?;
    let layout = prepared.run(args.treatment, &args.solver, args.seed)?;
    let file = LayoutFile::new(
        &prepared.data,
        &layout,
        prepared.metric_kind(),
        args.treatment.as_str(),
        args.solver.sites,
    );
    let mut style = RenderStyle::for_layout(&layout, args.width);
    if prepared.profile.is_some() {
        style.envelope = Some(EnvelopeStyle {
            stroke: "#1f77b4".into(),
            stroke_width: 1.0,
        });
    }
    let svg = render_svg_with_envelope(&layout, &style, prepared.profile.as_ref())?;

    let json_path = with_suffix(&args.out, ".json");
    let svg_path = with_suffix(&args.out, ".svg");
    write_bytes(&json_path, file.to_json().as_bytes())?;
    write_bytes(&svg_path, svg.as_bytes())?;
    Ok(PlotOutput {
        layout,
        file,
        json_path,
        svg_path,
    })
}

#[derive(Debug, Clone)]
pub struct SpectrumOutput {
    pub grid: SpectrumGrid,
    pub summary: SpectrumSummaryRow,
}

/// Expected power spectrum of `realizations` layouts with seeds
/// `seed..seed + realizations`.
pub fn spectrum(
    prepared: &Prepared,
    treatment: Treatment,
    solver: &SolverArgs,
    realizations: usize,
    kmax: usize,
    seed: u64,
) -> anyhow::Result<SpectrumOutput> {
    let layouts = (0..realizations as u64)
        .into_par_iter()
        .map(|i| prepared.run(treatment, solver, seed + i))
        .collect::<anyhow::Result<Vec<_>>>()?;
    let grid = power_spectrum(&layouts, kmax)?;
    let summary = SpectrumSummaryRow::new(
        prepared.data.name().unwrap_or_default(),
        treatment.as_str(),
        prepared.data.len(),
        &grid,
    );
    Ok(SpectrumOutput { grid, summary })
}

pub fn cmd_spectrum(args: &SpectrumArgs) -> anyhow::Result<SpectrumOutput> {
    let data_args = DataArgs::from(&args.data);
    let mut data = load(&data_args)?;
    if let Some(count) = args.count {
        data = data.subset(&subset_indices(data.len(), count, args.subset_seed)?);
    }
    let prepared = prepare(data, &data_args)?;
    let out = spectrum(
        &prepared,
        args.treatment,
        &args.solver,
        args.realizations,
        args.kmax,
        args.seed,
    )?;
    write_spectrum_csv(&with_suffix(&args.out, ".spectrum.csv"), &out.grid)?;
    write_bytes(
        &with_suffix(&args.out, ".spectrum.pgm"),
        &spectrum_pgm(&out.grid),
    )?;
    write_rows(
        &with_suffix(&args.out, ".spectrum-summary.csv"),
        std::slice::from_ref(&out.summary),
    )?;
    Ok(out)
}

/// Row indices of a fixed random subset of size `count`, in data order.
pub fn subset_indices(len: usize, count: usize, subset_seed: u64) -> anyhow::Result<Vec<usize>> {
    if count == 0 || count > len {
        bail!("cannot take {count} dots from a data set of {len}");
    }
    if count == len {
        return Ok((0..len).collect());
    }
    let mut rng = ChaCha8Rng::seed_from_u64(subset_seed);
    rng.set_stream(count as u64);
    let mut idx = rand::seq::index::sample(&mut rng, len, count).into_vec();
    idx.sort_unstable();
    Ok(idx)
}

#[derive(Debug, Clone)]
pub struct OverlapOutput {
    pub rows: Vec<OverlapRow>,
    pub summary: Vec<OverlapSummaryRow>,
}

/// Overlap of every treatment at every count for seeds `0..seeds`, ordered
/// by (treatment, count, seed).
pub fn overlap(
    data: &DataSet,
    args: &DataArgs,
    solver: &SolverArgs,
    treatments: &[Treatment],
    counts: &[usize],
    seeds: u64,
    subset_seed: u64,
) -> anyhow::Result<OverlapOutput> {
    let dataset = data.name().unwrap_or_default().to_owned();
    let prepared = counts
        .iter()
        .map(|&count| {
            let idx = subset_indices(data.len(), count, subset_seed)?;
            prepare(data.subset(&idx), args)
        })
        .collect::<anyhow::Result<Vec<_>>>()?;

    let mut rows = Vec::new();
    let mut summary = Vec::new();
    for &treatment in treatments {
        for (prep, &count) in prepared.iter().zip(counts) {
            let values = (0..seeds)
                .into_par_iter()
                .map(|seed| Ok(overlap_metric(&prep.run(treatment, solver, seed)?)))
                .collect::<anyhow::Result<Vec<f64>>>()?;
            rows.extend(values.iter().enumerate().map(|(seed, &value)| OverlapRow {
                dataset: dataset.clone(),
                treatment: treatment.as_str().to_owned(),
                seed: seed as u64,
                n: count,
                value,
            }));
            if let Some(s) = Summary::of(&values) {
                summary.push(OverlapSummaryRow {
                    dataset: dataset.clone(),
                    treatment: treatment.as_str().to_owned(),
                    n: count,
                    seeds: values.len(),
                    median: s.median,
                    q1: s.q1,
                    q3: s.q3,
                    iqr: s.iqr(),
                });
            }
        }
    }
    Ok(OverlapOutput { rows, summary })
}

pub fn cmd_overlap(args: &OverlapArgs) -> anyhow::Result<OverlapOutput> {
    let data_args = DataArgs::from(&args.data);
    let data = load(&data_args)?;
    let out = overlap(
        &data,
        &data_args,
        &args.solver,
        &args.treatments,
        &args.counts,
        args.seeds,
        args.subset_seed,
    )
    .context("overlap benchmark")?;
    write_rows(&with_suffix(&args.out, ".overlap.csv"), &out.rows)?;
    write_rows(
        &with_suffix(&args.out, ".overlap-summary.csv"),
        &out.summary,
    )?;
    Ok(out)
}
