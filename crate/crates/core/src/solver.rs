//! Data-constrained Lloyd relaxation.
//!
//! Dots start from a jitter plot. Each iteration assigns a fixed set of
//! random sites to their nearest dot under the active metric, moves every
//! dot to the centroid of its sites and then restores the dot's data value
//! on the horizontal axis. Only the vertical coordinate ever changes.

use alloc::vec;
use alloc::vec::Vec;

use rand::Rng;

use crate::data::{normalize, DataSet, DotLayout, PlotDomain, Point};
use crate::density::HeightProfile;
use crate::error::{Error, Result};
use crate::metric::{Metric, MetricSpec};
use crate::rng;

/// How a dot's new position is derived from the sites in its cell.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum CentroidRule {
    /// Arithmetic mean of the sites.
    #[default]
    Mean,
    /// Coordinate-wise median of the sites, the minimizer of the L1 cell
    /// cost. Experimental.
    Median,
}

#[derive(Debug, Clone, PartialEq)]
pub struct SolverConfig {
    /// Number of random sites discretizing the plot domain.
    pub n_sites: usize,
    pub max_iterations: usize,
    /// Stop once no dot moves more than this fraction of the plot height.
    pub convergence_eps: f64,
    pub seed: u64,
    pub metric: MetricSpec,
    pub centroid: CentroidRule,
    /// Restricts initialization and sites to a vertically centered band of
    /// varying height.
    pub centrality: Option<HeightProfile>,
}

impl SolverConfig {
    pub const DEFAULT_SITES: usize = 8192;
    pub const DEFAULT_ITERATIONS: usize = 40;
    pub const DEFAULT_EPS: f64 = 1e-4;

    pub fn new(seed: u64) -> Self {
        SolverConfig {
            n_sites: Self::DEFAULT_SITES,
            max_iterations: Self::DEFAULT_ITERATIONS,
            convergence_eps: Self::DEFAULT_EPS,
            seed,
            metric: MetricSpec::uniform(),
            centroid: CentroidRule::Mean,
            centrality: None,
        }
    }

    fn validate(&self, n_dots: usize) -> Result<()> {
        if self.n_sites == 0 || self.n_sites < n_dots {
            return Err(Error::InvalidConfig("need at least as many sites as dots"));
        }
        if !(self.convergence_eps.is_finite() && self.convergence_eps > 0.0) {
            return Err(Error::InvalidConfig("convergence epsilon must be positive"));
        }
        self.metric.resolve().map(|_| ())
    }
}

/// Sites together with the index of the dot owning each one.
#[derive(Debug, Clone, PartialEq)]
pub struct VoronoiAssignment {
    pub sites: Vec<Point>,
    pub owner: Vec<usize>,
}

impl VoronoiAssignment {
    /// Site indices of every cell, `n_dots` cells in dot order.
    pub fn cells(&self, n_dots: usize) -> Vec<Vec<usize>> {
        let mut cells = vec![Vec::new(); n_dots];
        for (site, &owner) in self.owner.iter().enumerate() {
            cells[owner].push(site);
        }
        cells
    }
}

/// Nearest-dot queries over a fixed set of horizontal positions.
///
/// Dots are kept sorted by x. A query walks outwards from the site's x in
/// both directions and stops once the horizontal lower bound alone exceeds
/// the best distance found, which gives the same answer (including the
/// lowest-index tie-break) as a full scan.
struct NearestDot {
    order: Vec<usize>,
    sorted_x: Vec<f64>,
}

impl NearestDot {
    fn new(xs: &[f64], members: Option<&[usize]>) -> Self {
        let mut order: Vec<usize> = match members {
            Some(m) => m.to_vec(),
            None => (0..xs.len()).collect(),
        };
        order.sort_by(|&a, &b| xs[a].total_cmp(&xs[b]).then(a.cmp(&b)));
        let sorted_x = order.iter().map(|&i| xs[i]).collect();
        NearestDot { order, sorted_x }
    }

    fn nearest(&self, metric: &Metric<'_>, dots: &[Point], site: Point) -> usize {
        let start = self.sorted_x.partition_point(|&x| x < site.x);
        let mut best_d = f64::INFINITY;
        let mut best_i = usize::MAX;
        let mut visit = |k: usize| -> bool {
            if metric.horizontal_bound(self.sorted_x[k], site.x) > best_d {
                return false;
            }
            let i = self.order[k];
            let d = metric.distance(dots[i], site);
            if d < best_d || (d == best_d && i < best_i) {
                best_d = d;
                best_i = i;
            }
            true
        };
        for k in start..self.order.len() {
            if !visit(k) {
                break;
            }
        }
        for k in (0..start).rev() {
            if !visit(k) {
                break;
            }
        }
        best_i
    }

    fn assign(&self, metric: &Metric<'_>, dots: &[Point], sites: &[Point]) -> Vec<usize> {
        sites
            .iter()
            .map(|&site| self.nearest(metric, dots, site))
            .collect()
    }
}

/// Jitter plot: every dot gets a uniform random height in `[0, h)`.
pub fn jitter_init(xs: &[f64], domain: &PlotDomain, seed: u64) -> DotLayout {
    let mut rng = rng::stream(seed, rng::JITTER_STREAM);
    let h = domain.height;
    let dots = xs
        .iter()
        .map(|&x| Point::new(x, rng.random::<f64>() * h))
        .collect();
    DotLayout {
        dots,
        labels: None,
        domain: *domain,
        seed,
        iterations_run: 0,
    }
}

/// Vertical extent of the centrality band at `x`, `(low, high)`.
fn band(profile: &HeightProfile, h: f64, x: f64) -> (f64, f64) {
    let width = profile.at(x).min(h);
    let low = 0.5 * h - 0.5 * width;
    (low, low + width)
}

/// Jitter inside the vertically centered band of `profile`.
pub fn band_init(xs: &[f64], domain: &PlotDomain, profile: &HeightProfile, seed: u64) -> DotLayout {
    let mut rng = rng::stream(seed, rng::JITTER_STREAM);
    let h = domain.height;
    let dots = xs
        .iter()
        .map(|&x| {
            let (low, high) = band(profile, h, x);
            Point::new(x, low + rng.random::<f64>() * (high - low))
        })
        .collect();
    DotLayout {
        dots,
        labels: None,
        domain: *domain,
        seed,
        iterations_run: 0,
    }
}

/// The fixed site set of a run: uniform over the plot domain, or over the
/// centrality band when one is configured.
pub fn draw_sites(domain: &PlotDomain, config: &SolverConfig) -> Vec<Point> {
    let mut rng = rng::stream(config.seed, rng::SITE_STREAM);
    let h = domain.height;
    let mut sites = Vec::with_capacity(config.n_sites);
    while sites.len() < config.n_sites {
        let p = Point::new(rng.random::<f64>(), rng.random::<f64>() * h);
        match &config.centrality {
            Some(profile) => {
                let (low, high) = band(profile, h, p.x);
                if (low..=high).contains(&p.y) {
                    sites.push(p);
                }
            }
            None => sites.push(p),
        }
    }
    sites
}

/// Assigns every site to its nearest dot, ties going to the lowest index.
pub fn assign_sites(
    layout: &DotLayout,
    sites: &[Point],
    metric: &MetricSpec,
) -> Result<VoronoiAssignment> {
    if layout.dots.is_empty() {
        return Err(Error::NoDots);
    }
    let metric = metric.resolve()?;
    let index = NearestDot::new(&layout.xs(), None);
    Ok(VoronoiAssignment {
        sites: sites.to_vec(),
        owner: index.assign(&metric, &layout.dots, sites),
    })
}

/// One constrained Lloyd update with the mean rule.
///
/// Dots with an empty cell stay where they are.
pub fn lloyd_step(layout: &DotLayout, assignment: &VoronoiAssignment) -> DotLayout {
    let mut next = layout.clone();
    move_to_centroids(
        &mut next.dots,
        &assignment.sites,
        &assignment.owner,
        layout.height(),
        CentroidRule::Mean,
    );
    next
}

/// Moves dots vertically to their cell centroids and returns the largest
/// displacement.
fn move_to_centroids(
    dots: &mut [Point],
    sites: &[Point],
    owner: &[usize],
    h: f64,
    rule: CentroidRule,
) -> f64 {
    let targets: Vec<Option<f64>> = match rule {
        CentroidRule::Mean => {
            let mut sum = vec![0.0; dots.len()];
            let mut count = vec![0usize; dots.len()];
            for (site, &i) in sites.iter().zip(owner) {
                sum[i] += site.y;
                count[i] += 1;
            }
            sum.iter()
                .zip(&count)
                .map(|(&s, &c)| (c > 0).then(|| s / c as f64))
                .collect()
        }
        CentroidRule::Median => {
            let mut cells = vec![Vec::new(); dots.len()];
            for (site, &i) in sites.iter().zip(owner) {
                cells[i].push(site.y);
            }
            cells.into_iter().map(median).collect()
        }
    };
    let mut moved: f64 = 0.0;
    for (dot, target) in dots.iter_mut().zip(targets) {
        if let Some(y) = target {
            let y = y.clamp(0.0, h);
            moved = moved.max((y - dot.y).abs());
            dot.y = y;
        }
    }
    moved
}

fn median(mut values: Vec<f64>) -> Option<f64> {
    if values.is_empty() {
        return None;
    }
    values.sort_by(f64::total_cmp);
    let mid = values.len() / 2;
    Some(if values.len() % 2 == 1 {
        values[mid]
    } else {
        0.5 * (values[mid - 1] + values[mid])
    })
}

/// A finished relaxation with the state needed to evaluate it.
#[derive(Debug, Clone, PartialEq)]
pub struct Relaxation {
    pub initial: DotLayout,
    pub layout: DotLayout,
    /// The fixed site set; empty when no iteration ran.
    pub sites: Vec<Point>,
    /// Largest vertical move of each (union) step.
    pub displacements: Vec<f64>,
}

fn initial_layout(
    data: &DataSet,
    xs: &[f64],
    domain: &PlotDomain,
    config: &SolverConfig,
) -> DotLayout {
    let mut layout = match &config.centrality {
        Some(profile) => band_init(xs, domain, profile, config.seed),
        None => jitter_init(xs, domain, config.seed),
    };
    layout.labels = data.labels().map(<[u32]>::to_vec);
    layout
}

/// Blue-noise layout of a single-class data set.
pub fn relax(data: &DataSet, domain: &PlotDomain, config: &SolverConfig) -> Result<DotLayout> {
    relax_traced(data, domain, config).map(|r| r.layout)
}

/// [`relax`], also returning the initialization and the site set.
pub fn relax_traced(
    data: &DataSet,
    domain: &PlotDomain,
    config: &SolverConfig,
) -> Result<Relaxation> {
    let xs = normalize(data.values())?.values;
    config.validate(xs.len())?;
    let metric = config.metric.resolve()?;
    let initial = initial_layout(data, &xs, domain, config);
    let mut layout = initial.clone();
    let mut displacements = Vec::new();
    if config.max_iterations == 0 {
        return Ok(Relaxation {
            initial,
            layout,
            sites: Vec::new(),
            displacements,
        });
    }

    let sites = draw_sites(domain, config);
    let index = NearestDot::new(&xs, None);
    let h = domain.height;
    for it in 0..config.max_iterations {
        let owner = index.assign(&metric, &layout.dots, &sites);
        let moved = move_to_centroids(&mut layout.dots, &sites, &owner, h, config.centroid);
        layout.iterations_run = it + 1;
        displacements.push(moved);
        if moved < config.convergence_eps * h {
            break;
        }
    }
    Ok(Relaxation {
        initial,
        layout,
        sites,
        displacements,
    })
}

/// Groups of classes visited in each outer multi-class iteration.
///
/// Every class on its own first, then the unions: all of them for up to three
/// classes (ordered by size, then lexicographically), otherwise only the
/// union of all classes. The full union is always last.
pub fn class_schedule(classes: &[u32]) -> Vec<Vec<u32>> {
    let k = classes.len();
    let mut groups: Vec<Vec<u32>> = classes.iter().map(|&c| vec![c]).collect();
    if k <= 3 {
        let mut unions: Vec<Vec<u32>> = (1u32..(1 << k))
            .filter(|mask| mask.count_ones() >= 2)
            .map(|mask| {
                (0..k)
                    .filter(|b| mask & (1 << b) != 0)
                    .map(|b| classes[b])
                    .collect()
            })
            .collect();
        unions.sort_by(|a, b| a.len().cmp(&b.len()).then_with(|| a.cmp(b)));
        groups.extend(unions);
    } else {
        groups.push(classes.to_vec());
    }
    groups
}

/// Multi-class blue-noise layout: blue noise within every class and every
/// union of classes at once.
///
/// Falls back to [`relax`] (keeping the labels) when only one class is
/// present.
pub fn relax_multiclass(
    data: &DataSet,
    domain: &PlotDomain,
    config: &SolverConfig,
) -> Result<DotLayout> {
    relax_multiclass_traced(data, domain, config).map(|r| r.layout)
}

pub fn relax_multiclass_traced(
    data: &DataSet,
    domain: &PlotDomain,
    config: &SolverConfig,
) -> Result<Relaxation> {
    let labels = data.labels().ok_or(Error::MissingLabels)?;
    let mut classes: Vec<u32> = labels.to_vec();
    classes.sort_unstable();
    classes.dedup();
    if classes.len() < 2 {
        log::warn!("only one class present, running single-class relaxation");
        let mut run = relax_traced(&data.without_labels(), domain, config)?;
        run.initial.labels = Some(labels.to_vec());
        run.layout.labels = Some(labels.to_vec());
        return Ok(run);
    }

    let xs = normalize(data.values())?.values;
    config.validate(xs.len())?;
    let metric = config.metric.resolve()?;
    let initial = initial_layout(data, &xs, domain, config);
    let mut layout = initial.clone();
    let mut displacements = Vec::new();
    if config.max_iterations == 0 {
        return Ok(Relaxation {
            initial,
            layout,
            sites: Vec::new(),
            displacements,
        });
    }

    let sites = draw_sites(domain, config);
    let indices: Vec<NearestDot> = class_schedule(&classes)
        .iter()
        .map(|group| {
            let members: Vec<usize> = (0..labels.len())
                .filter(|&i| group.contains(&labels[i]))
                .collect();
            NearestDot::new(&xs, Some(&members))
        })
        .collect();
    let h = domain.height;
    for it in 0..config.max_iterations {
        let mut moved = 0.0;
        for index in &indices {
            let owner = index.assign(&metric, &layout.dots, &sites);
            moved = move_to_centroids(&mut layout.dots, &sites, &owner, h, config.centroid);
        }
        layout.iterations_run = it + 1;
        displacements.push(moved);
        if moved < config.convergence_eps * h {
            break;
        }
    }
    Ok(Relaxation {
        initial,
        layout,
        sites,
        displacements,
    })
}

/// Plain 2D Lloyd relaxation of `n` random dots, both coordinates free.
///
/// Not a plot of any data; an upper bound on the spectral quality the
/// constrained solver can reach.
pub fn relax_unconstrained(
    n: usize,
    domain: &PlotDomain,
    config: &SolverConfig,
) -> Result<DotLayout> {
    if n == 0 {
        return Err(Error::EmptyData);
    }
    config.validate(n)?;
    let metric = config.metric.resolve()?;
    let mut x_rng = rng::stream(config.seed, rng::FREE_X_STREAM);
    let xs: Vec<f64> = (0..n).map(|_| x_rng.random::<f64>()).collect();
    let mut layout = jitter_init(&xs, domain, config.seed);
    if config.max_iterations == 0 {
        return Ok(layout);
    }
    let sites = draw_sites(domain, config);
    let h = domain.height;
    for it in 0..config.max_iterations {
        let index = NearestDot::new(&layout.xs(), None);
        let owner = index.assign(&metric, &layout.dots, &sites);
        let mut sum = vec![Point::default(); n];
        let mut count = vec![0usize; n];
        for (site, &i) in sites.iter().zip(&owner) {
            sum[i].x += site.x;
            sum[i].y += site.y;
            count[i] += 1;
        }
        let mut moved: f64 = 0.0;
        for ((dot, s), &c) in layout.dots.iter_mut().zip(&sum).zip(&count) {
            if c == 0 {
                continue;
            }
            let next = Point::new(
                (s.x / c as f64).clamp(0.0, 1.0),
                (s.y / c as f64).clamp(0.0, h),
            );
            moved = moved
                .max((next.x - dot.x).abs())
                .max((next.y - dot.y).abs());
            *dot = next;
        }
        layout.iterations_run = it + 1;
        if moved < config.convergence_eps * h {
            break;
        }
    }
    Ok(layout)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::density::{estimate_density, height_profile};
    use crate::metric::metric_distance;

    fn layout_of(points: &[(f64, f64)], h: f64) -> DotLayout {
        DotLayout {
            dots: points.iter().map(|&(x, y)| Point::new(x, y)).collect(),
            labels: None,
            domain: PlotDomain::new(0.0, 1.0, h, 0.01).unwrap(),
            seed: 0,
            iterations_run: 0,
        }
    }

    fn brute_force(layout: &DotLayout, sites: &[Point], spec: &MetricSpec) -> Vec<usize> {
        sites
            .iter()
            .map(|&v| {
                let mut best = (f64::INFINITY, usize::MAX);
                for (i, &p) in layout.dots.iter().enumerate() {
                    let d = metric_distance(spec, p, v).unwrap();
                    if d < best.0 {
                        best = (d, i);
                    }
                }
                best.1
            })
            .collect()
    }

    fn random_points(n: usize, h: f64, seed: u64, quantize: bool) -> Vec<Point> {
        let mut rng = rng::stream(seed, 9);
        (0..n)
            .map(|_| {
                let mut x = rng.random::<f64>();
                let mut y = rng.random::<f64>() * h;
                if quantize {
                    x = libm::round(x * 8.0) / 8.0;
                    y = libm::round(y * 40.0) / 40.0;
                }
                Point::new(x, y)
            })
            .collect()
    }

    #[test]
    fn jitter_is_deterministic_and_keeps_x() {
        let xs: Vec<f64> = (0..1000).map(|i| i as f64 / 999.0).collect();
        let domain = PlotDomain::new(0.0, 1.0, 0.2, 0.01).unwrap();
        let a = jitter_init(&xs, &domain, 11);
        let b = jitter_init(&xs, &domain, 11);
        assert_eq!(a, b);
        assert_eq!(a.xs(), xs);
        assert!(a.ys().iter().all(|&y| (0.0..=0.2).contains(&y)));
        // Mean of 1000 U(0, 0.2): sd 0.2/sqrt(12)/sqrt(1000) ~ 0.0018,
        // so [0.09, 0.11] is more than 5 sd wide on each side.
        let mean = a.ys().iter().sum::<f64>() / 1000.0;
        assert!((0.09..=0.11).contains(&mean), "mean {mean}");
        assert_ne!(jitter_init(&xs, &domain, 12), a);
    }

    #[test]
    fn assignment_examples() {
        let layout = layout_of(&[(0.0, 0.0), (1.0, 0.0)], 0.2);
        let spec = MetricSpec::uniform();
        let a = assign_sites(&layout, &[Point::new(0.4, 0.0)], &spec).unwrap();
        assert_eq!(a.owner, vec![0]);
        let a = assign_sites(
            &layout,
            &[Point::new(1.0, 0.0), Point::new(0.5, 0.1)],
            &spec,
        )
        .unwrap();
        // The midpoint is a tie and goes to the lower index.
        assert_eq!(a.owner, vec![1, 0]);
        assert_eq!(
            assign_sites(&layout_of(&[], 0.2), &[Point::new(0.0, 0.0)], &spec),
            Err(Error::NoDots)
        );
    }

    #[test]
    fn assignment_matches_exhaustive_scan() {
        let density = estimate_density(&[0.1, 0.15, 0.5, 0.52, 0.9], None).unwrap();
        let specs = [MetricSpec::uniform(), MetricSpec::density_warped(density)];
        for seed in 0..6 {
            let dots = random_points(256, 0.2, seed, seed % 2 == 1);
            let sites = random_points(8192, 0.2, seed + 100, seed % 2 == 1);
            let mut layout = layout_of(&[], 0.2);
            layout.dots = dots;
            for spec in &specs {
                let a = assign_sites(&layout, &sites, spec).unwrap();
                assert_eq!(a.owner, brute_force(&layout, &sites, spec));
                assert_eq!(a.sites, sites);
            }
        }
    }

    #[test]
    fn single_dot_moves_to_mean_height() {
        let layout = layout_of(&[(0.3, 0.05)], 0.2);
        let sites = [
            Point::new(0.1, 0.02),
            Point::new(0.9, 0.1),
            Point::new(0.5, 0.18),
        ];
        let a = assign_sites(&layout, &sites, &MetricSpec::uniform()).unwrap();
        let next = lloyd_step(&layout, &a);
        assert_eq!(next.dots[0].x, 0.3);
        assert!((next.dots[0].y - 0.1).abs() < 1e-15);
    }

    #[test]
    fn empty_cells_stay_put() {
        let layout = layout_of(&[(0.0, 0.1), (1.0, 0.07)], 0.2);
        let sites = [Point::new(0.1, 0.0), Point::new(0.2, 0.2)];
        let a = assign_sites(&layout, &sites, &MetricSpec::uniform()).unwrap();
        assert_eq!(a.owner, vec![0, 0]);
        let next = lloyd_step(&layout, &a);
        assert_eq!(next.dots[1], Point::new(1.0, 0.07));
        assert_eq!(next.dots[0], Point::new(0.0, 0.1));
    }

    /// Regular site grid over [0,1] x [0,0.2]; two dots sharing x = 0.5
    /// split the domain into lower and upper halves, whose centroids sit at
    /// h/4 and 3h/4.
    #[test]
    fn two_stacked_dots_separate() {
        let h = 0.2;
        let mut sites = Vec::new();
        for i in 0..128 {
            for j in 0..64 {
                sites.push(Point::new(
                    (i as f64 + 0.5) / 128.0,
                    (j as f64 + 0.5) / 64.0 * h,
                ));
            }
        }
        let mut layout = layout_of(&[(0.5, 0.09), (0.5, 0.12)], h);
        for _ in 0..50 {
            let a = assign_sites(&layout, &sites, &MetricSpec::uniform()).unwrap();
            layout = lloyd_step(&layout, &a);
        }
        assert!(
            (layout.dots[0].y - h / 4.0).abs() <= 0.02 * h,
            "{:?}",
            layout.dots
        );
        assert!(
            (layout.dots[1].y - 3.0 * h / 4.0).abs() <= 0.02 * h,
            "{:?}",
            layout.dots
        );
        assert_eq!(layout.xs(), vec![0.5, 0.5]);
    }

    #[test]
    fn zero_iterations_is_jitter() {
        let data = DataSet::new(vec![3.0, 1.0, 2.0, 2.5]).unwrap();
        let domain = PlotDomain::new(1.0, 3.0, 0.1, 0.01).unwrap();
        let mut config = SolverConfig::new(5);
        config.max_iterations = 0;
        let out = relax(&data, &domain, &config).unwrap();
        let xs = normalize(data.values()).unwrap().values;
        assert_eq!(out, jitter_init(&xs, &domain, 5));
    }

    #[test]
    fn relax_preserves_encoding_and_bounds() {
        let values: Vec<f64> = (0..200)
            .map(|i| libm::sin(i as f64 * 0.37) * 3.0 + 10.0)
            .collect();
        let data = DataSet::new(values).unwrap();
        let norm = normalize(data.values()).unwrap();
        let domain = PlotDomain::new(norm.x_min, norm.x_max, 0.1, 0.01).unwrap();
        let mut config = SolverConfig::new(3);
        config.n_sites = 2048;
        let run = relax_traced(&data, &domain, &config).unwrap();
        assert_eq!(run.layout.xs(), norm.values);
        assert!(run.layout.ys().iter().all(|&y| (0.0..=0.1).contains(&y)));
        assert_eq!(run.layout.iterations_run, run.displacements.len());
        assert!(run.layout.iterations_run <= 40);
        assert_eq!(run.layout, relax(&data, &domain, &config).unwrap());
    }

    #[test]
    fn two_dots_settle_inside_domain() {
        let data = DataSet::new(vec![0.0, 1.0]).unwrap();
        let domain = PlotDomain::new(0.0, 1.0, 0.5, 0.01).unwrap();
        for seed in 0..5 {
            let mut config = SolverConfig::new(seed);
            config.max_iterations = 200;
            let run = relax_traced(&data, &domain, &config).unwrap();
            let last = *run.displacements.last().unwrap();
            assert!(last < config.convergence_eps * 0.5, "seed {seed}: {last}");
            // Far apart dots each own half the domain; both sit near h/2.
            for y in run.layout.ys() {
                assert!((0.0..=0.5).contains(&y));
                assert!((y - 0.25).abs() < 0.02, "seed {seed}: {y}");
            }
        }
    }

    #[test]
    fn config_errors() {
        let data = DataSet::new(vec![1.0, 2.0, 3.0]).unwrap();
        let domain = PlotDomain::new(1.0, 3.0, 0.1, 0.01).unwrap();
        let mut config = SolverConfig::new(0);
        config.n_sites = 2;
        assert!(matches!(
            relax(&data, &domain, &config),
            Err(Error::InvalidConfig(_))
        ));
        let mut config = SolverConfig::new(0);
        config.metric.kind = crate::metric::MetricKind::DensityWarped;
        assert_eq!(relax(&data, &domain, &config), Err(Error::MissingDensity));
        assert_eq!(
            relax_multiclass(&data, &domain, &SolverConfig::new(0)),
            Err(Error::MissingLabels)
        );
    }

    #[test]
    fn schedule_shapes() {
        assert_eq!(class_schedule(&[0, 1]), vec![vec![0], vec![1], vec![0, 1]]);
        assert_eq!(
            class_schedule(&[0, 1, 2]),
            vec![
                vec![0],
                vec![1],
                vec![2],
                vec![0, 1],
                vec![0, 2],
                vec![1, 2],
                vec![0, 1, 2]
            ]
        );
        assert_eq!(class_schedule(&[0, 1, 2, 3]).len(), 5);
        assert_eq!(
            class_schedule(&[0, 1, 2, 3]).last().unwrap(),
            &vec![0, 1, 2, 3]
        );
    }

    #[test]
    fn single_class_falls_back_to_relax() {
        let values: Vec<f64> = (0..50).map(|i| (i * 7 % 13) as f64).collect();
        let data = DataSet::new(values)
            .unwrap()
            .with_labels(vec![0; 50], vec!["only".into()])
            .unwrap();
        let norm = normalize(data.values()).unwrap();
        let domain = PlotDomain::new(norm.x_min, norm.x_max, 0.1, 0.01).unwrap();
        let mut config = SolverConfig::new(1);
        config.n_sites = 1024;
        let multi = relax_multiclass(&data, &domain, &config).unwrap();
        let single = relax(&data.without_labels(), &domain, &config).unwrap();
        assert_eq!(multi.dots, single.dots);
        assert_eq!(multi.labels, Some(vec![0; 50]));
    }

    #[test]
    fn multiclass_keeps_encoding() {
        let values: Vec<f64> = (0..90).map(|i| libm::cos(i as f64) * 5.0).collect();
        let labels: Vec<u32> = (0..90).map(|i| (i % 3) as u32).collect();
        let data = DataSet::new(values)
            .unwrap()
            .with_labels(labels.clone(), vec!["a".into(), "b".into(), "c".into()])
            .unwrap();
        let norm = normalize(data.values()).unwrap();
        let domain = PlotDomain::new(norm.x_min, norm.x_max, 0.15, 0.01).unwrap();
        let mut config = SolverConfig::new(2);
        config.n_sites = 2048;
        let out = relax_multiclass(&data, &domain, &config).unwrap();
        assert_eq!(out.xs(), norm.values);
        assert_eq!(out.labels, Some(labels));
        assert!(out.ys().iter().all(|&y| (0.0..=0.15).contains(&y)));
    }

    #[test]
    fn centrality_stays_in_band() {
        let values: Vec<f64> = (0..120)
            .map(|i| libm::pow((i % 40) as f64 / 40.0, 2.0))
            .collect();
        let data = DataSet::new(values).unwrap();
        let norm = normalize(data.values()).unwrap();
        let density = estimate_density(&norm.values, None).unwrap();
        let profile = height_profile(&density, 120, 0.01);
        let h = profile.max();
        let domain = PlotDomain::new(norm.x_min, norm.x_max, h, 0.01).unwrap();
        let mut config = SolverConfig::new(4);
        config.n_sites = 2048;
        config.metric = MetricSpec::density_warped(density);
        config.centrality = Some(profile.clone());
        let run = relax_traced(&data, &domain, &config).unwrap();
        for p in run
            .sites
            .iter()
            .chain(&run.initial.dots)
            .chain(&run.layout.dots)
        {
            let (low, high) = band(&profile, h, p.x);
            assert!(
                p.y >= low - 1e-12 && p.y <= high + 1e-12,
                "{p:?} outside [{low}, {high}]"
            );
        }
        assert_eq!(run.layout.xs(), norm.values);
    }

    #[test]
    fn median_rule_runs() {
        let data = DataSet::new((0..64).map(|i| (i % 9) as f64).collect()).unwrap();
        let domain = PlotDomain::new(0.0, 8.0, 0.1, 0.01).unwrap();
        let mut config = SolverConfig::new(0);
        config.n_sites = 1024;
        config.centroid = CentroidRule::Median;
        let out = relax(&data, &domain, &config).unwrap();
        assert!(out.ys().iter().all(|&y| (0.0..=0.1).contains(&y)));
        assert_eq!(median(vec![3.0, 1.0, 2.0, 10.0]), Some(2.5));
        assert_eq!(median(vec![]), None);
    }

    #[test]
    fn unconstrained_lloyd_stays_in_domain() {
        let domain = PlotDomain::new(0.0, 1.0, 0.2, 0.01).unwrap();
        let mut config = SolverConfig::new(8);
        config.n_sites = 2048;
        let out = relax_unconstrained(64, &domain, &config).unwrap();
        assert_eq!(out.len(), 64);
        for p in &out.dots {
            assert!((0.0..=1.0).contains(&p.x) && (0.0..=0.2).contains(&p.y));
        }
        assert!(out.iterations_run > 0);
    }
}
