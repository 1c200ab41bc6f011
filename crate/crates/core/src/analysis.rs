//! Quality measures for dot layouts: expected power spectra, dot overlap
//! and the Monte Carlo relaxation cost.

use alloc::vec;
use alloc::vec::Vec;
use core::f64::consts::PI;

use crate::data::{DotLayout, Point};
use crate::error::{Error, Result};
use crate::metric::MetricSpec;
use crate::solver::assign_sites;

/// Quantile of sorted data with linear interpolation between order
/// statistics.
pub fn quantile_sorted(sorted: &[f64], q: f64) -> f64 {
    debug_assert!(!sorted.is_empty());
    let pos = q.clamp(0.0, 1.0) * (sorted.len() - 1) as f64;
    let lo = libm::floor(pos) as usize;
    let hi = (lo + 1).min(sorted.len() - 1);
    let frac = pos - lo as f64;
    sorted[lo] + frac * (sorted[hi] - sorted[lo])
}

/// Median and quartiles of a sample.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Summary {
    pub median: f64,
    pub q1: f64,
    pub q3: f64,
}

impl Summary {
    pub fn of(values: &[f64]) -> Option<Summary> {
        if values.is_empty() {
            return None;
        }
        let mut sorted = values.to_vec();
        sorted.sort_by(f64::total_cmp);
        Some(Summary {
            median: quantile_sorted(&sorted, 0.5),
            q1: quantile_sorted(&sorted, 0.25),
            q3: quantile_sorted(&sorted, 0.75),
        })
    }

    pub fn iqr(&self) -> f64 {
        self.q3 - self.q1
    }
}

/// Mean pairwise encroachment: `(1/n) Σ_{i<j} max(0, 1 - d_ij / 2r)` with
/// Euclidean `d_ij` in plot coordinates and `r` the domain's dot radius.
pub fn overlap_metric(layout: &DotLayout) -> f64 {
    let n = layout.dots.len();
    if n == 0 {
        return 0.0;
    }
    let diameter = 2.0 * layout.domain.radius;
    let mut by_x = layout.dots.clone();
    by_x.sort_by(|a, b| a.x.total_cmp(&b.x).then(a.y.total_cmp(&b.y)));
    let mut total = 0.0;
    for (i, a) in by_x.iter().enumerate() {
        for b in &by_x[i + 1..] {
            if b.x - a.x >= diameter {
                break;
            }
            let d = a.distance(*b);
            if d < diameter {
                total += 1.0 - d / diameter;
            }
        }
    }
    total / n as f64
}

/// Monte Carlo estimate of the relaxation cost: for every dot the mean
/// metric distance to the sites of its cell, summed over dots. Empty cells
/// contribute nothing.
pub fn cost_estimate(layout: &DotLayout, sites: &[Point], metric: &MetricSpec) -> Result<f64> {
    let assignment = assign_sites(layout, sites, metric)?;
    let m = metric.resolve()?;
    let n = layout.dots.len();
    let mut sum = vec![0.0; n];
    let mut count = vec![0usize; n];
    for (&site, &i) in sites.iter().zip(&assignment.owner) {
        sum[i] += m.distance(layout.dots[i], site);
        count[i] += 1;
    }
    Ok(sum
        .iter()
        .zip(&count)
        .filter(|(_, &c)| c > 0)
        .map(|(&s, &c)| s / c as f64)
        .sum())
}

/// Expected power spectrum on the valid frequency lattice of a
/// `[0,1) × [0,h)` domain: integer `kx` in `-K..=K` and `ky = m / h` for
/// integer `m` in `-K..=K`.
#[derive(Debug, Clone, PartialEq)]
pub struct SpectrumGrid {
    kmax: usize,
    height: f64,
    /// Row-major, `m` rows by `kx` columns, both from `-K` to `K`.
    power: Vec<f64>,
    n_realizations: usize,
}

impl SpectrumGrid {
    pub fn kmax(&self) -> usize {
        self.kmax
    }

    pub fn height(&self) -> f64 {
        self.height
    }

    pub fn n_realizations(&self) -> usize {
        self.n_realizations
    }

    /// Number of lattice points per axis.
    pub fn side(&self) -> usize {
        2 * self.kmax + 1
    }

    pub fn power(&self) -> &[f64] {
        &self.power
    }

    fn index(&self, kx: i64, m: i64) -> usize {
        let k = self.kmax as i64;
        debug_assert!(kx.abs() <= k && m.abs() <= k);
        ((m + k) as usize) * self.side() + (kx + k) as usize
    }

    /// Power at horizontal frequency `kx` and vertical frequency `m / h`.
    pub fn at(&self, kx: i64, m: i64) -> f64 {
        self.power[self.index(kx, m)]
    }

    /// Vertical frequency of lattice row `m`.
    pub fn ky(&self, m: i64) -> f64 {
        m as f64 / self.height
    }

    /// `(kx, m, power)` for every lattice point, row by row.
    pub fn entries(&self) -> impl Iterator<Item = (i64, i64, f64)> + '_ {
        let k = self.kmax as i64;
        (-k..=k).flat_map(move |m| (-k..=k).map(move |kx| (kx, m, self.at(kx, m))))
    }

    /// Mean power over lattice points accepted by `keep`, DC always excluded.
    pub fn band_mean(&self, keep: impl Fn(i64, i64) -> bool) -> f64 {
        let (sum, count) = self
            .entries()
            .filter(|&(kx, m, _)| (kx, m) != (0, 0) && keep(kx, m))
            .fold((0.0, 0usize), |(s, c), (_, _, p)| (s + p, c + 1));
        if count == 0 {
            0.0
        } else {
            sum / count as f64
        }
    }

    /// Mean over every lattice point except DC.
    pub fn mean_non_dc(&self) -> f64 {
        self.band_mean(|_, _| true)
    }

    /// Mean over every lattice point off the `ky = 0` row. That row only
    /// reflects the fixed horizontal data density.
    pub fn mean_off_axis(&self) -> f64 {
        self.band_mean(|_, m| m != 0)
    }

    /// `0 < |kx| <= 3`, `0 < |m| <= 3`.
    pub fn low_band_mean(&self) -> f64 {
        self.band_mean(|kx, m| (1..=3).contains(&kx.abs()) && (1..=3).contains(&m.abs()))
    }

    /// `8 <= |kx| <= K`, all rows.
    pub fn high_band_mean(&self) -> f64 {
        self.band_mean(|kx, _| kx.abs() >= 8)
    }
}

/// Averages `|Σ_j exp(-2πi k·p_j)|² / n` over realizations.
pub fn power_spectrum(realizations: &[DotLayout], kmax: usize) -> Result<SpectrumGrid> {
    if kmax < 8 {
        return Err(Error::SpectrumBound(kmax));
    }
    let first = realizations.first().ok_or(Error::NoRealizations)?;
    let n = first.len();
    let h = first.height();
    if n == 0 {
        return Err(Error::EmptyData);
    }
    for r in realizations {
        if r.len() != n {
            return Err(Error::MismatchedRealizations("dot count"));
        }
        if r.height() != h {
            return Err(Error::MismatchedRealizations("plot height"));
        }
    }

    let side = 2 * kmax + 1;
    let k = kmax as i64;
    let mut power = vec![0.0; side * side];
    // Per-dot phasors for every horizontal and vertical frequency.
    let mut ex = vec![(0.0, 0.0); side * n];
    let mut ey = vec![(0.0, 0.0); side * n];
    let phasor = |t: f64| {
        let a = -2.0 * PI * t;
        (libm::cos(a), libm::sin(a))
    };
    for layout in realizations {
        for (j, p) in layout.dots.iter().enumerate() {
            for f in -k..=k {
                let row = (f + k) as usize * n;
                ex[row + j] = phasor(f as f64 * p.x);
                ey[row + j] = phasor(f as f64 * p.y / h);
            }
        }
        for m in -k..=k {
            let ey_row = &ey[(m + k) as usize * n..][..n];
            for kx in -k..=k {
                let ex_row = &ex[(kx + k) as usize * n..][..n];
                let (mut re, mut im) = (0.0, 0.0);
                for (a, b) in ex_row.iter().zip(ey_row) {
                    re += a.0 * b.0 - a.1 * b.1;
                    im += a.0 * b.1 + a.1 * b.0;
                }
                power[(m + k) as usize * side + (kx + k) as usize] +=
                    (re * re + im * im) / n as f64;
            }
        }
    }
    let count = realizations.len() as f64;
    for p in &mut power {
        *p /= count;
    }
    Ok(SpectrumGrid {
        kmax,
        height: h,
        power,
        n_realizations: realizations.len(),
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::data::PlotDomain;
    use crate::solver::jitter_init;
    use alloc::vec::Vec;
    use proptest::prelude::*;
    use rand::Rng;

    fn layout(points: &[(f64, f64)], h: f64, r: f64) -> DotLayout {
        DotLayout {
            dots: points.iter().map(|&(x, y)| Point::new(x, y)).collect(),
            labels: None,
            domain: PlotDomain::new(0.0, 1.0, h, r).unwrap(),
            seed: 0,
            iterations_run: 0,
        }
    }

    /// All-pairs hinge sum without pruning.
    fn overlap_oracle(l: &DotLayout) -> f64 {
        let d = 2.0 * l.domain.radius;
        let mut t = 0.0;
        for i in 0..l.len() {
            for j in i + 1..l.len() {
                let a = l.dots[i];
                let b = l.dots[j];
                let dist = libm::sqrt((a.x - b.x) * (a.x - b.x) + (a.y - b.y) * (a.y - b.y));
                t += (1.0 - dist / d).max(0.0);
            }
        }
        t / l.len() as f64
    }

    #[test]
    fn quantiles() {
        let s = Summary::of(&[4.0, 1.0, 3.0, 2.0, 5.0]).unwrap();
        assert_eq!((s.q1, s.median, s.q3), (2.0, 3.0, 4.0));
        assert_eq!(s.iqr(), 2.0);
        assert_eq!(Summary::of(&[]), None);
        assert_eq!(quantile_sorted(&[1.0, 2.0], 0.5), 1.5);
    }

    #[test]
    fn overlap_examples() {
        assert_eq!(
            overlap_metric(&layout(&[(0.25, 0.0), (0.25, 0.02)], 0.1, 0.01)),
            0.0
        );
        assert_eq!(
            overlap_metric(&layout(&[(0.1, 0.05), (0.1, 0.05)], 0.1, 0.01)),
            0.5
        );
        // Half a diameter apart: penalty 1/2 over two dots.
        assert!(
            (overlap_metric(&layout(&[(0.5, 0.0), (0.5, 0.01)], 0.1, 0.01)) - 0.25).abs() < 1e-15
        );
    }

    #[test]
    fn overlap_matches_all_pairs() {
        let mut rng = crate::rng::stream(3, 0);
        for _ in 0..20 {
            let pts: Vec<(f64, f64)> = (0..150)
                .map(|_| (rng.random::<f64>(), rng.random::<f64>() * 0.05))
                .collect();
            let l = layout(&pts, 0.05, 0.01);
            assert!((overlap_metric(&l) - overlap_oracle(&l)).abs() < 1e-9);
        }
    }

    #[test]
    fn cost_examples() {
        let spec = MetricSpec::uniform();
        let l = layout(&[(0.5, 0.1)], 0.2, 0.01);
        let sites = [
            Point::new(0.0, 0.0),
            Point::new(1.0, 0.2),
            Point::new(0.5, 0.1),
        ];
        let expected = (1.1 + 1.1 + 0.0) / 3.0;
        assert!((cost_estimate(&l, &sites, &spec).unwrap() - expected).abs() < 1e-12);

        let l = layout(&[(0.2, 0.1), (0.7, 0.05)], 0.2, 0.01);
        let sites = [Point::new(0.2, 0.1), Point::new(0.7, 0.05)];
        assert_eq!(cost_estimate(&l, &sites, &spec).unwrap(), 0.0);
    }

    /// Squared Euclidean cell cost, the quantity the mean minimizes.
    fn l2_cell_cost(p: Point, cell: &[Point]) -> f64 {
        cell.iter()
            .map(|v| (p.x - v.x) * (p.x - v.x) + (p.y - v.y) * (p.y - v.y))
            .sum::<f64>()
            / cell.len() as f64
    }

    #[test]
    fn mean_never_increases_l2_cell_cost() {
        let mut rng = crate::rng::stream(5, 0);
        let pts: Vec<(f64, f64)> = (0..40)
            .map(|_| (rng.random(), rng.random::<f64>() * 0.2))
            .collect();
        let l = layout(&pts, 0.2, 0.01);
        let sites: Vec<Point> = (0..2000)
            .map(|_| Point::new(rng.random(), rng.random::<f64>() * 0.2))
            .collect();
        let a = assign_sites(&l, &sites, &MetricSpec::uniform()).unwrap();
        for (i, cell) in a.cells(l.len()).iter().enumerate() {
            if cell.is_empty() {
                continue;
            }
            let cell: Vec<Point> = cell.iter().map(|&s| sites[s]).collect();
            let c = cell.len() as f64;
            let mean = Point::new(
                cell.iter().map(|v| v.x).sum::<f64>() / c,
                cell.iter().map(|v| v.y).sum::<f64>() / c,
            );
            assert!(l2_cell_cost(mean, &cell) <= l2_cell_cost(l.dots[i], &cell) + 1e-15);
        }
    }

    #[test]
    fn single_dot_spectrum_is_one() {
        let l = layout(&[(0.37, 0.011)], 0.2, 0.01);
        let s = power_spectrum(&[l], 8).unwrap();
        for (_, _, p) in s.entries() {
            assert!((p - 1.0).abs() < 1e-12);
        }
    }

    #[test]
    fn dc_equals_n() {
        let pts: Vec<(f64, f64)> = (0..10)
            .map(|i| (i as f64 / 10.0, 0.01 * i as f64))
            .collect();
        let s = power_spectrum(&[layout(&pts, 0.2, 0.01)], 8).unwrap();
        assert!((s.at(0, 0) - 10.0).abs() < 1e-12);
        assert!((s.ky(5) - 25.0).abs() < 1e-12);
    }

    /// For i.i.d. uniform y the off-axis expectation is exactly 1. With
    /// 100 realizations the 33 x 32 off-axis average has standard error well
    /// under 0.01.
    #[test]
    fn jitter_spectrum_is_flat() {
        let xs: Vec<f64> = (0..256).map(|i| i as f64 / 255.0).collect();
        let domain = PlotDomain::new(0.0, 1.0, 0.2, 0.01).unwrap();
        let reals: Vec<DotLayout> = (0..100).map(|s| jitter_init(&xs, &domain, s)).collect();
        let s = power_spectrum(&reals, 16).unwrap();
        assert!(
            (0.85..=1.15).contains(&s.mean_off_axis()),
            "{}",
            s.mean_off_axis()
        );
        assert!(
            (0.85..=1.15).contains(&s.mean_non_dc()),
            "{}",
            s.mean_non_dc()
        );
        assert_eq!(s.n_realizations(), 100);
    }

    #[test]
    fn spectrum_errors() {
        let a = layout(&[(0.1, 0.1)], 0.2, 0.01);
        let b = layout(&[(0.1, 0.1), (0.2, 0.1)], 0.2, 0.01);
        let c = layout(&[(0.1, 0.1)], 0.3, 0.01);
        assert_eq!(
            power_spectrum(core::slice::from_ref(&a), 7),
            Err(Error::SpectrumBound(7))
        );
        assert_eq!(power_spectrum(&[], 8), Err(Error::NoRealizations));
        assert_eq!(
            power_spectrum(&[a.clone(), b], 8),
            Err(Error::MismatchedRealizations("dot count"))
        );
        assert_eq!(
            power_spectrum(&[a, c], 8),
            Err(Error::MismatchedRealizations("plot height"))
        );
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(32))]

        #[test]
        fn overlap_is_permutation_and_translation_invariant(
            pts in proptest::collection::vec((0.0..0.5f64, 0.0..0.05f64), 2..40),
            shift in (0.0..0.4f64, 0.0..0.04f64),
        ) {
            let l = layout(&pts, 0.1, 0.01);
            let mut rev = pts.clone();
            rev.reverse();
            let moved: Vec<(f64, f64)> = pts.iter().map(|&(x, y)| (x + shift.0, y + shift.1)).collect();
            let base = overlap_metric(&l);
            prop_assert!((base - overlap_metric(&layout(&rev, 0.1, 0.01))).abs() < 1e-12);
            prop_assert!((base - overlap_metric(&layout(&moved, 0.1, 0.01))).abs() < 1e-9);
            prop_assert!(base >= 0.0);
        }

        #[test]
        fn spectrum_is_order_invariant(
            pts in proptest::collection::vec((0.0..1.0f64, 0.0..0.2f64), 1..20),
        ) {
            let a = layout(&pts, 0.2, 0.01);
            let mut rev = pts.clone();
            rev.reverse();
            let b = layout(&rev, 0.2, 0.01);
            let s1 = power_spectrum(&[a.clone(), b.clone()], 8).unwrap();
            let s2 = power_spectrum(&[b, a], 8).unwrap();
            for (p, q) in s1.power().iter().zip(s2.power()) {
                prop_assert!((p - q).abs() < 1e-9);
            }
        }
    }
}
