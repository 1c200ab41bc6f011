//! Regenerates the bundled reference data sets in `fixtures/`.
//!
//! All three are synthetic stand-ins shaped after well-known data sets:
//!
//! * `geyser.csv`: 272 eruption durations in minutes, a 35/65 mixture of
//!   N(2.0, 0.27) and N(4.37, 0.43), clamped to [1.6, 5.1], 3 decimals.
//! * `tips.csv`: 244 restaurant bills, 176 dinner bills ~ LogNormal(2.95, 0.42)
//!   and 68 lunch bills ~ LogNormal(2.76, 0.40), clamped to [3.07, 50.81],
//!   rounded to cents.
//! * `iris.csv`: 150 sepal lengths in cm, 50 per species with N(5.006, 0.352),
//!   N(5.936, 0.516) and N(6.588, 0.636), rounded to 1 decimal.
//!
//! Run with `cargo run -p bnplot --example gen_fixtures`.

use std::fs::File;
use std::io::{BufWriter, Write};
use std::path::Path;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rand_distr::{Distribution, LogNormal, Normal};

fn round_to(v: f64, decimals: i32) -> f64 {
    let s = 10f64.powi(decimals);
    (v * s).round() / s
}

fn main() -> std::io::Result<()> {
    let dir = Path::new(env!("CARGO_MANIFEST_DIR")).join("fixtures");
    let mut rng = ChaCha8Rng::seed_from_u64(20_220_101);

    let mut w = BufWriter::new(File::create(dir.join("geyser.csv"))?);
    writeln!(w, "eruptions")?;
    let short = Normal::<f64>::new(2.0, 0.27).unwrap();
    let long = Normal::new(4.37, 0.43).unwrap();
    for _ in 0..272 {
        let v: f64 = if rng.random::<f64>() < 0.35 {
            short.sample(&mut rng)
        } else {
            long.sample(&mut rng)
        };
        writeln!(w, "{:.3}", round_to(v.clamp(1.6, 5.1), 3))?;
    }
    w.flush()?;

    let mut w = BufWriter::new(File::create(dir.join("tips.csv"))?);
    writeln!(w, "total_bill,time")?;
    let dinner = LogNormal::<f64>::new(2.95, 0.42).unwrap();
    let lunch = LogNormal::new(2.76, 0.40).unwrap();
    let mut rows: Vec<(f64, &str)> = Vec::new();
    rows.extend((0..176).map(|_| (dinner.sample(&mut rng), "Dinner")));
    rows.extend((0..68).map(|_| (lunch.sample(&mut rng), "Lunch")));
    // Interleave the classes the way a real receipt log would.
    for i in (1..rows.len()).rev() {
        let j = rng.random_range(0..=i);
        rows.swap(i, j);
    }
    for (v, time) in rows {
        writeln!(w, "{:.2},{}", round_to(v.clamp(3.07, 50.81), 2), time)?;
    }
    w.flush()?;

    let mut w = BufWriter::new(File::create(dir.join("iris.csv"))?);
    writeln!(w, "sepal_length,species")?;
    for (name, mean, sd) in [
        ("setosa", 5.006, 0.352),
        ("versicolor", 5.936, 0.516),
        ("virginica", 6.588, 0.636),
    ] {
        let d = Normal::new(mean, sd).unwrap();
        for _ in 0..50 {
            writeln!(w, "{:.1},{}", round_to(d.sample(&mut rng), 1), name)?;
        }
    }
    w.flush()
}
