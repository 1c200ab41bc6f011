use std::process::ExitCode;

use bnplot::commands::{cmd_overlap, cmd_plot, cmd_spectrum, OverlapArgs, PlotArgs, SpectrumArgs};
use clap::{Parser, Subcommand};

/// Blue-noise dot plots for univariate data.
#[derive(Debug, Parser)]
#[command(name = "bnplot", version)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Lay out a CSV column and write PREFIX.json and PREFIX.svg.
    Plot(PlotArgs),
    /// Measure layout quality.
    #[command(subcommand)]
    Analyze(Analyze),
}

#[derive(Debug, Subcommand)]
enum Analyze {
    /// Expected power spectrum over many realizations.
    Spectrum(SpectrumArgs),
    /// Dot overlap across seeds and dot counts.
    Overlap(OverlapArgs),
}

fn main() -> ExitCode {
    env_logger::Builder::new()
        .filter_level(log::LevelFilter::Warn)
        .format_timestamp(None)
        .init();
    let cli = Cli::parse();
    let result = match &cli.command {
        Command::Plot(args) => cmd_plot(args).map(|out| {
            println!(
                "wrote {} and {}",
                out.json_path.display(),
                out.svg_path.display()
            );
        }),
        Command::Analyze(Analyze::Spectrum(args)) => cmd_spectrum(args).map(|out| {
            let s = &out.summary;
            println!(
                "{} {}: mean power {:.4} (off-axis {:.4}), low band {:.4}, high band {:.4}",
                s.dataset, s.treatment, s.mean_non_dc, s.mean_off_axis, s.low_band, s.high_band
            );
        }),
        Command::Analyze(Analyze::Overlap(args)) => cmd_overlap(args).map(|out| {
            for s in &out.summary {
                println!(
                    "{} {} n={}: median {:.4}, IQR {:.4}",
                    s.dataset, s.treatment, s.n, s.median, s.iqr
                );
            }
        }),
    };
    match result {
        Ok(()) => ExitCode::SUCCESS,
        Err(err) => {
            eprintln!("error: {err:#}");
            ExitCode::FAILURE
        }
    }
}
