use std::path::PathBuf;

use clap::{Parser, Subcommand};
use kh_cli::*;
use kh_core::algebra::ExactField;

#[derive(Parser)]
#[command(name = "kh", about = "Khovanov homology, Rasmussen s and mutant comparisons from PD codes")]
struct Cli {
    #[command(subcommand)]
    cmd: Cmd,
}

#[derive(Subcommand)]
enum Cmd {
    /// Bigraded Khovanov table of one diagram.
    Compute {
        #[arg(long)]
        pd: PathBuf,
        #[arg(long, default_value = "Q", value_parser = parse_ring)]
        ring: ExactField,
        #[arg(long)]
        reduced: bool,
        #[arg(long)]
        delta: bool,
        #[arg(long)]
        euler: bool,
        #[arg(long)]
        json: Option<PathBuf>,
    },
    /// Kh and s along a twist family.
    Family {
        #[arg(long)]
        base: PathBuf,
        #[arg(long, conflicts_with = "sweep", value_parser = parse_range)]
        twists: Option<std::ops::RangeInclusive<usize>>,
        /// Inclusive range such as `8..10`.
        #[arg(long, value_parser = parse_range)]
        sweep: Option<std::ops::RangeInclusive<usize>>,
        #[arg(long, default_value = "Q", value_parser = parse_ring)]
        ring: ExactField,
        #[arg(long)]
        jobs: Option<usize>,
        #[arg(long)]
        json: Option<PathBuf>,
    },
    /// Compare two diagrams.
    Compare {
        #[arg(long)]
        a: PathBuf,
        #[arg(long)]
        b: PathBuf,
        #[arg(long, default_value = "Q", value_parser = parse_ring)]
        ring: ExactField,
        #[arg(long)]
        json: Option<PathBuf>,
    },
}

fn main() {
    env_logger::Builder::from_env(env_logger::Env::default().default_filter_or("warn")).init();
    let cli = Cli::parse();
    let result = match cli.cmd {
        Cmd::Compute { pd, ring, reduced, delta, euler, json } => {
            cmd_compute(&ComputeArgs { pd, ring, reduced, delta, euler, json })
        }
        Cmd::Family { base, twists, sweep, ring, jobs, json } => {
            let range = sweep.or(twists).unwrap_or(0..=0);
            cmd_family(&FamilyArgs { base, range, ring, jobs, json })
        }
        Cmd::Compare { a, b, ring, json } => cmd_compare(&CompareArgs { a, b, ring, json }),
    };
    std::process::exit(finish(result));
}
