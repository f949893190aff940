use std::path::PathBuf;

use clap::{Parser, Subcommand, ValueEnum};
use kh_cli::*;

#[derive(Parser)]
#[command(name = "hfk", about = "Knot Floer homology of small grid diagrams over F2")]
struct Cli {
    #[command(subcommand)]
    cmd: Cmd,
}

#[derive(Clone, Copy, ValueEnum)]
enum Flavor {
    Hat,
    Minus,
}

#[derive(Subcommand)]
enum Cmd {
    /// HFK of a grid given as `{"size": g, "O": [...], "X": [...]}`.
    Grid {
        #[arg(long)]
        file: PathBuf,
        #[arg(long, value_enum, default_value = "hat")]
        flavor: Flavor,
        #[arg(long)]
        tau: bool,
        #[arg(long)]
        delta: bool,
        #[arg(long)]
        json: Option<PathBuf>,
    },
}

fn main() {
    env_logger::Builder::from_env(env_logger::Env::default().default_filter_or("warn")).init();
    let Cmd::Grid { file, flavor, tau, delta, json } = Cli::parse().cmd;
    let flavor = match flavor {
        Flavor::Hat => HfkFlavor::Hat,
        Flavor::Minus => HfkFlavor::Minus,
    };
    std::process::exit(finish(cmd_hfk(&HfkArgs { file, flavor, tau, delta, json })));
}
