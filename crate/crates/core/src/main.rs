use clap::Parser;
use multifractal::cli::{Cli, run};

fn main() {
    std::process::exit(run(Cli::parse()));
}
