use std::time::Instant;

use clap::Parser;

fn main() {
    let argv: Vec<String> = std::env::args().skip(1).collect();
    let cli = logsurf_cli::Cli::parse();
    let started = Instant::now();
    let outcome = logsurf_cli::run(cli, argv);
    if !outcome.stdout.is_empty() {
        println!("{}", outcome.stdout);
    }
    if !outcome.stderr.is_empty() {
        eprintln!("{}", outcome.stderr.trim_end());
    }
    eprintln!("wall time: {:.3}s", started.elapsed().as_secs_f64());
    std::process::exit(outcome.code);
}
