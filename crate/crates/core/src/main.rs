use clap::Parser;

use refined_count::cli::{main_with, Args};

fn main() {
    let args = Args::parse();
    std::process::exit(main_with(&args));
}
