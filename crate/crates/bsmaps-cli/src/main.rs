//! The `bsmaps` executable.

fn main() {
    std::process::exit(bsmaps_cli::run(std::env::args_os()));
}
