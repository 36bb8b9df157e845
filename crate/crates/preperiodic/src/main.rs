fn main() {
    std::process::exit(preperiodic::cli::run(std::env::args().collect()));
}
