fn main() {
    std::process::exit(towerlim::cli::run(std::env::args_os()));
}
