fn main() {
    std::process::exit(tubeap::cli::run(std::env::args_os()));
}
