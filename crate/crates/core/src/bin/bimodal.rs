fn main() {
    std::process::exit(bimodal::cli::run(std::env::args_os()));
}
