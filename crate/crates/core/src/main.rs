fn main() {
    std::process::exit(bchfam::cli::run(std::env::args_os()));
}
