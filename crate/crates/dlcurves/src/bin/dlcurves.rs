fn main() {
    std::process::exit(dlcurves::cli::run(std::env::args_os()));
}
