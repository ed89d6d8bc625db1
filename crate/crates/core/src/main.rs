fn main() {
    std::process::exit(intranskit::cli::run(std::env::args_os()));
}
