fn main() {
    std::process::exit(lpalg::cli::run(std::env::args_os()));
}
