fn main() {
    std::process::exit(causalmt::cli::run(std::env::args_os()));
}
