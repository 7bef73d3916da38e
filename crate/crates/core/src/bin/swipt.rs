fn main() {
    std::process::exit(swipt::cli::run(std::env::args_os()));
}
