fn main() {
    std::process::exit(crosp::cli::run(std::env::args_os()));
}
