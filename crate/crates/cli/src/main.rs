fn main() {
    std::process::exit(cauchylike_cli::run(std::env::args_os()));
}
