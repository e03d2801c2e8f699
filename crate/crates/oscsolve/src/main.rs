fn main() {
    std::process::exit(oscsolve::cli::main_with_args(std::env::args_os()));
}
