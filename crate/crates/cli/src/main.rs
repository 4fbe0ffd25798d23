fn main() {
    std::process::exit(q41_cli::run_from_args(std::env::args_os()));
}
