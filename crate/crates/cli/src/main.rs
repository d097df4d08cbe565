fn main() {
    std::process::exit(blotto_cli::run_cli(std::env::args_os()));
}
