fn main() {
    std::process::exit(frachyp_cli::run_cli(std::env::args_os()));
}
