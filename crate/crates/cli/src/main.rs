fn main() {
    std::process::exit(dzv_cli::run_cli(std::env::args_os()));
}
