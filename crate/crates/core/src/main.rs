fn main() { std::process::exit(double_delta::cli::run_from_env()) }
