fn main() {
    std::process::exit(ffzeta::cli::run_from_env());
}
