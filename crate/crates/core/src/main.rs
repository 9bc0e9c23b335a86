fn main() {
    std::process::exit(ballsearch::cli::main_with_env());
}
