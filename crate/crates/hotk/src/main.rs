fn main() {
    std::process::exit(hotk::cli::main_from_env());
}
