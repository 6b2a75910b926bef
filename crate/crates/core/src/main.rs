fn main() {
    std::process::exit(fuzzy_shadow::cli::run(std::env::args_os()));
}
