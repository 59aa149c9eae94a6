fn main() {
    std::process::exit(branching_ot::cli::run(std::env::args_os()));
}
