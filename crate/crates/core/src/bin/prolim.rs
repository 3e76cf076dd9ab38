fn main() {
    std::process::exit(prolim::cli::main_with_args(std::env::args_os()));
}
