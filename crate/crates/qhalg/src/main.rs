fn main() {
    std::process::exit(qhalg::cli::main_with_args(std::env::args_os()));
}
