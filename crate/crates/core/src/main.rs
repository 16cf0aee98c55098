fn main() {
    std::process::exit(timewell::cli::main_with_args(std::env::args_os()));
}
