fn main() {
    std::process::exit(lamkit::cli::main_with_args(std::env::args_os()));
}
