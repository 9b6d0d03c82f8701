fn main() {
    std::process::exit(fracstefan::cli::main_with_args(std::env::args_os()));
}
