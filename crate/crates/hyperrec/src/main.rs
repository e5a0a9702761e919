fn main() {
    std::process::exit(hyperrec::cli::main_with_args(std::env::args_os()));
}
