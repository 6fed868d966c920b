fn main() {
    std::process::exit(motifnet::cli::main_with_args(std::env::args_os()));
}
