fn main() {
    std::process::exit(toric_poisson::cli::main_with_args(std::env::args_os()));
}
