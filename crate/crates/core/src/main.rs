fn main() {
    std::process::exit(gabor_zak::cli::main_with_args(std::env::args_os()));
}
