fn main() {
    std::process::exit(hermite_wigner::cli::run(std::env::args_os()));
}
