fn main() {
    std::process::exit(braid_inverse::cli::run(std::env::args_os()));
}
