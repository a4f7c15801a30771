fn main() {
    std::process::exit(supercasimir::cli::run(std::env::args_os()));
}
