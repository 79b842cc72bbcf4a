fn main() {
    std::process::exit(kuroda_cli::run(std::env::args_os()));
}
