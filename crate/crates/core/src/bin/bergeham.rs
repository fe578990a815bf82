fn main() {
    std::process::exit(berge_hamilton::cli::run(std::env::args_os()));
}
