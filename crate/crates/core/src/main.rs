fn main() {
    std::process::exit(tangent_count::io::cli::run(std::env::args_os()));
}
