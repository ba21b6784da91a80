fn main() {
    std::process::exit(polyproj::cli::run(std::env::args_os()));
}
