fn main() {
    std::process::exit(spaceform::cli::run(std::env::args_os()));
}
