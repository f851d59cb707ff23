fn main() {
    std::process::exit(frobkit::cli::run());
}
