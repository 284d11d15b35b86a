fn main() {
    std::process::exit(ifdist::cli::run());
}
