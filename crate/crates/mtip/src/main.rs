fn main() {
    std::process::exit(mtip::cli::run());
}
