fn main() {
    std::process::exit(nearplat::cli::run());
}
