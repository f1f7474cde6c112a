fn main() {
    std::process::exit(vtb::cli::run());
}
