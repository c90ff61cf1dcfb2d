fn main() {
    std::process::exit(conformal_qm::cli::run());
}
