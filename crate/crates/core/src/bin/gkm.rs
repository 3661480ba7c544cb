fn main() {
    std::process::exit(gkm_ktheory::cli::run());
}
