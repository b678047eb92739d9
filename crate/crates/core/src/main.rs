fn main() {
    std::process::exit(mla_bandit::cli::run());
}
