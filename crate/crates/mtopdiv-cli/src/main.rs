fn main() {
    std::process::exit(mtopdiv_cli::run());
}
