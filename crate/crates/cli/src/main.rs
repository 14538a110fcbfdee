fn main() {
    std::process::exit(finfree_cli::run());
}
