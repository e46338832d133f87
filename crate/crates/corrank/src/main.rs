fn main() {
    std::process::exit(corrank::cli::run());
}
