fn main() {
    std::process::exit(frobtrace::cli::run());
}
