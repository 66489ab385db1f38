fn main() {
    std::process::exit(comte::cli::main());
}
