fn main() {
    std::process::exit(rectlab::cli::main());
}
