fn main() {
    std::process::exit(kwl::cli::main());
}
