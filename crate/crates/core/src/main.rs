fn main() {
    std::process::exit(addbasis::cli::main());
}
