fn main() {
    std::process::exit(arithmos::cli::main());
}
