fn main() {
    std::process::exit(lucascert::cli::main_entry());
}
