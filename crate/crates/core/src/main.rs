fn main() {
    std::process::exit(mvlift::cli::main_entry());
}
