fn main() {
    let argv: Vec<String> = std::env::args().collect();
    std::process::exit(bsshift::cli::main_with(argv));
}
