fn main() {
    std::process::exit(gvfan_cli::main_with(std::env::args_os()));
}
