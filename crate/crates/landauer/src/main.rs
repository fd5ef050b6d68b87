fn main() {
    std::process::exit(landauer::main_with_args(std::env::args_os()));
}
