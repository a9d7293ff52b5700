fn main() {
    std::process::exit(teachdim::cli::main_with(std::env::args_os()));
}
