fn main() {
    std::process::exit(k23_embed::cli::main_with_args(std::env::args_os()));
}
