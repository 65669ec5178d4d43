fn main() {
    std::process::exit(padicwave::cli::run(std::env::args_os()));
}
