fn main() {
    std::process::exit(vilenkin_cli::run(std::env::args_os()));
}
