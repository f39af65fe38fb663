fn main() {
    std::process::exit(entloc_cli::run(std::env::args_os()));
}
