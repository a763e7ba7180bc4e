fn main() {
    std::process::exit(meo_cli::run(std::env::args_os()));
}
