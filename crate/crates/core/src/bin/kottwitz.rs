fn main() {
    std::process::exit(kottwitz::cli::run(std::env::args_os()));
}
