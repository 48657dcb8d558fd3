fn main() {
    std::process::exit(twolift::cli::run(std::env::args_os()));
}
