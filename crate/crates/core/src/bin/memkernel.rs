fn main() {
    std::process::exit(memkernel::cli::run(std::env::args_os()));
}
