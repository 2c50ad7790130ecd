fn main() {
    std::process::exit(clusterforge::cli::main(std::env::args_os()));
}
