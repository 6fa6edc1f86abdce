fn main() {
    std::process::exit(facetex::cli::run(std::env::args_os()));
}
