fn main() {
    std::process::exit(graph_peaks::cli::cli_dispatch());
}
