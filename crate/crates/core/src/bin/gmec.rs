fn main() {
    if let Err(e) = gme_coherence::cli::run_from(std::env::args_os()) {
        eprintln!("error: {e}");
        std::process::exit(1);
    }
}
