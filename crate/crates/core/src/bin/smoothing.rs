fn main() {
    let code = hamming_smoothing::cli::run(std::env::args_os(), &mut std::io::stdout().lock());
    std::process::exit(code);
}
