fn main() {
    let mut out = std::io::BufWriter::new(std::io::stdout());
    let code = grundy::cli::run(std::env::args_os(), &mut out, &mut std::io::stderr());
    drop(out);
    std::process::exit(code);
}
