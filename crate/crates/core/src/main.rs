fn main() {
    let code = membrane_perc::cli::run(std::env::args_os(), &mut std::io::stdout().lock());
    std::process::exit(code);
}
