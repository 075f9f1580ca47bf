fn main() {
    let argv: Vec<String> = std::env::args().skip(1).collect();
    let stdout = std::io::stdout();
    let code = tmdiamond::cli::run_command(&argv, &mut stdout.lock());
    std::process::exit(code);
}
