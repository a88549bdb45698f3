fn main() {
    let (out, err, code) = dgres_cli::main_with(std::env::args_os());
    print!("{out}");
    eprint!("{err}");
    std::process::exit(code);
}
