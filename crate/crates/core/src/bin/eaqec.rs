fn main() {
    let mut stdout = std::io::stdout().lock();
    let mut stderr = std::io::stderr().lock();
    std::process::exit(eaqec::cli::run(std::env::args_os(), &mut stdout, &mut stderr));
}
