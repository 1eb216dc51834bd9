use std::io::Write;

fn main() {
    let result = corona_walk::cli::run_cli(std::env::args_os());
    let _ = std::io::stdout().write_all(result.stdout.as_bytes());
    let _ = std::io::stderr().write_all(result.stderr.as_bytes());
    std::process::exit(result.exit_code);
}
