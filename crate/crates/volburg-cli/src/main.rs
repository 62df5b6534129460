use std::io::Write;

fn main() {
    let outcome = volburg_cli::dispatch(std::env::args_os());
    let mut stdout = std::io::stdout();
    let mut stderr = std::io::stderr();
    let _ = stdout.write_all(outcome.stdout.as_bytes());
    let _ = stderr.write_all(outcome.stderr.as_bytes());
    let _ = stdout.flush();
    std::process::exit(outcome.code);
}
