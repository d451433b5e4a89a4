use std::io::{self, Write};
use std::process::ExitCode;

fn main() -> ExitCode {
    let out = jtable::run(std::env::args_os(), &mut io::stderr());
    let mut stdout = io::stdout().lock();
    if stdout.write_all(out.stdout.as_bytes()).and_then(|_| stdout.flush()).is_err() {
        return ExitCode::from(jtable::cli::EXIT_USAGE);
    }
    ExitCode::from(out.code)
}
