use std::io;
use std::process::ExitCode;

fn main() -> ExitCode {
    let stdout = io::stdout();
    let mut out = stdout.lock();
    let mut err = io::stderr();
    let code = hopf_area::cli::run(std::env::args_os(), &mut out, &mut err);
    ExitCode::from(code as u8)
}
