use std::io;
use std::process::ExitCode;

fn main() -> ExitCode {
    let report = cig_core::cli::run(std::env::args_os(), &mut io::stdout(), &mut io::stderr());
    ExitCode::from(report.exit_code as u8)
}
