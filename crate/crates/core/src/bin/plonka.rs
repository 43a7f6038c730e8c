use std::process::ExitCode;

fn main() -> ExitCode {
    let (code, output) = plonka_core::cli::run_command(std::env::args().skip(1));
    print!("{output}");
    ExitCode::from(code as u8)
}
