use std::process::ExitCode;

fn main() -> ExitCode {
    let (code, out) = covlab::cli::run_command(std::env::args().skip(1));
    println!("{out}");
    ExitCode::from(code as u8)
}
