use std::process::ExitCode;

fn main() -> ExitCode {
    let outcome = posetop_cli::run(std::env::args_os());
    for line in &outcome.stdout {
        println!("{line}");
    }
    for line in &outcome.stderr {
        eprintln!("{line}");
    }
    ExitCode::from(outcome.code as u8)
}
