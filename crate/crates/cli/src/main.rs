use std::io::Write;
use std::process::ExitCode;

fn main() -> ExitCode {
    let (code, output) = wbu_cli::run(std::env::args_os());
    let mut out: Box<dyn Write> = if code == wbu_cli::EXIT_USAGE {
        Box::new(std::io::stderr())
    } else {
        Box::new(std::io::stdout())
    };
    let _ = out.write_all(output.as_bytes());
    ExitCode::from(code as u8)
}
