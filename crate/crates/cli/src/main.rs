use std::io::{self, Write};
use std::process::ExitCode;

use clap::Parser;
use raagtl_cli::{run, Cli};

fn main() -> ExitCode {
    let cli = Cli::parse();
    let stdout = io::stdout();
    let stderr = io::stderr();
    let mut out = stdout;
    let mut err = stderr;
    let code = match run(cli, &mut out, &mut err) {
        Ok(code) => code,
        Err(e) if e.message.is_empty() => e.code,
        Err(e) => {
            let _ = writeln!(err, "error: {e}");
            e.code
        }
    };
    let _ = out.flush();
    ExitCode::from(code as u8)
}
