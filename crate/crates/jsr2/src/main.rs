use std::io::Write;
use std::process::ExitCode;

use jsr2::cli::{run, RunConfig, EXIT_USAGE};

fn main() -> ExitCode {
    let cfg = match RunConfig::parse_from(std::env::args_os()) {
        Ok(cfg) => cfg,
        Err(e) => {
            let _ = e.print();
            return ExitCode::from(if e.use_stderr() { EXIT_USAGE as u8 } else { 0 });
        }
    };
    let out = run(&cfg);
    let _ = std::io::stdout().write_all(out.stdout.as_bytes());
    let _ = std::io::stderr().write_all(out.stderr.as_bytes());
    ExitCode::from(out.code as u8)
}
