use std::io::Write;
use std::process::ExitCode;

fn main() -> ExitCode {
    let out = meshkit::cli::run(std::env::args_os());
    print!("{}", out.stdout);
    let _ = std::io::stdout().flush();
    eprint!("{}", out.stderr);
    ExitCode::from(out.code as u8)
}
