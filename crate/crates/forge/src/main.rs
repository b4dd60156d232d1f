use std::io::Write;
use std::process::ExitCode;

fn main() -> ExitCode {
    let out = ulrich_forge::dispatch(std::env::args_os());
    let written = if out.code == ulrich_forge::EXIT_USAGE && !out.output.starts_with('{') {
        std::io::stderr().write_all(out.output.as_bytes())
    } else {
        std::io::stdout().write_all(out.output.as_bytes())
    };
    if written.is_err() {
        return ExitCode::from(ulrich_forge::EXIT_USAGE as u8);
    }
    ExitCode::from(out.code as u8)
}
