use std::process::ExitCode;

fn main() -> ExitCode {
    let (result, pretty) = stablerank::cli::dispatch_with_mode(std::env::args_os());
    let out = result.render(pretty);
    if result.exit_code == 0 {
        println!("{out}");
    } else if result.command.is_empty() {
        eprint!("{out}");
    } else {
        println!("{out}");
    }
    ExitCode::from(result.exit_code as u8)
}
