use std::process::ExitCode;

fn main() -> ExitCode {
    let args: Vec<String> = std::env::args().collect();
    let mut out = String::new();
    let mut err = String::new();
    let code = kancat_cli::run(args, &mut out, &mut err);
    print!("{out}");
    eprint!("{err}");
    ExitCode::from(code as u8)
}
