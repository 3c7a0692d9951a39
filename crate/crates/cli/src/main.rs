use std::process::ExitCode;

fn main() -> ExitCode {
    let argv: Vec<std::ffi::OsString> = std::env::args_os().collect();
    let report = ts_approval_cli::run(&argv);
    let text = if ts_approval_cli::wants_kv(&argv) && report.exit_code != 2 { report.to_kv() } else { report.output.clone() };
    if report.exit_code == 2 {
        eprint!("{text}");
    } else {
        print!("{text}");
    }
    ExitCode::from(report.exit_code as u8)
}
