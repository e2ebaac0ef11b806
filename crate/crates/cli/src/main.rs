use std::io::Write;
use std::process::ExitCode;

fn main() -> ExitCode {
    let code = match secjam::parse_args(std::env::args_os()) {
        Ok(cfg) => {
            let stdout = std::io::stdout();
            let mut out = std::io::BufWriter::new(stdout.lock());
            let code = secjam::run(&cfg, &mut out, &mut std::io::stderr());
            if out.flush().is_err() {
                secjam::EXIT_FAILURE
            } else {
                code
            }
        }
        Err(secjam::CliError::Clap(e)) => {
            let _ = e.print();
            e.exit_code()
        }
        Err(e) => {
            eprintln!("secjam: {e}");
            e.exit_code()
        }
    };
    ExitCode::from(code as u8)
}
