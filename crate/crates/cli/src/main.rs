use std::io::Write;
use std::process::ExitCode;

use clap::Parser;
use supertriple_cli::args::Cli;
use supertriple_cli::run;

fn configure_threads() -> Result<(), String> {
    let Ok(v) = std::env::var("SUPERTRIPLE_THREADS") else {
        return Ok(());
    };
    let n: usize = v.trim().parse().ok().filter(|&n| n > 0).ok_or_else(|| format!("SUPERTRIPLE_THREADS must be a positive integer, got {v:?}"))?;
    rayon::ThreadPoolBuilder::new().num_threads(n).build_global().map_err(|e| e.to_string())
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { 2 } else { 0 };
            let _ = e.print();
            return ExitCode::from(code);
        }
    };
    if let Err(e) = configure_threads() {
        eprintln!("error: {e}");
        return ExitCode::from(2);
    }
    let outcome = run(&cli);
    let mut stdout = std::io::stdout().lock();
    let _ = stdout.write_all(outcome.render(cli.json).as_bytes());
    let _ = stdout.flush();
    ExitCode::from(outcome.exit_code() as u8)
}
