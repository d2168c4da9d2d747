use std::io::{self, BufWriter};
use std::process::ExitCode;

use clap::Parser;

use qid::args::Cli;

fn main() -> ExitCode {
    let cli = Cli::parse();
    let stdout = io::stdout();
    let mut out = BufWriter::new(stdout.lock());
    match qid::execute(&cli, &mut out) {
        Ok(code) => ExitCode::from(code),
        Err(e) => {
            drop(out);
            eprintln!("error: {e}");
            ExitCode::from(2)
        }
    }
}
