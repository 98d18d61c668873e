use std::io::ErrorKind;

use braidkit::error::CliError;
use clap::Parser;

fn main() {
    let cli = braidkit::cli::Cli::parse();
    let mut out = std::io::stdout().lock();
    let code = match braidkit::cli::run(cli, &mut out) {
        Ok(code) => code,
        // output cut short by a closed pipe, e.g. `| head`
        Err(CliError::Io { source, .. }) if source.kind() == ErrorKind::BrokenPipe => 0,
        Err(e) => {
            eprintln!("error: {e}");
            e.exit_code()
        }
    };
    drop(out);
    std::process::exit(code);
}
