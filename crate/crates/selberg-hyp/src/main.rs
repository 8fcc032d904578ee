use clap::Parser;

use selberg_hyp::cli::{self, Cli, EXIT_USAGE};

fn main() {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(err) => {
            // help and version render through the same path; only real parse
            // failures take the usage exit code
            let code = if err.use_stderr() { EXIT_USAGE } else { 0 };
            let _ = err.print();
            std::process::exit(code);
        }
    };
    std::process::exit(cli::run(cli));
}
