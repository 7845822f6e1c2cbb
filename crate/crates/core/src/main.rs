use clap::Parser;
use costack::cli::{run, RunConfig, EXIT_PARSE};

fn main() {
    let config = match RunConfig::try_parse() {
        Ok(c) => c,
        Err(e) if e.use_stderr() => {
            eprint!("{e}");
            std::process::exit(EXIT_PARSE);
        }
        Err(e) => {
            print!("{e}");
            return;
        }
    };
    let outcome = run(&config);
    print!("{}", outcome.output);
    std::process::exit(outcome.code);
}
