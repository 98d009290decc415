use std::process::ExitCode;

use clap::Parser;

use algzero_cli::{run, Cli};

fn main() -> ExitCode {
    let cli = Cli::parse();
    let json = cli.json;
    let report = run(&cli);
    if json {
        println!("{}", serde_json::to_string_pretty(&report.to_json()).expect("serializable"));
    } else {
        print!("{}", report.text);
    }
    ExitCode::from(report.exit_code as u8)
}
