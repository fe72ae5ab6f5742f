use clap::Parser;
use maxplus_cli::{run, Cli, Format};

fn main() {
    // clap exits with code 2 on usage errors by itself
    let cli = Cli::parse();
    match run(&cli) {
        Ok(report) => match cli.format {
            Format::Text => println!("{}", report.text),
            Format::Json => {
                println!("{}", serde_json::to_string_pretty(&report).expect("serializable report"))
            }
        },
        Err(err) => {
            eprintln!("error: {}", err.message());
            std::process::exit(err.exit_code());
        }
    }
}
