use clap::Parser;

use dfsurf::cli::{run, Cli};

fn main() {
    let cli = Cli::parse();
    let (out, err, code) = run(&cli);
    print!("{}", out);
    eprint!("{}", err);
    std::process::exit(code);
}
