use clap::Parser;

fn main() {
    let cli = revsynth::cli::Cli::parse();
    let code = match revsynth::cli::run(cli) {
        Ok(c) => c,
        Err(e) => {
            eprintln!("error kind={} msg={}", e.kind(), e);
            2
        }
    };
    std::process::exit(code);
}
