use clap::Parser;

fn main() {
    let cfg = sparc_cli::RunConfig::parse();
    let code = sparc_cli::run(&cfg, &mut std::io::stdout().lock(), &mut std::io::stderr().lock());
    std::process::exit(code);
}
