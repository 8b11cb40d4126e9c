use std::io::Write;

fn main() {
    let out = arcline_cli::dispatch(std::env::args());
    print!("{}", out.stdout);
    eprint!("{}", out.stderr);
    std::io::stdout().flush().ok();
    std::process::exit(out.code);
}
