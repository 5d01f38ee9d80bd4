use std::io::Write;

fn main() {
    let (code, text) = qgroupoid_cli::run(std::env::args_os());
    // errors go to stderr, reports and verdicts to stdout
    let _ = if code == 2 {
        std::io::stderr().write_all(text.as_bytes())
    } else {
        std::io::stdout().write_all(text.as_bytes())
    };
    std::process::exit(code);
}
