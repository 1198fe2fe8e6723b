use std::io::{self, Write};

fn main() {
    let code = {
        let mut stdout = io::stdout().lock();
        let mut stderr = io::stderr().lock();
        let code = charsum_cli::run_args(std::env::args_os(), &mut stdout, &mut stderr);
        let _ = stdout.flush();
        code
    };
    std::process::exit(code);
}
