use std::io::Write;

fn main() {
    let stdout = std::io::stdout();
    let stderr = std::io::stderr();
    let mut out = stdout.lock();
    let code = vvmod_core::cli::run(std::env::args_os(), &mut out, &mut stderr.lock());
    let _ = out.flush();
    std::process::exit(code);
}
