use std::process::ExitCode;

fn main() -> ExitCode {
    nondisclosure::cli::main(std::env::args().skip(1))
}
