use std::process::ExitCode;

fn main() -> ExitCode {
    qsym::cli::main()
}
