use std::process::ExitCode;

fn main() -> ExitCode {
    fenring::cli::run()
}
