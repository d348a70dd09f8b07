use std::process::ExitCode;

fn main() -> ExitCode {
    grafts::cli::run()
}
