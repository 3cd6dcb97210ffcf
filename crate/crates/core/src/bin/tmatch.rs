use std::process::ExitCode;

fn main() -> ExitCode {
    temporal_matching::cli::main_with_args(std::env::args_os())
}
