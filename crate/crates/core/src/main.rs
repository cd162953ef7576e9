fn main() -> std::process::ExitCode {
    std::process::ExitCode::from(gammacf::cli::run())
}
