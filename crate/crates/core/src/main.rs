fn main() -> std::process::ExitCode {
    amd_core::cli::main()
}
