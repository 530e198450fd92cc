fn main() -> std::process::ExitCode {
    macbench::cli::main()
}
