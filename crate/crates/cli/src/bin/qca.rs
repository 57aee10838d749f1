fn main() -> std::process::ExitCode {
    histqca_cli::qca_main(std::env::args_os())
}
