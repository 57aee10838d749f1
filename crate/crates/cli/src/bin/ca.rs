fn main() -> std::process::ExitCode {
    histqca_cli::ca_main(std::env::args_os())
}
