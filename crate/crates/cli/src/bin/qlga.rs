fn main() -> std::process::ExitCode {
    histqca_cli::qlga_main(std::env::args_os())
}
