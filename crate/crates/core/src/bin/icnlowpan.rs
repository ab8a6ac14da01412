fn main() -> std::process::ExitCode {
    icnlowpan::cli::main_entry()
}
