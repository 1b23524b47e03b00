fn main() {
    std::process::exit(nlse_solitons::cli::run_command(std::env::args_os()));
}
