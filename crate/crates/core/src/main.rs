fn main() {
    std::process::exit(fsm_cdr::cli::run(std::env::args_os()));
}
