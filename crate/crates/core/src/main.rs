use chern_gap::cli;

fn main() {
    env_logger::Builder::from_env(env_logger::Env::new().filter_or(cli::LOG_ENV, "warn"))
        .format_timestamp(None)
        .init();
    let code = match cli::parse_and_validate(std::env::args_os()) {
        Ok(cfg) => cli::run(&cfg),
        Err(e) => {
            let _ = e.print();
            e.exit_code()
        }
    };
    std::process::exit(code);
}
