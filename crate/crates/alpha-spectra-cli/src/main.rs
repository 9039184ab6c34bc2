use alpha_spectra_cli::{execute, init_thread_pool_from_env, parse_args};

fn main() {
    init_thread_pool_from_env();
    let cli = match parse_args(std::env::args_os()) {
        Ok(cli) => cli,
        // clap prints help/version to stdout (exit 0) and usage errors to
        // stderr (exit 2).
        Err(err) => err.exit(),
    };
    match execute(cli) {
        Ok(status) => std::process::exit(status),
        Err(err) => {
            eprintln!("error: {err}");
            std::process::exit(2);
        }
    }
}
