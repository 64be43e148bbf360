use subgrad::cli;

fn main() {
    std::process::exit(cli::parse_and_dispatch(std::env::args_os()));
}
