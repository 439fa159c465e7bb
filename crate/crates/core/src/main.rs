fn main() { std::process::exit(qbarnes::cli::dispatch(std::env::args().collect())); }
