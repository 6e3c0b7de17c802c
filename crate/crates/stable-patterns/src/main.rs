fn main() {
    let args: Vec<String> = std::env::args().skip(1).collect();
    let outcome = stable_patterns::cli::run(&args);
    print!("{}", outcome.output);
    std::process::exit(outcome.code);
}
