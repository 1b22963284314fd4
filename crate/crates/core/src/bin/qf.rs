fn main() {
    let result = qforms::cli::run(std::env::args_os());
    if result.is_error() {
        eprintln!("{}", result.render());
    } else {
        println!("{}", result.render());
    }
    std::process::exit(result.exit_code());
}
