//! Drive the `qf` command-line interface in-process.
//!
//! cargo run --example cli

fn main() {
    let commands: [&[&str]; 6] = [
        &["forms", "--disc", "-47"],
        &["group", "--disc", "-87"],
        &["witness", "--disc", "-23"],
        &["--json", "trivial", "--disc", "-20"],
        &["split", "--disc", "-87", "--prime", "659"],
        &["witness", "--disc", "-20"],
    ];
    for args in commands {
        let r = qforms::cli::run(std::iter::once("qf").chain(args.iter().copied()));
        println!("$ qf {}  (exit {})", args.join(" "), r.exit_code());
        println!("{}\n", r.render());
    }
}
