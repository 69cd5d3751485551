//! Driving the command-line front end from code.

fn main() {
    let runs: [&[&str]; 4] = [
        &["transform", "exp(x)", "--domain=-10:10", "--method=sup", "--at", "1.0"],
        &["jet", "x*sin(x)", "--x0", "0", "--order", "4"],
        &["--format", "csv", "convert", "2", "4", "--to", "uv"],
        &["verify", "--id", "c.ex"],
    ];
    for args in runs {
        println!("$ legendre {}", args.join(" "));
        let code = legendre::cli::run(
            std::iter::once("legendre").chain(args.iter().copied()),
            &mut std::io::stdout(),
            &mut std::io::stderr(),
        );
        println!("exit code {code}\n");
    }
}
