//! The command-line front end is an ordinary library function: feed it
//! argv, get the exit code back, reports on stdout. Useful for driving
//! the same JSON surface from another process or a test harness.
//!
//!     cargo run --example json_report

use preperiodic::cli::run;

fn argv(words: &[&str]) -> Vec<String> {
    std::iter::once("preperiodic")
        .chain(words.iter().copied())
        .map(String::from)
        .collect()
}

fn main() {
    println!("--- classify, text ---");
    let code = run(argv(&["classify", "--c", "-1", "--p", "3"]));
    assert_eq!(code, 0);

    println!("--- capacity, json ---");
    let code = run(argv(&["capacity", "--c", "-1", "--p", "3", "--format", "json"]));
    assert_eq!(code, 0);

    println!("--- verify a non-member, json ---");
    let code = run(argv(&["verify", "--x", "1/3", "--c", "0", "--format", "json"]));
    assert_eq!(code, 0);

    // Out-of-range inputs use exit code 3 and write the reason to stderr.
    println!("--- p = 2 is out of range ---");
    let code = run(argv(&["capacity", "--c", "-1", "--p", "2"]));
    println!("exit code {}", code);
}
