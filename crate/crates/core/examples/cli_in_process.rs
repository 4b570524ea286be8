// Driving the command-line front end from code.

use hopf_nilring::cli::main_with_args;
use hopf_nilring::Result;

pub fn run() -> Result<()> {
    let mut out = Vec::new();
    let mut err = Vec::new();
    let code = main_with_args(
        [
            "hopf-nilring",
            "report",
            "--family",
            "primitive",
            "--p",
            "3",
            "--n",
            "3",
        ],
        &mut out,
        &mut err,
    );
    print!("{}", String::from_utf8_lossy(&out));
    println!("exit code {code}");
    Ok(())
}

#[allow(dead_code)]
fn main() -> Result<()> {
    run()
}
