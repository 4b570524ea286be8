// The family `A_d` on `Z/27`: every subgroup is an ideal.

use hopf_nilring::correspondence::cyclic_scan;
use hopf_nilring::{Caps, Result};

pub fn run() -> Result<()> {
    let report = cyclic_scan(3, 3, None, &Caps::default())?;
    println!("Z/{}: {} values of d", 3u64.pow(report.n), report.d_count);
    for row in &report.rows {
        let gens: Vec<String> = row
            .ideal_generators
            .iter()
            .map(ToString::to_string)
            .collect();
        println!(
            "  d={}  {}  ideals <{}>  strong {}",
            row.d,
            row.structure,
            gens.join(">, <"),
            row.strong_ftgt
        );
    }
    Ok(())
}

#[allow(dead_code)]
fn main() -> Result<()> {
    run()
}
