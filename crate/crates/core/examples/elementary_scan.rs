// Over `C3 × C3`: among structures with elementary abelian circle group,
// only the zero ring gives a bijective correspondence.

use hopf_nilring::correspondence::theorem41_scan;
use hopf_nilring::{Caps, GroupSpec, Result};

pub fn run() -> Result<()> {
    let report = theorem41_scan(&GroupSpec::elementary(3, 2)?, &Caps::default())?;
    println!(
        "{}: {} structures, {} with elementary circle group, {} strong",
        report.spec, report.structures, report.elementary_circle, report.strong
    );
    for row in &report.rows {
        println!(
            "  {}  ideals {} / subgroups {}  {}",
            row.structure, row.ideal_count, row.gamma_subgroup_count, row.strong_ftgt
        );
    }
    Ok(())
}

#[allow(dead_code)]
fn main() -> Result<()> {
    run()
}
