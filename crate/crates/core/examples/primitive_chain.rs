// The ideal chain of the primitive ring on `F_p^n` against the number of
// subgroups of its circle group.

use hopf_nilring::correspondence::{gaussian_subspace_count, primitive_chain_check};
use hopf_nilring::{Caps, Result};

pub fn run() -> Result<()> {
    let caps = Caps::default();
    println!("  p  n  ideals  chain sizes             subgroups of Γ  1 + Σ gaussian");
    for (p, n) in [(2, 2), (2, 3), (3, 2), (3, 3), (5, 2)] {
        let r = primitive_chain_check(p, n, &caps)?;
        let formula = if r.circle_type.iter().all(|&e| e == 1) {
            (gaussian_subspace_count(p, n) + 1u32).to_string()
        } else {
            "-".into()
        };
        println!(
            "{p:>3}{n:>3}{:>8}  {:<24}{:>14}  {formula:>14}",
            r.ideal_sizes.len(),
            format!("{:?}", r.ideal_sizes),
            r.gamma_subgroup_count
        );
    }
    Ok(())
}

#[allow(dead_code)]
fn main() -> Result<()> {
    run()
}
