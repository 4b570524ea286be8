// `Z/4` with `1·1 = 2`: circle group `C2 × C2`, three ideals, five
// subgroups of Γ, so the correspondence is not onto.

use hopf_nilring::correspondence::{crv_fixture, invariant_subgroups, theorem32_check};
use hopf_nilring::{Caps, Result};

pub fn run() -> Result<()> {
    let caps = Caps::default();
    let ctx = crv_fixture();
    for j in invariant_subgroups(&ctx, caps.enumeration)? {
        let elems: Vec<String> = j.elements().iter().map(ToString::to_string).collect();
        println!(
            "invariant subgroup of order {}: {{{}}}",
            j.size(),
            elems.join(", ")
        );
    }
    let r = theorem32_check(&ctx, &caps)?;
    println!(
        "Γ type {:?}: {} ideals vs {} subgroups, strong form {}",
        r.circle_type,
        r.ideals.len(),
        r.gamma_subgroup_count,
        r.strong_ftgt
    );
    Ok(())
}

#[allow(dead_code)]
fn main() -> Result<()> {
    run()
}
