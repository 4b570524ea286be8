// Regular subgroups of `Hol(Z/8)` and the rings behind the abelian ones.

use hopf_nilring::holomorph::{
    enumerate_regular_subgroups, holomorph_elements, ring_from_regular_subgroup, tau,
};
use hopf_nilring::nilring::cyclic_structure;
use hopf_nilring::{Caps, Elem, Error, GroupSpec, Result};

pub fn run() -> Result<()> {
    let caps = Caps::default();
    let g = GroupSpec::cyclic(2, 3)?;
    println!("|Hol({g})| = {}", holomorph_elements(&g, &caps)?.len());

    let regular = enumerate_regular_subgroups(&g, &caps)?;
    println!("{} regular subgroups", regular.len());
    for t in &regular {
        match ring_from_regular_subgroup(t, caps.enumeration) {
            Ok(a) => println!("  abelian, ring {a}"),
            Err(Error::NonAbelianRegularSubgroup) => println!("  non-abelian, no ring"),
            Err(e) => return Err(e),
        }
    }

    let a = cyclic_structure(3, 2, 1)?;
    let t = tau(&a, &Elem(vec![1]))?;
    println!(
        "on {}: τ(1) = {}",
        a.spec(),
        serde_json::to_string(&t).expect("json")
    );
    Ok(())
}

#[allow(dead_code)]
fn main() -> Result<()> {
    run()
}
