// Every nilpotent ring structure on `C2 × C2` and `Z/9`, with circle groups.

use hopf_nilring::nilring::{circle_group, enumerate_structures, nilpotency_index, validate};
use hopf_nilring::{Caps, Elem, GroupSpec, Result};

pub fn run() -> Result<()> {
    let caps = Caps::default();
    for g in [GroupSpec::elementary(2, 2)?, GroupSpec::cyclic(3, 2)?] {
        let structures = enumerate_structures(&g, &caps)?;
        println!("{g}: {} structures", structures.len());
        for a in &structures {
            assert!(validate(a).is_empty());
            let circle = circle_group(a, caps.enumeration)?;
            println!(
                "  {a}  A^{} = 0  circle group type {:?}",
                nilpotency_index(a)?,
                circle.isomorphism_type()
            );
        }
    }

    let a = &enumerate_structures(&GroupSpec::cyclic(3, 2)?, &caps)?[1];
    let x = Elem(vec![2]);
    let inv = a.circle_inverse(&x)?;
    println!("in {a}: {x} ∘ {inv} = {}", a.circle(&x, &inv)?);
    Ok(())
}

#[allow(dead_code)]
fn main() -> Result<()> {
    run()
}
