// Arithmetic and the subgroup lattice of `C4 × C2`.

use hopf_nilring::abelian::{enumerate_subgroups, isomorphism_type, subgroup_generated};
use hopf_nilring::{Elem, GroupSpec, Result};

pub fn run() -> Result<()> {
    let g = GroupSpec::new(2, vec![2, 1])?;
    let x = Elem(vec![3, 1]);
    let y = Elem(vec![1, 1]);
    println!("{g}: {x} + {y} = {}", g.add(&x, &y)?);
    println!("order of {x} is {}", g.order_of(&x)?);

    let h = subgroup_generated(&g, &[x.clone(), y])?;
    println!(
        "<(3,1), (1,1)> has {} elements, minimal generators {:?}",
        h.size(),
        h.generators()
    );

    let lattice = enumerate_subgroups(&g, 10_000)?;
    println!("{} subgroups:", lattice.len());
    for s in &lattice {
        let gens: Vec<String> = s.generators().iter().map(Elem::to_string).collect();
        println!("  order {:>2}  <{}>", s.size(), gens.join(", "));
    }
    println!(
        "isomorphism type read back from the group: {:?}",
        isomorphism_type(&g)?
    );
    Ok(())
}

#[allow(dead_code)]
fn main() -> Result<()> {
    run()
}
