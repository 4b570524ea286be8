// Invariant subgroups of α(G) against ideals for the primitive ring on
// `F_3^2`, plus one conjugation computed both ways.

use hopf_nilring::correspondence::{
    alpha, conjugate_alpha, lambda_gamma, theorem32_check, verify_prop21, Sample,
};
use hopf_nilring::nilring::primitive_structure;
use hopf_nilring::{Caps, Context, Elem, Result};

pub fn run() -> Result<()> {
    let caps = Caps::default();
    let ctx = Context::new(primitive_structure(3, 2)?, caps.enumeration)?;
    let (gamma, g) = (Elem(vec![1, 0]), Elem(vec![1, 0]));
    println!("λ({gamma}) = {:?}", lambda_gamma(&ctx, &gamma)?.images());
    println!("α({g}) = {:?}", alpha(&ctx, &g)?.images());
    println!(
        "λ(γ) α(g) λ(γ)^-1 = α({})",
        conjugate_alpha(&ctx, &gamma, &g)?
    );

    let pairs = verify_prop21(&ctx, Sample::All)?;
    println!(
        "{} pairs checked, {} failures",
        pairs.checked,
        pairs.failures.len()
    );

    let report = theorem32_check(&ctx, &caps)?;
    println!(
        "{} ideals = {} invariant subgroups; {} subgroups of Γ; strong form {}",
        report.ideals.len(),
        report.invariant_subgroups.len(),
        report.gamma_subgroup_count,
        report.strong_ftgt
    );
    println!("{}", serde_json::to_string_pretty(&report).expect("json"));
    Ok(())
}

#[allow(dead_code)]
fn main() -> Result<()> {
    run()
}
