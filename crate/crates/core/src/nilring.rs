//! Commutative, associative, nilpotent ring structures `A = (G, +, ·)` on a
//! finite abelian p-group, stored as symmetric structure constants on the
//! standard generators and extended bilinearly.

use std::collections::HashSet;
use std::fmt;

use serde::{Deserialize, Serialize};

use crate::abelian::{
    isomorphism_type, subgroup_generated, CayleyTable, Elem, FiniteOperation, GroupSpec, Subgroup,
};
use crate::util::BitSet;
use crate::{Caps, Error, Result};

/// Structure constants: `constants[i][j] = b_i · b_j`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(try_from = "StructureRepr")]
pub struct RingStructure {
    spec: GroupSpec,
    constants: Vec<Vec<Elem>>,
}

#[derive(Deserialize)]
struct StructureRepr {
    spec: GroupSpec,
    constants: Vec<Vec<Elem>>,
}

impl TryFrom<StructureRepr> for RingStructure {
    type Error = Error;

    fn try_from(r: StructureRepr) -> Result<Self> {
        RingStructure::new(r.spec, r.constants)
    }
}

impl RingStructure {
    /// Checks only the shape of the table; use [`validate`] for the axioms.
    pub fn new(spec: GroupSpec, constants: Vec<Vec<Elem>>) -> Result<Self> {
        let k = spec.rank();
        if constants.len() != k || constants.iter().any(|row| row.len() != k) {
            return Err(Error::InvalidStructure(format!(
                "structure constants must form a {k}×{k} table"
            )));
        }
        for c in constants.iter().flatten() {
            spec.check(c)?;
        }
        Ok(RingStructure { spec, constants })
    }

    pub fn spec(&self) -> &GroupSpec {
        &self.spec
    }

    pub fn constants(&self) -> &[Vec<Elem>] {
        &self.constants
    }

    /// `true` when every structure constant vanishes, i.e. `A² = 0`.
    pub fn is_zero(&self) -> bool {
        self.constants.iter().flatten().all(Elem::is_zero)
    }

    pub fn mul(&self, a: &Elem, b: &Elem) -> Result<Elem> {
        self.spec.check(a)?;
        self.spec.check(b)?;
        Ok(self.mul_unchecked(a, b))
    }

    /// `a ∘ b = a + b + a·b`.
    pub fn circle(&self, a: &Elem, b: &Elem) -> Result<Elem> {
        self.spec.check(a)?;
        self.spec.check(b)?;
        Ok(self.circle_unchecked(a, b))
    }

    /// The unique `x` with `a ∘ x = 0`, namely `Σ_{i≥1} (−1)^i a^i`.
    pub fn circle_inverse(&self, a: &Elem) -> Result<Elem> {
        self.spec.check(a)?;
        let spec = &self.spec;
        let bound = spec.log_order() as usize + 1;
        let mut power = a.clone();
        let mut acc = spec.zero();
        let mut i = 1;
        while !power.is_zero() {
            if i > bound {
                return Err(Error::InvalidStructure(format!(
                    "{a} is not nilpotent: a^{i} is nonzero"
                )));
            }
            let term = if i % 2 == 1 {
                spec.neg_unchecked(&power)
            } else {
                power.clone()
            };
            acc = spec.add_unchecked(&acc, &term);
            power = self.mul_unchecked(a, &power);
            i += 1;
        }
        if !self.circle_unchecked(a, &acc).is_zero() {
            return Err(Error::InvalidStructure(format!(
                "quasi-inverse series for {a} does not invert it"
            )));
        }
        Ok(acc)
    }

    pub(crate) fn mul_unchecked(&self, a: &Elem, b: &Elem) -> Elem {
        let moduli = self.spec.moduli();
        let k = moduli.len();
        let mut out = vec![0u64; k];
        for (i, &ai) in a.0.iter().enumerate() {
            if ai == 0 {
                continue;
            }
            for (j, &bj) in b.0.iter().enumerate() {
                if bj == 0 {
                    continue;
                }
                let coef = ai as u128 * bj as u128;
                for (l, slot) in out.iter_mut().enumerate() {
                    let c = self.constants[i][j].0[l] as u128;
                    if c == 0 {
                        continue;
                    }
                    let q = moduli[l] as u128;
                    *slot = ((*slot as u128 + (coef % q) * c % q) % q) as u64;
                }
            }
        }
        Elem(out)
    }

    pub(crate) fn circle_unchecked(&self, a: &Elem, b: &Elem) -> Elem {
        let s = self.spec.add_unchecked(a, b);
        self.spec.add_unchecked(&s, &self.mul_unchecked(a, b))
    }

    /// Smallest ideal containing `seeds`.
    pub fn ideal_generated(&self, seeds: &[Elem]) -> Result<Ideal> {
        for s in seeds {
            self.spec.check(s)?;
        }
        let k = self.spec.rank();
        let mut pending: Vec<Elem> = seeds.to_vec();
        let mut gens: Vec<Elem> = Vec::new();
        let mut span = subgroup_generated(&self.spec, &[])?;
        while let Some(x) = pending.pop() {
            if span.contains(&x) {
                continue;
            }
            for j in 0..k {
                pending.push(self.mul_unchecked(&x, &self.spec.basis(j)));
            }
            gens.push(x);
            span = subgroup_generated(&self.spec, &gens)?;
        }
        Ok(Ideal(span))
    }

    /// `true` when `J` is closed under multiplication by `A`. Checking the
    /// generators of `J` against the standard basis suffices by bilinearity.
    pub fn is_ideal(&self, j: &Subgroup) -> bool {
        j.generators().iter().all(|g| {
            (0..self.spec.rank()).all(|i| j.contains(&self.mul_unchecked(g, &self.spec.basis(i))))
        })
    }

    /// `A^2, A^3, …` down to and including the first zero power, or `Err`
    /// with the exponent `m` at which `A^m = A^{m+1} ≠ 0`.
    fn power_chain(&self) -> std::result::Result<Vec<Subgroup>, (usize, Subgroup)> {
        let spec = &self.spec;
        let k = spec.rank();
        let squares: Vec<Elem> = (0..k)
            .flat_map(|i| (0..k).map(move |j| (i, j)))
            .map(|(i, j)| self.constants[i][j].clone())
            .collect();
        let mut current = subgroup_generated(spec, &squares).expect("constants are valid elements");
        let mut chain = vec![current.clone()];
        let mut m = 2;
        while current.size() > 1 {
            let products: Vec<Elem> = current
                .generators()
                .iter()
                .flat_map(|g| (0..k).map(move |j| (g, j)))
                .map(|(g, j)| self.mul_unchecked(g, &spec.basis(j)))
                .collect();
            let next = subgroup_generated(spec, &products).expect("products are valid elements");
            if next == current || m > spec.log_order() as usize {
                return Err((m, current));
            }
            chain.push(next.clone());
            current = next;
            m += 1;
        }
        Ok(chain)
    }
}

impl fmt::Display for RingStructure {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[")?;
        for (i, row) in self.constants.iter().enumerate() {
            if i > 0 {
                write!(f, "; ")?;
            }
            let cells: Vec<String> = row.iter().map(|c| c.to_string()).collect();
            write!(f, "{}", cells.join(" "))?;
        }
        write!(f, "]")
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Axiom {
    Symmetry,
    WellDefined,
    Associativity,
    Nilpotency,
}

/// One failed ring axiom. `witness` holds basis indices (or, for
/// nilpotency, the exponent `m` with `A^m = A^{m+1} ≠ 0`).
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Violation {
    pub axiom: Axiom,
    pub witness: Vec<usize>,
    pub detail: String,
}

/// Checks commutativity, well-definedness, associativity and nilpotency.
/// Returns every violation found; an empty list means `A` is valid.
pub fn validate(a: &RingStructure) -> Vec<Violation> {
    let spec = &a.spec;
    let k = spec.rank();
    let c = &a.constants;
    let mut out = Vec::new();

    for i in 0..k {
        for j in i + 1..k {
            if c[i][j] != c[j][i] {
                out.push(Violation {
                    axiom: Axiom::Symmetry,
                    witness: vec![i, j],
                    detail: format!("b{i}·b{j} = {} but b{j}·b{i} = {}", c[i][j], c[j][i]),
                });
            }
        }
    }

    for i in 0..k {
        for j in 0..k {
            let e = spec.exponents()[i].min(spec.exponents()[j]);
            let killer = spec.p().pow(e) as i128;
            if !spec.scalar_mul_unchecked(killer, &c[i][j]).is_zero() {
                out.push(Violation {
                    axiom: Axiom::WellDefined,
                    witness: vec![i, j],
                    detail: format!("{killer}·(b{i}·b{j}) = {killer}·{} ≠ 0", c[i][j]),
                });
            }
        }
    }

    for i in 0..k {
        for j in 0..k {
            for l in 0..k {
                if let Some(v) = associativity_failure(a, i, j, l) {
                    out.push(v);
                }
            }
        }
    }

    if let Err((m, stuck)) = a.power_chain() {
        out.push(Violation {
            axiom: Axiom::Nilpotency,
            witness: vec![m],
            detail: format!(
                "A^{m} = A^{} has {} elements (generators {:?}), never reaching 0",
                m + 1,
                stuck.size(),
                stuck
                    .generators()
                    .iter()
                    .map(|g| g.to_string())
                    .collect::<Vec<_>>()
            ),
        });
    }
    out
}

fn associativity_failure(a: &RingStructure, i: usize, j: usize, l: usize) -> Option<Violation> {
    let spec = &a.spec;
    let (bi, bl) = (spec.basis(i), spec.basis(l));
    let lhs = a.mul_unchecked(&a.constants[i][j], &bl);
    let rhs = a.mul_unchecked(&bi, &a.constants[j][l]);
    (lhs != rhs).then(|| Violation {
        axiom: Axiom::Associativity,
        witness: vec![i, j, l],
        detail: format!("(b{i}·b{j})·b{l} = {lhs} but b{i}·(b{j}·b{l}) = {rhs}"),
    })
}

fn require_valid(a: &RingStructure) -> Result<()> {
    match validate(a).first() {
        None => Ok(()),
        Some(v) => Err(Error::InvalidStructure(format!(
            "{:?}: {}",
            v.axiom, v.detail
        ))),
    }
}

/// Least `m` with every `m`-fold product zero.
pub fn nilpotency_index(a: &RingStructure) -> Result<usize> {
    require_valid(a)?;
    let chain = a
        .power_chain()
        .map_err(|(m, _)| Error::InvalidStructure(format!("A^{m} never vanishes")))?;
    // chain = [A^2, …, A^m] with A^m = 0
    Ok(chain.len() + 1)
}

/// An ideal of `A`: an additive subgroup absorbing multiplication by `A`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize)]
#[serde(transparent)]
pub struct Ideal(Subgroup);

impl Ideal {
    pub fn subgroup(&self) -> &Subgroup {
        &self.0
    }

    pub fn into_subgroup(self) -> Subgroup {
        self.0
    }
}

impl std::ops::Deref for Ideal {
    type Target = Subgroup;

    fn deref(&self) -> &Subgroup {
        &self.0
    }
}

/// All ideals of `A` in canonical subgroup order.
///
/// Every ideal is the sum of the principal ideals of its elements, so the
/// lattice is reached by joining principal ideals breadth first.
pub fn ideals(a: &RingStructure, cap: u64) -> Result<Vec<Ideal>> {
    let spec = &a.spec;
    let n = spec.require_enumerable(cap)?;
    let k = spec.rank();
    let basis_idx: Vec<Elem> = (0..k).map(|j| spec.basis(j)).collect();
    let times_basis = |x: usize| -> Vec<usize> {
        let ex = spec.elem_at(x);
        basis_idx
            .iter()
            .map(|b| spec.index_of(&a.mul_unchecked(&ex, b)))
            .collect()
    };

    // S + ⟨y⟩ in place
    let absorb = |bits: &mut BitSet, list: &mut Vec<usize>, y: usize| {
        let snapshot = list.clone();
        let mut m = y;
        while m != 0 {
            for &s in &snapshot {
                let t = spec.add_idx(s, m);
                if bits.insert(t) {
                    list.push(t);
                }
            }
            m = spec.add_idx(m, y);
        }
    };

    let mut principal_seen = HashSet::new();
    let mut principals: Vec<(usize, Vec<usize>)> = Vec::new();
    for x in 1..n {
        let mut bits = BitSet::new(n);
        bits.insert(0);
        let mut list = vec![0];
        let mut gens = Vec::new();
        let mut pending = vec![x];
        while let Some(y) = pending.pop() {
            if bits.contains(y) {
                continue;
            }
            absorb(&mut bits, &mut list, y);
            gens.push(y);
            pending.extend(times_basis(y));
        }
        if principal_seen.insert(bits) {
            principals.push((x, gens));
        }
    }

    let mut zero = BitSet::new(n);
    zero.insert(0);
    let mut seen: HashSet<BitSet> = HashSet::from([zero.clone()]);
    let mut found: Vec<(BitSet, Vec<usize>)> = vec![(zero, vec![0])];
    let mut next = 0;
    while next < found.len() {
        for (rep, gens) in &principals {
            if found[next].0.contains(*rep) {
                continue;
            }
            let (mut bits, mut list) = found[next].clone();
            for &g in gens {
                if !bits.contains(g) {
                    absorb(&mut bits, &mut list, g);
                }
            }
            if seen.insert(bits.clone()) {
                found.push((bits, list));
            }
        }
        next += 1;
    }

    let mut out: Vec<Subgroup> = found
        .into_iter()
        .map(|(_, list)| Subgroup::from_indices(spec, list))
        .collect();
    out.sort_by(Subgroup::canonical_cmp);
    Ok(out.into_iter().map(Ideal).collect())
}

/// The circle group `(G, ∘)` of a valid structure.
#[derive(Clone, Debug)]
pub struct CircleGroup {
    structure: RingStructure,
    invariants: Vec<u32>,
}

impl CircleGroup {
    pub fn structure(&self) -> &RingStructure {
        &self.structure
    }

    /// Abelian invariants of `(G, ∘)`.
    pub fn isomorphism_type(&self) -> &[u32] {
        &self.invariants
    }

    pub fn is_elementary(&self) -> bool {
        self.invariants.iter().all(|&e| e == 1)
    }

    /// The full `∘` table over the canonical element order.
    pub fn table(&self) -> CayleyTable {
        let spec = self.structure.spec();
        CayleyTable::from_fn(spec.elements().collect(), |x, y| self.op(x, y))
    }
}

impl FiniteOperation for CircleGroup {
    fn size(&self) -> usize {
        self.structure.spec.order() as usize
    }

    fn op(&self, x: usize, y: usize) -> usize {
        let spec = &self.structure.spec;
        let z = self
            .structure
            .circle_unchecked(&spec.elem_at(x), &spec.elem_at(y));
        spec.index_of(&z)
    }
}

pub fn circle_group(a: &RingStructure, cap: u64) -> Result<CircleGroup> {
    require_valid(a)?;
    a.spec.require_enumerable(cap)?;
    let mut group = CircleGroup {
        structure: a.clone(),
        invariants: Vec::new(),
    };
    group.invariants = isomorphism_type(&group)?;
    Ok(group)
}

/// `A² = 0`.
pub fn trivial_structure(spec: &GroupSpec) -> RingStructure {
    let k = spec.rank();
    RingStructure {
        spec: spec.clone(),
        constants: vec![vec![spec.zero(); k]; k],
    }
}

/// The algebra `z·F_p[z]/(z^{n+1})` on `F_p^n`, basis index `i` standing
/// for `z^{i+1}`.
pub fn primitive_structure(p: u64, n: u32) -> Result<RingStructure> {
    if n == 0 {
        return Err(Error::InvalidArgument(
            "primitive structure needs n ≥ 1".into(),
        ));
    }
    let spec = GroupSpec::elementary(p, n)?;
    let k = n as usize;
    let constants = (0..k)
        .map(|i| {
            (0..k)
                .map(|j| {
                    if i + j + 2 <= k {
                        spec.basis(i + j + 1)
                    } else {
                        spec.zero()
                    }
                })
                .collect()
        })
        .collect();
    Ok(RingStructure { spec, constants })
}

/// `A_d` on `Z/p^n`: `r·s = r s p d`.
pub fn cyclic_structure(p: u64, n: u32, d: u64) -> Result<RingStructure> {
    if p == 2 {
        return Err(Error::InvalidArgument(
            "the cyclic family is defined for odd p only".into(),
        ));
    }
    let spec = GroupSpec::cyclic(p, n)?;
    let bound = p.pow(n - 1);
    if d >= bound {
        return Err(Error::InvalidArgument(format!(
            "d = {d} must lie in [0, {bound})"
        )));
    }
    let q = spec.moduli()[0];
    let c = ((p as u128 * d as u128) % q as u128) as u64;
    Ok(RingStructure {
        spec,
        constants: vec![vec![Elem(vec![c])]],
    })
}

/// Every valid structure on `spec`, once each, ordered by constants.
///
/// Depth-first over the upper-triangular constants with each entry drawn
/// from the elements killed by `p^{min(e_i, e_j)}`. A basis triple's
/// associativity is tested as soon as every constant it reads is fixed.
pub fn enumerate_structures(spec: &GroupSpec, caps: &Caps) -> Result<Vec<RingStructure>> {
    let k = spec.rank();
    let p = spec.p();
    let exps = spec.exponents();
    let entries: Vec<(usize, usize)> = (0..k).flat_map(|i| (i..k).map(move |j| (i, j))).collect();
    let pos = |i: usize, j: usize| {
        entries
            .iter()
            .position(|&e| e == (i.min(j), i.max(j)))
            .unwrap()
    };

    let mut space: u128 = 1;
    let mut choices: Vec<Vec<Elem>> = Vec::with_capacity(entries.len());
    for &(i, j) in &entries {
        let m = exps[i].min(exps[j]);
        let ranges: Vec<(u64, u64)> = exps
            .iter()
            .map(|&el| {
                let free = el.min(m);
                (p.pow(free), p.pow(el - free))
            })
            .collect();
        let count: u128 = ranges.iter().map(|&(c, _)| c as u128).product();
        space = space.saturating_mul(count);
        if space > caps.search as u128 {
            return Err(Error::CapExceeded {
                what: "structure search space",
                size: space,
                cap: caps.search,
            });
        }
        let mut vals = vec![Vec::new()];
        for &(c, step) in &ranges {
            vals = vals
                .into_iter()
                .flat_map(|prefix: Vec<u64>| {
                    (0..c).map(move |t| {
                        let mut v = prefix.clone();
                        v.push(t * step);
                        v
                    })
                })
                .collect();
        }
        choices.push(vals.into_iter().map(Elem).collect());
    }

    // triples grouped by the deepest entry position they read
    let mut checks: Vec<Vec<(usize, usize, usize)>> = vec![Vec::new(); entries.len()];
    for i in 0..k {
        for j in 0..k {
            for l in 0..k {
                let mut reads = vec![pos(i, j), pos(j, l)];
                reads.extend((0..k).map(|m| pos(m, l)));
                reads.extend((0..k).map(|m| pos(i, m)));
                checks[*reads.iter().max().unwrap()].push((i, j, l));
            }
        }
    }

    let mut work = trivial_structure(spec);
    let mut out = Vec::new();
    dfs(&mut work, 0, &entries, &choices, &checks, &mut out);
    out.sort();
    Ok(out)
}

fn dfs(
    work: &mut RingStructure,
    depth: usize,
    entries: &[(usize, usize)],
    choices: &[Vec<Elem>],
    checks: &[Vec<(usize, usize, usize)>],
    out: &mut Vec<RingStructure>,
) {
    if depth == entries.len() {
        if work.power_chain().is_ok() {
            out.push(work.clone());
        }
        return;
    }
    let (i, j) = entries[depth];
    for v in &choices[depth] {
        work.constants[i][j] = v.clone();
        work.constants[j][i] = v.clone();
        if checks[depth]
            .iter()
            .all(|&(a, b, c)| associativity_failure(work, a, b, c).is_none())
        {
            dfs(work, depth + 1, entries, choices, checks, out);
        }
    }
    let zero = work.spec.zero();
    work.constants[i][j] = zero.clone();
    work.constants[j][i] = zero;
}
