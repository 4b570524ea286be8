//! `Hol(G)` realized as invertible affine maps `x ↦ a + m(x)` on `G`, the
//! embedding `τ(g)(x) = g ∘ x`, and regular subgroups in both directions.

use std::cmp::Ordering;
use std::collections::{HashMap, HashSet, VecDeque};

use serde::ser::SerializeStruct;
use serde::{Serialize, Serializer};

use crate::abelian::{Elem, GroupSpec};
use crate::nilring::{validate, RingStructure};
use crate::util::BitSet;
use crate::{Caps, Error, Result};

/// An element of `Hol(G)`. The linear part is kept as its columns:
/// `columns[j]` is the image of the `j`-th standard generator.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct AffineMap {
    spec: GroupSpec,
    a: Elem,
    columns: Vec<Elem>,
}

impl Serialize for AffineMap {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        let mut st = s.serialize_struct("AffineMap", 2)?;
        st.serialize_field("a", &self.a)?;
        st.serialize_field("m", &self.columns)?;
        st.end()
    }
}

impl PartialOrd for AffineMap {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for AffineMap {
    fn cmp(&self, other: &Self) -> Ordering {
        (&self.a, &self.columns).cmp(&(&other.a, &other.columns))
    }
}

impl AffineMap {
    /// Fails unless every column respects its generator's order and the
    /// linear part is bijective.
    pub fn new(spec: &GroupSpec, a: Elem, columns: Vec<Elem>) -> Result<Self> {
        spec.check(&a)?;
        if columns.len() != spec.rank() {
            return Err(Error::DimensionMismatch {
                expected: spec.rank(),
                found: columns.len(),
            });
        }
        for (j, col) in columns.iter().enumerate() {
            spec.check(col)?;
            if !spec
                .scalar_mul_unchecked(spec.moduli()[j] as i128, col)
                .is_zero()
            {
                return Err(Error::InvalidArgument(format!(
                    "column {j} = {col} is not killed by {}",
                    spec.moduli()[j]
                )));
            }
        }
        let f = AffineMap {
            spec: spec.clone(),
            a,
            columns,
        };
        if !f.linear_part_invertible() {
            return Err(Error::InvalidArgument(
                "linear part is not an automorphism".into(),
            ));
        }
        Ok(f)
    }

    pub fn identity(spec: &GroupSpec) -> Self {
        AffineMap {
            spec: spec.clone(),
            a: spec.zero(),
            columns: (0..spec.rank()).map(|j| spec.basis(j)).collect(),
        }
    }

    /// `x ↦ a + x`.
    pub fn translation(spec: &GroupSpec, a: Elem) -> Result<Self> {
        spec.check(&a)?;
        Ok(AffineMap {
            a,
            ..AffineMap::identity(spec)
        })
    }

    pub fn spec(&self) -> &GroupSpec {
        &self.spec
    }

    /// Translation part, which is also the image of `0`.
    pub fn translation_part(&self) -> &Elem {
        &self.a
    }

    pub fn columns(&self) -> &[Elem] {
        &self.columns
    }

    pub fn is_translation(&self) -> bool {
        (0..self.spec.rank()).all(|j| self.columns[j] == self.spec.basis(j))
    }

    pub fn is_identity(&self) -> bool {
        self.a.is_zero() && self.is_translation()
    }

    pub fn apply(&self, x: &Elem) -> Result<Elem> {
        self.spec.check(x)?;
        Ok(self.apply_unchecked(x))
    }

    pub(crate) fn linear_unchecked(&self, x: &Elem) -> Elem {
        let mut acc = self.spec.zero();
        for (&c, col) in x.0.iter().zip(&self.columns) {
            if c != 0 {
                acc = self
                    .spec
                    .add_unchecked(&acc, &self.spec.scalar_mul_unchecked(c as i128, col));
            }
        }
        acc
    }

    pub(crate) fn apply_unchecked(&self, x: &Elem) -> Elem {
        self.spec.add_unchecked(&self.a, &self.linear_unchecked(x))
    }

    /// `(self ∘ other)(x) = self(other(x))`.
    pub fn compose(&self, other: &AffineMap) -> Result<AffineMap> {
        if self.spec != other.spec {
            return Err(Error::SpecMismatch(format!(
                "cannot compose maps on {} and {}",
                self.spec, other.spec
            )));
        }
        Ok(self.compose_unchecked(other))
    }

    fn compose_unchecked(&self, other: &AffineMap) -> AffineMap {
        AffineMap {
            spec: self.spec.clone(),
            a: self.apply_unchecked(&other.a),
            columns: other
                .columns
                .iter()
                .map(|c| self.linear_unchecked(c))
                .collect(),
        }
    }

    /// Inverse as the last power before the identity.
    pub fn inverse(&self) -> AffineMap {
        let mut prev = AffineMap::identity(&self.spec);
        let mut cur = self.clone();
        while !cur.is_identity() {
            prev = cur.clone();
            cur = cur.compose_unchecked(self);
        }
        prev
    }

    /// Number of `x` with `f(x) = x`.
    pub fn fixed_point_count(&self, cap: u64) -> Result<usize> {
        self.spec.require_enumerable(cap)?;
        Ok(self
            .spec
            .elements()
            .filter(|x| &self.apply_unchecked(x) == x)
            .count())
    }

    /// The map as a permutation of element indices.
    pub fn to_permutation(&self) -> Vec<usize> {
        self.spec
            .elements()
            .map(|x| self.spec.index_of(&self.apply_unchecked(&x)))
            .collect()
    }

    /// An endomorphism of a finite p-group is onto iff it is onto modulo the
    /// Frattini subgroup `pG`, i.e. iff its reduction mod `p` is invertible
    /// over `F_p`.
    fn linear_part_invertible(&self) -> bool {
        let p = self.spec.p();
        let k = self.spec.rank();
        // rows of the transpose are fine: rank is what matters
        let mut rows: Vec<Vec<u64>> = self
            .columns
            .iter()
            .map(|c| c.0.iter().map(|&x| x % p).collect())
            .collect();
        for col in 0..k {
            let Some(pivot) = (col..k).find(|&r| rows[r][col] != 0) else {
                return false;
            };
            rows.swap(col, pivot);
            let inv = mod_inverse(rows[col][col], p);
            for r in 0..k {
                if r != col && rows[r][col] != 0 {
                    let factor = rows[r][col] * inv % p;
                    for c in 0..k {
                        let sub = factor * rows[col][c] % p;
                        rows[r][c] = (rows[r][c] + p - sub) % p;
                    }
                }
            }
        }
        true
    }
}

fn mod_inverse(x: u64, p: u64) -> u64 {
    // p is prime and small
    (1..p)
        .find(|&y| x * y % p == 1)
        .expect("nonzero residue mod a prime")
}

/// `τ(g)`: translation by `g`, linear part `x ↦ x + g·x`.
pub fn tau(a: &RingStructure, g: &Elem) -> Result<AffineMap> {
    let spec = a.spec();
    spec.check(g)?;
    let columns = (0..spec.rank())
        .map(|j| {
            let b = spec.basis(j);
            spec.add_unchecked(&b, &a.mul_unchecked(g, &b))
        })
        .collect();
    AffineMap::new(spec, g.clone(), columns)
        .map_err(|_| Error::InvalidStructure(format!("τ({g}) has a non-invertible linear part")))
}

/// A regular subgroup of `Hol(G)`, elements sorted by `(a, m)`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct RegularSubgroup {
    spec: GroupSpec,
    elements: Vec<AffineMap>,
}

impl Serialize for RegularSubgroup {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        self.elements.serialize(s)
    }
}

impl RegularSubgroup {
    pub fn new(spec: &GroupSpec, mut elements: Vec<AffineMap>) -> Result<Self> {
        elements.sort();
        elements.dedup();
        if !is_regular(spec, &elements)? {
            return Err(Error::InvalidArgument(
                "maps do not form a regular subgroup".into(),
            ));
        }
        Ok(RegularSubgroup {
            spec: spec.clone(),
            elements,
        })
    }

    pub fn spec(&self) -> &GroupSpec {
        &self.spec
    }

    pub fn elements(&self) -> &[AffineMap] {
        &self.elements
    }

    pub fn size(&self) -> usize {
        self.elements.len()
    }

    /// The unique element sending `0` to `g`.
    pub fn element_at(&self, g: &Elem) -> Option<&AffineMap> {
        self.elements
            .binary_search_by(|t| t.a.cmp(g))
            .ok()
            .map(|i| &self.elements[i])
    }

    pub fn is_abelian(&self) -> bool {
        self.elements.iter().enumerate().all(|(i, f)| {
            self.elements[i + 1..]
                .iter()
                .all(|g| f.compose_unchecked(g) == g.compose_unchecked(f))
        })
    }
}

fn check_closed<'a>(spec: &GroupSpec, maps: &'a [AffineMap]) -> Result<HashSet<&'a AffineMap>> {
    if maps.iter().any(|f| f.spec != *spec) {
        return Err(Error::SpecMismatch(
            "map defined on a different group".into(),
        ));
    }
    let set: HashSet<&AffineMap> = maps.iter().collect();
    for f in maps {
        for g in maps {
            if !set.contains(&f.compose_unchecked(g)) {
                return Err(Error::InvalidArgument(
                    "maps are not closed under composition".into(),
                ));
            }
        }
    }
    Ok(set)
}

/// Regularity by the transitive-plus-order criterion: `|T| = |G|` and the
/// orbit of `0` is all of `G`.
pub fn is_regular(spec: &GroupSpec, maps: &[AffineMap]) -> Result<bool> {
    let set = check_closed(spec, maps)?;
    if set.len() as u64 != spec.order() {
        return Ok(false);
    }
    let orbit: HashSet<&Elem> = set.iter().map(|t| &t.a).collect();
    Ok(orbit.len() == set.len())
}

/// Regularity by the semiregular criterion: `|T| = |G|` and no non-identity
/// element fixes a point.
pub fn is_regular_by_fixed_points(spec: &GroupSpec, maps: &[AffineMap], cap: u64) -> Result<bool> {
    let set = check_closed(spec, maps)?;
    if set.len() as u64 != spec.order() {
        return Ok(false);
    }
    for t in set {
        if !t.is_identity() && t.fixed_point_count(cap)? > 0 {
            return Ok(false);
        }
    }
    Ok(true)
}

/// `T = τ(G, ∘)`.
pub fn regular_subgroup_from_ring(a: &RingStructure, cap: u64) -> Result<RegularSubgroup> {
    if let Some(v) = validate(a).first() {
        return Err(Error::InvalidStructure(format!(
            "{:?}: {}",
            v.axiom, v.detail
        )));
    }
    let spec = a.spec();
    spec.require_enumerable(cap)?;
    let maps = spec
        .elements()
        .map(|g| tau(a, &g))
        .collect::<Result<Vec<_>>>()?;
    RegularSubgroup::new(spec, maps)
}

/// Recovers `A` from `T` via `g·h = t_g(h) − g − h`, where `t_g` is the
/// element of `T` sending `0` to `g`.
pub fn ring_from_regular_subgroup(t: &RegularSubgroup, cap: u64) -> Result<RingStructure> {
    if !t.is_abelian() {
        return Err(Error::NonAbelianRegularSubgroup);
    }
    let spec = &t.spec;
    let k = spec.rank();
    let product = |g: &Elem, h: &Elem| -> Elem {
        let tg = t.element_at(g).expect("regular subgroup covers G");
        let s = spec.add_unchecked(g, h);
        spec.add_unchecked(&tg.apply_unchecked(h), &spec.neg_unchecked(&s))
    };
    let constants = (0..k)
        .map(|i| {
            (0..k)
                .map(|j| product(&spec.basis(i), &spec.basis(j)))
                .collect()
        })
        .collect();
    let a = RingStructure::new(spec.clone(), constants)?;
    let violations = validate(&a);
    if !violations.is_empty() {
        return Err(Error::violation(
            "regular subgroup to nilpotent ring",
            serde_json::json!({ "structure": &a, "violations": violations }),
        ));
    }
    let back = regular_subgroup_from_ring(&a, cap)?;
    if back != *t {
        return Err(Error::violation(
            "regular subgroup to nilpotent ring",
            serde_json::json!({ "structure": &a, "detail": "τ(A) differs from T" }),
        ));
    }
    Ok(a)
}

/// All of `Hol(G)`: every translation composed with every automorphism,
/// sorted by `(a, m)`.
pub fn holomorph_elements(spec: &GroupSpec, caps: &Caps) -> Result<Vec<AffineMap>> {
    let n = spec.require_enumerable(caps.enumeration)?;
    let k = spec.rank();
    let candidates: Vec<Vec<Elem>> = (0..k)
        .map(|j| {
            let q = spec.moduli()[j] as i128;
            spec.elements()
                .filter(|x| spec.scalar_mul_unchecked(q, x).is_zero())
                .collect()
        })
        .collect();
    let raw: u128 = candidates.iter().map(|c| c.len() as u128).product();
    if raw > caps.search as u128 {
        return Err(Error::CapExceeded {
            what: "endomorphism candidates",
            size: raw,
            cap: caps.search,
        });
    }
    let mut autos: Vec<Vec<Elem>> = vec![Vec::new()];
    for cand in &candidates {
        autos = autos
            .into_iter()
            .flat_map(|prefix| {
                cand.iter().map(move |c| {
                    let mut v = prefix.clone();
                    v.push(c.clone());
                    v
                })
            })
            .collect();
    }
    let autos: Vec<AffineMap> = autos
        .into_iter()
        .filter_map(|cols| AffineMap::new(spec, spec.zero(), cols).ok())
        .collect();
    let order = n as u128 * autos.len() as u128;
    if order > caps.holomorph as u128 {
        return Err(Error::CapExceeded {
            what: "holomorph order",
            size: order,
            cap: caps.holomorph,
        });
    }
    let mut out: Vec<AffineMap> = spec
        .elements()
        .flat_map(|a| {
            autos.iter().map(move |m| AffineMap {
                a: a.clone(),
                ..m.clone()
            })
        })
        .collect();
    out.sort();
    Ok(out)
}

/// Every regular subgroup of `Hol(G)`, found by closing sets of
/// fixed-point-free elements breadth first and keeping the closures of
/// order `|G|`. Sorted by element list.
pub fn enumerate_regular_subgroups(spec: &GroupSpec, caps: &Caps) -> Result<Vec<RegularSubgroup>> {
    let hol = holomorph_elements(spec, caps)?;
    let n = spec.order() as usize;
    let h = hol.len();
    let perms: Vec<Vec<usize>> = hol.iter().map(AffineMap::to_permutation).collect();
    let lookup: HashMap<&[usize], usize> = perms
        .iter()
        .enumerate()
        .map(|(i, p)| (p.as_slice(), i))
        .collect();
    // mul[x*h + y] = index of hol[x] ∘ hol[y]
    let mul: Vec<u32> = (0..h * h)
        .map(|xy| {
            let (x, y) = (xy / h, xy % h);
            let comp: Vec<usize> = perms[y].iter().map(|&i| perms[x][i]).collect();
            lookup[comp.as_slice()] as u32
        })
        .collect();
    let identity = lookup[(0..n).collect::<Vec<_>>().as_slice()];
    let fixed_point_free: Vec<bool> = perms
        .iter()
        .map(|p| p.iter().enumerate().all(|(i, &j)| i != j))
        .collect();
    let fpf: Vec<usize> = (0..h).filter(|&i| fixed_point_free[i]).collect();

    // closes `base` together with `gens`; None if it leaves the semiregular elements or exceeds |G|
    let close = |base: &[usize], gens: &[usize]| -> Option<(BitSet, Vec<usize>)> {
        let mut bits = BitSet::new(h);
        let mut list = Vec::new();
        for &x in base {
            bits.insert(x);
            list.push(x);
        }
        let mut i = 0;
        while i < list.len() {
            let x = list[i];
            for &g in gens {
                let y = mul[x * h + g] as usize;
                if bits.insert(y) {
                    if y != identity && !fixed_point_free[y] || list.len() >= n {
                        return None;
                    }
                    list.push(y);
                }
            }
            i += 1;
        }
        Some((bits, list))
    };

    let mut start = BitSet::new(h);
    start.insert(identity);
    let mut seen: HashSet<BitSet> = HashSet::from([start]);
    let mut queue: VecDeque<(Vec<usize>, Vec<usize>)> =
        VecDeque::from([(vec![identity], Vec::new())]);
    let mut regular: Vec<Vec<usize>> = Vec::new();
    while let Some((elems, gens)) = queue.pop_front() {
        for &f in &fpf {
            if elems.contains(&f) {
                continue;
            }
            let mut g2 = gens.clone();
            g2.push(f);
            let Some((bits, list)) = close(&elems, &g2) else {
                continue;
            };
            if !seen.insert(bits) {
                continue;
            }
            if list.len() == n {
                regular.push(list);
            } else if n.is_multiple_of(list.len()) {
                queue.push_back((list, g2));
            }
        }
    }

    let mut out: Vec<RegularSubgroup> = regular
        .into_iter()
        .map(|list| {
            let mut elements: Vec<AffineMap> = list.into_iter().map(|i| hol[i].clone()).collect();
            elements.sort();
            RegularSubgroup {
                spec: spec.clone(),
                elements,
            }
        })
        .collect();
    out.sort_by(|x, y| x.elements.cmp(&y.elements));
    Ok(out)
}
