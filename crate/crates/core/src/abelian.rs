//! Finite abelian p-groups presented as direct sums of cyclic p-power groups.
//!
//! Elements are dense residue vectors. The canonical element order is
//! lexicographic on coordinates, which coincides with the mixed-radix index
//! returned by [`GroupSpec::index_of`] (first coordinate most significant).

use std::collections::{HashSet, VecDeque};
use std::fmt;

use serde::ser::SerializeStruct;
use serde::{Deserialize, Serialize, Serializer};

use crate::util::{is_prime, log_exact, BitSet};
use crate::{Error, Result};

/// `C_{p^e_1} ⊕ … ⊕ C_{p^e_k}` with `e_1 ≥ … ≥ e_k ≥ 1`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(try_from = "SpecRepr", into = "SpecRepr")]
pub struct GroupSpec {
    p: u64,
    exponents: Vec<u32>,
    moduli: Vec<u64>,
    order: u64,
}

#[derive(Serialize, Deserialize)]
struct SpecRepr {
    p: u64,
    exponents: Vec<u32>,
}

impl TryFrom<SpecRepr> for GroupSpec {
    type Error = Error;

    fn try_from(r: SpecRepr) -> Result<Self> {
        GroupSpec::new(r.p, r.exponents)
    }
}

impl From<GroupSpec> for SpecRepr {
    fn from(s: GroupSpec) -> Self {
        SpecRepr {
            p: s.p,
            exponents: s.exponents,
        }
    }
}

impl GroupSpec {
    pub fn new(p: u64, exponents: Vec<u32>) -> Result<Self> {
        if !is_prime(p) {
            return Err(Error::InvalidSpec(format!("{p} is not prime")));
        }
        if exponents.is_empty() {
            return Err(Error::InvalidSpec(
                "at least one cyclic factor is required".into(),
            ));
        }
        if exponents.contains(&0) {
            return Err(Error::InvalidSpec("exponents must be positive".into()));
        }
        if exponents.windows(2).any(|w| w[0] < w[1]) {
            return Err(Error::InvalidSpec(format!(
                "exponents {exponents:?} must be nonincreasing"
            )));
        }
        let overflow = || Error::InvalidSpec("group order does not fit in 64 bits".into());
        let moduli = exponents
            .iter()
            .map(|&e| p.checked_pow(e).ok_or_else(overflow))
            .collect::<Result<Vec<_>>>()?;
        let order = moduli
            .iter()
            .try_fold(1u64, |acc, &q| acc.checked_mul(q))
            .ok_or_else(overflow)?;
        Ok(GroupSpec {
            p,
            exponents,
            moduli,
            order,
        })
    }

    /// Elementary abelian group `C_p^n`.
    pub fn elementary(p: u64, n: u32) -> Result<Self> {
        GroupSpec::new(p, vec![1; n as usize])
    }

    /// Cyclic group `Z/p^n`.
    pub fn cyclic(p: u64, n: u32) -> Result<Self> {
        GroupSpec::new(p, vec![n])
    }

    pub fn p(&self) -> u64 {
        self.p
    }

    pub fn exponents(&self) -> &[u32] {
        &self.exponents
    }

    /// Orders `p^e_i` of the cyclic factors.
    pub fn moduli(&self) -> &[u64] {
        &self.moduli
    }

    /// Number of cyclic factors.
    pub fn rank(&self) -> usize {
        self.exponents.len()
    }

    pub fn order(&self) -> u64 {
        self.order
    }

    /// `n` with `|G| = p^n`.
    pub fn log_order(&self) -> u32 {
        self.exponents.iter().sum()
    }

    pub fn is_elementary(&self) -> bool {
        self.exponents.iter().all(|&e| e == 1)
    }

    pub fn zero(&self) -> Elem {
        Elem(vec![0; self.rank()])
    }

    /// The `i`-th standard generator.
    pub fn basis(&self, i: usize) -> Elem {
        let mut c = vec![0; self.rank()];
        c[i] = 1 % self.moduli[i];
        Elem(c)
    }

    pub fn check(&self, a: &Elem) -> Result<()> {
        if a.0.len() != self.rank() {
            return Err(Error::DimensionMismatch {
                expected: self.rank(),
                found: a.0.len(),
            });
        }
        for (coord, (&c, &q)) in a.0.iter().zip(&self.moduli).enumerate() {
            if c >= q {
                return Err(Error::InvalidElement {
                    elem: a.0.clone(),
                    coord,
                    modulus: q,
                });
            }
        }
        Ok(())
    }

    pub fn contains(&self, a: &Elem) -> bool {
        self.check(a).is_ok()
    }

    /// Fails with [`Error::CapExceeded`] unless the group may be enumerated.
    pub fn require_enumerable(&self, cap: u64) -> Result<usize> {
        if self.order > cap || usize::try_from(self.order).is_err() {
            return Err(Error::CapExceeded {
                what: "group order",
                size: self.order as u128,
                cap,
            });
        }
        Ok(self.order as usize)
    }

    pub fn add(&self, a: &Elem, b: &Elem) -> Result<Elem> {
        self.check(a)?;
        self.check(b)?;
        Ok(self.add_unchecked(a, b))
    }

    pub fn neg(&self, a: &Elem) -> Result<Elem> {
        self.check(a)?;
        Ok(self.neg_unchecked(a))
    }

    pub fn sub(&self, a: &Elem, b: &Elem) -> Result<Elem> {
        self.check(a)?;
        self.check(b)?;
        Ok(self.add_unchecked(a, &self.neg_unchecked(b)))
    }

    pub fn scalar_mul(&self, m: i64, a: &Elem) -> Result<Elem> {
        self.check(a)?;
        Ok(self.scalar_mul_unchecked(m as i128, a))
    }

    /// Least `m ≥ 1` with `m·a = 0`; always a power of `p`.
    pub fn order_of(&self, a: &Elem) -> Result<u64> {
        self.check(a)?;
        let mut ord = 1;
        let mut x = a.clone();
        while !x.is_zero() {
            x = self.scalar_mul_unchecked(self.p as i128, &x);
            ord *= self.p;
        }
        Ok(ord)
    }

    pub(crate) fn add_unchecked(&self, a: &Elem, b: &Elem) -> Elem {
        Elem(
            a.0.iter()
                .zip(&b.0)
                .zip(&self.moduli)
                .map(|((&x, &y), &q)| ((x as u128 + y as u128) % q as u128) as u64)
                .collect(),
        )
    }

    pub(crate) fn neg_unchecked(&self, a: &Elem) -> Elem {
        Elem(
            a.0.iter()
                .zip(&self.moduli)
                .map(|(&x, &q)| if x == 0 { 0 } else { q - x })
                .collect(),
        )
    }

    pub(crate) fn scalar_mul_unchecked(&self, m: i128, a: &Elem) -> Elem {
        Elem(
            a.0.iter()
                .zip(&self.moduli)
                .map(|(&x, &q)| (x as i128 * m).rem_euclid(q as i128) as u64)
                .collect(),
        )
    }

    /// Mixed-radix index of `a`; agrees with lexicographic order.
    pub fn index_of(&self, a: &Elem) -> usize {
        a.0.iter()
            .zip(&self.moduli)
            .fold(0usize, |acc, (&c, &q)| acc * q as usize + c as usize)
    }

    pub fn elem_at(&self, mut idx: usize) -> Elem {
        let mut c = vec![0; self.rank()];
        for (slot, &q) in c.iter_mut().zip(&self.moduli).rev() {
            *slot = (idx % q as usize) as u64;
            idx /= q as usize;
        }
        Elem(c)
    }

    /// All elements in canonical order. Callers must check the enumeration cap.
    pub fn elements(&self) -> impl Iterator<Item = Elem> + '_ {
        (0..self.order as usize).map(move |i| self.elem_at(i))
    }

    pub(crate) fn add_idx(&self, mut i: usize, mut j: usize) -> usize {
        let mut out = 0;
        let mut stride = 1;
        for &q in self.moduli.iter().rev() {
            let q = q as usize;
            let d = (i % q + j % q) % q;
            out += d * stride;
            stride *= q;
            i /= q;
            j /= q;
        }
        out
    }
}

impl fmt::Display for GroupSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.moduli.iter().map(|q| format!("C{q}")).collect();
        f.write_str(&parts.join("×"))
    }
}

/// A group element: one residue per cyclic factor.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(transparent)]
pub struct Elem(pub Vec<u64>);

impl Elem {
    pub fn coords(&self) -> &[u64] {
        &self.0
    }

    pub fn is_zero(&self) -> bool {
        self.0.iter().all(|&c| c == 0)
    }
}

impl From<Vec<u64>> for Elem {
    fn from(v: Vec<u64>) -> Self {
        Elem(v)
    }
}

impl fmt::Display for Elem {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "(")?;
        for (i, c) in self.0.iter().enumerate() {
            if i > 0 {
                write!(f, ",")?;
            }
            write!(f, "{c}")?;
        }
        write!(f, ")")
    }
}

/// An additive subgroup with its canonical element list and a minimal
/// generating list.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Subgroup {
    spec: GroupSpec,
    elements: Vec<Elem>,
    generators: Vec<Elem>,
}

impl Serialize for Subgroup {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        let mut st = s.serialize_struct("Subgroup", 2)?;
        st.serialize_field("generators", &self.generators)?;
        st.serialize_field("size", &self.elements.len())?;
        st.end()
    }
}

impl Subgroup {
    /// Builds a subgroup from a sorted, deduplicated element list that the
    /// caller knows to be closed.
    pub(crate) fn from_sorted(spec: &GroupSpec, elements: Vec<Elem>) -> Self {
        debug_assert!(elements.windows(2).all(|w| w[0] < w[1]));
        let generators = minimal_generators(spec, &elements);
        Subgroup {
            spec: spec.clone(),
            elements,
            generators,
        }
    }

    pub(crate) fn from_indices(spec: &GroupSpec, mut indices: Vec<usize>) -> Self {
        indices.sort_unstable();
        indices.dedup();
        let elements = indices.into_iter().map(|i| spec.elem_at(i)).collect();
        Subgroup::from_sorted(spec, elements)
    }

    pub fn spec(&self) -> &GroupSpec {
        &self.spec
    }

    /// Elements in canonical (lexicographic) order.
    pub fn elements(&self) -> &[Elem] {
        &self.elements
    }

    pub fn generators(&self) -> &[Elem] {
        &self.generators
    }

    pub fn size(&self) -> usize {
        self.elements.len()
    }

    pub fn contains(&self, a: &Elem) -> bool {
        self.elements.binary_search(a).is_ok()
    }

    pub fn is_subset_of(&self, other: &Subgroup) -> bool {
        self.elements.iter().all(|e| other.contains(e))
    }

    /// `J + K`.
    pub fn join(&self, other: &Subgroup) -> Subgroup {
        let mut set: Vec<Elem> = self
            .elements
            .iter()
            .flat_map(|a| other.elements.iter().map(move |b| (a, b)))
            .map(|(a, b)| self.spec.add_unchecked(a, b))
            .collect::<HashSet<_>>()
            .into_iter()
            .collect();
        set.sort();
        Subgroup::from_sorted(&self.spec, set)
    }

    /// `J ∩ K`.
    pub fn meet(&self, other: &Subgroup) -> Subgroup {
        let set = self
            .elements
            .iter()
            .filter(|e| other.contains(e))
            .cloned()
            .collect();
        Subgroup::from_sorted(&self.spec, set)
    }

    /// Canonical order: by size, then by element list.
    pub fn canonical_cmp(&self, other: &Subgroup) -> std::cmp::Ordering {
        self.size()
            .cmp(&other.size())
            .then_with(|| self.elements.cmp(&other.elements))
    }
}

/// Adds `x` to the span: returns `S + ⟨x⟩`.
fn extend_span(spec: &GroupSpec, span: &HashSet<Elem>, x: &Elem) -> HashSet<Elem> {
    let mut multiples = vec![spec.zero()];
    let mut m = x.clone();
    while !m.is_zero() {
        multiples.push(m.clone());
        m = spec.add_unchecked(&m, x);
    }
    span.iter()
        .flat_map(|s| multiples.iter().map(move |k| spec.add_unchecked(s, k)))
        .collect()
}

/// Greedy lift of a basis of `J / pJ`. By the Burnside basis theorem the
/// result generates `J` and has the minimum possible size.
fn minimal_generators(spec: &GroupSpec, elements: &[Elem]) -> Vec<Elem> {
    let mut span: HashSet<Elem> = elements
        .iter()
        .map(|x| spec.scalar_mul_unchecked(spec.p as i128, x))
        .collect();
    let mut gens = Vec::new();
    for x in elements {
        if span.len() == elements.len() {
            break;
        }
        if !span.contains(x) {
            span = extend_span(spec, &span, x);
            gens.push(x.clone());
        }
    }
    gens
}

/// Closure of `gens` under addition and negation.
pub fn subgroup_generated(spec: &GroupSpec, gens: &[Elem]) -> Result<Subgroup> {
    let mut span: HashSet<Elem> = HashSet::from([spec.zero()]);
    for g in gens {
        spec.check(g)?;
        if !span.contains(g) {
            span = extend_span(spec, &span, g);
        }
    }
    let mut elements: Vec<Elem> = span.into_iter().collect();
    elements.sort();
    Ok(Subgroup::from_sorted(spec, elements))
}

/// Every additive subgroup of `spec`, each once, in canonical order.
///
/// Breadth-first: each subgroup found is joined with every cyclic subgroup it
/// does not contain, deduplicating by element bitset.
pub fn enumerate_subgroups(spec: &GroupSpec, cap: u64) -> Result<Vec<Subgroup>> {
    let n = spec.require_enumerable(cap)?;

    let mut cyclic_seen = HashSet::new();
    let mut cyclics: Vec<(usize, Vec<usize>)> = Vec::new();
    for x in 1..n {
        let mut members = vec![0];
        let mut bits = BitSet::new(n);
        bits.insert(0);
        let mut m = x;
        while m != 0 {
            bits.insert(m);
            members.push(m);
            m = spec.add_idx(m, x);
        }
        if cyclic_seen.insert(bits) {
            cyclics.push((x, members));
        }
    }

    let mut trivial = BitSet::new(n);
    trivial.insert(0);
    let mut seen: HashSet<BitSet> = HashSet::from([trivial.clone()]);
    let mut found: Vec<(BitSet, Vec<usize>)> = vec![(trivial, vec![0])];
    let mut queue = VecDeque::from([0usize]);

    while let Some(at) = queue.pop_front() {
        for (rep, members) in &cyclics {
            let (bits, list) = &found[at];
            if bits.contains(*rep) {
                continue;
            }
            let mut nb = BitSet::new(n);
            let mut nl = Vec::with_capacity(list.len() * members.len());
            for &h in list {
                for &c in members {
                    let s = spec.add_idx(h, c);
                    if nb.insert(s) {
                        nl.push(s);
                    }
                }
            }
            if seen.insert(nb.clone()) {
                found.push((nb, nl));
                queue.push_back(found.len() - 1);
            }
        }
    }

    let mut subgroups: Vec<Subgroup> = found
        .into_iter()
        .map(|(_, list)| Subgroup::from_indices(spec, list))
        .collect();
    subgroups.sort_by(Subgroup::canonical_cmp);
    Ok(subgroups)
}

/// A finite binary operation on the index set `0..size()`.
pub trait FiniteOperation {
    fn size(&self) -> usize;
    fn op(&self, a: usize, b: usize) -> usize;
}

impl FiniteOperation for GroupSpec {
    fn size(&self) -> usize {
        self.order as usize
    }

    fn op(&self, a: usize, b: usize) -> usize {
        self.add_idx(a, b)
    }
}

/// A labelled multiplication table.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CayleyTable {
    elements: Vec<Elem>,
    products: Vec<u32>,
}

impl CayleyTable {
    pub fn new(elements: Vec<Elem>, products: Vec<u32>) -> Result<Self> {
        let n = elements.len();
        if products.len() != n * n {
            return Err(Error::NotAGroup(format!(
                "table has {} entries, expected {}",
                products.len(),
                n * n
            )));
        }
        Ok(CayleyTable { elements, products })
    }

    pub fn from_fn(elements: Vec<Elem>, f: impl Fn(usize, usize) -> usize) -> Self {
        let n = elements.len();
        let products = (0..n * n).map(|ij| f(ij / n, ij % n) as u32).collect();
        CayleyTable { elements, products }
    }

    pub fn elements(&self) -> &[Elem] {
        &self.elements
    }

    pub fn product(&self, a: usize, b: usize) -> usize {
        self.products[a * self.elements.len() + b] as usize
    }
}

impl FiniteOperation for CayleyTable {
    fn size(&self) -> usize {
        self.elements.len()
    }

    fn op(&self, a: usize, b: usize) -> usize {
        self.product(a, b)
    }
}

/// Abelian invariants `e'_1 ≥ e'_2 ≥ …` of a finite abelian p-group given by
/// its operation, read off the sizes of the layers `p^k·G`.
pub fn isomorphism_type<T: FiniteOperation + ?Sized>(g: &T) -> Result<Vec<u32>> {
    let n = g.size();
    if n == 0 {
        return Err(Error::NotAGroup("empty table".into()));
    }
    for a in 0..n {
        for b in 0..n {
            if g.op(a, b) >= n {
                return Err(Error::NotAGroup(format!("{a}*{b} leaves the set")));
            }
        }
    }
    let e = (0..n)
        .find(|&e| (0..n).all(|x| g.op(e, x) == x && g.op(x, e) == x))
        .ok_or_else(|| Error::NotAGroup("no identity element".into()))?;
    for x in 0..n {
        if !(0..n).any(|y| g.op(x, y) == e) {
            return Err(Error::NotAGroup(format!("element {x} has no inverse")));
        }
        for y in x + 1..n {
            if g.op(x, y) != g.op(y, x) {
                return Err(Error::NotAGroup(format!("{x} and {y} do not commute")));
            }
        }
    }
    if n == 1 {
        return Ok(Vec::new());
    }
    let p = (2..=n as u64)
        .find(|d| (n as u64).is_multiple_of(*d))
        .unwrap();
    log_exact(p, n as u64)
        .ok_or_else(|| Error::NotAGroup(format!("order {n} is not a prime power")))?;

    let power = |x: usize| (0..p).fold(e, |acc, _| g.op(acc, x));
    let mut layer: Vec<usize> = (0..n).collect();
    // ranks[k] = number of invariants exceeding k
    let mut ranks = Vec::new();
    while layer.len() > 1 {
        let mut next: Vec<usize> = layer.iter().map(|&x| power(x)).collect();
        next.sort_unstable();
        next.dedup();
        let quotient = (layer.len() / next.len()) as u64;
        let r = log_exact(p, quotient)
            .filter(|_| layer.len().is_multiple_of(next.len()) && quotient > 1)
            .ok_or_else(|| Error::NotAGroup("p-power layers are inconsistent".into()))?;
        ranks.push(r);
        layer = next;
    }
    let count = ranks[0];
    Ok((1..=count)
        .map(|i| ranks.iter().filter(|&&r| r >= i).count() as u32)
        .collect())
}
