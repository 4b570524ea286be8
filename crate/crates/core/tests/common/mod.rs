//! Brute-force oracles for the integration tests.
//!
//! Everything here works on plain index tables built from residues and raw
//! structure constants. No library search routine is called.

#![allow(dead_code)]

use std::collections::{BTreeSet, HashMap, HashSet};

use hopf_nilring::{Elem, GroupSpec, RingStructure, Subgroup};

/// A finite ring on `Z/m_1 × … × Z/m_k` as full addition and multiplication
/// tables over element indices. Index 0 is the zero element.
pub struct Oracle {
    pub moduli: Vec<u64>,
    pub elems: Vec<Vec<u64>>,
    pub add: Vec<Vec<usize>>,
    pub mul: Vec<Vec<usize>>,
    index: HashMap<Vec<u64>, usize>,
}

pub fn all_vectors(moduli: &[u64]) -> Vec<Vec<u64>> {
    let mut out = vec![vec![]];
    for &m in moduli {
        out = out
            .into_iter()
            .flat_map(|v| {
                (0..m).map(move |x| {
                    let mut w = v.clone();
                    w.push(x);
                    w
                })
            })
            .collect();
    }
    out
}

impl Oracle {
    /// `constants[i][j]` is the product of generators `i` and `j`.
    pub fn new(moduli: &[u64], constants: &[Vec<Vec<u64>>]) -> Self {
        let elems = all_vectors(moduli);
        let index: HashMap<Vec<u64>, usize> = elems
            .iter()
            .cloned()
            .enumerate()
            .map(|(i, v)| (v, i))
            .collect();
        let k = moduli.len();
        let add = elems
            .iter()
            .map(|x| {
                elems
                    .iter()
                    .map(|y| {
                        let s: Vec<u64> = (0..k).map(|l| (x[l] + y[l]) % moduli[l]).collect();
                        index[&s]
                    })
                    .collect()
            })
            .collect();
        let mul = elems
            .iter()
            .map(|x| {
                elems
                    .iter()
                    .map(|y| {
                        let mut s = vec![0u64; k];
                        for i in 0..k {
                            for j in 0..k {
                                for l in 0..k {
                                    let q = moduli[l] as u128;
                                    let t = x[i] as u128 * y[j] as u128 % q
                                        * constants[i][j][l] as u128;
                                    s[l] = ((s[l] as u128 + t) % q) as u64;
                                }
                            }
                        }
                        index[&s]
                    })
                    .collect()
            })
            .collect();
        Oracle {
            moduli: moduli.to_vec(),
            elems,
            add,
            mul,
            index,
        }
    }

    pub fn from_ring(a: &RingStructure) -> Self {
        let constants: Vec<Vec<Vec<u64>>> = a
            .constants()
            .iter()
            .map(|row| row.iter().map(|c| c.coords().to_vec()).collect())
            .collect();
        Oracle::new(a.spec().moduli(), &constants)
    }

    pub fn len(&self) -> usize {
        self.elems.len()
    }

    pub fn idx(&self, v: &[u64]) -> usize {
        self.index[v]
    }

    pub fn neg(&self, x: usize) -> usize {
        (0..self.len()).find(|&y| self.add[x][y] == 0).unwrap()
    }

    pub fn circle(&self, x: usize, y: usize) -> usize {
        self.add[self.add[x][y]][self.mul[x][y]]
    }

    /// Commutative, associative, distributive, and every element nilpotent.
    /// In a finite commutative ring a nil ring is nilpotent.
    pub fn is_nilpotent_ring(&self) -> bool {
        let n = self.len();
        for x in 0..n {
            for y in 0..n {
                if self.mul[x][y] != self.mul[y][x] {
                    return false;
                }
                for z in 0..n {
                    if self.mul[self.mul[x][y]][z] != self.mul[x][self.mul[y][z]] {
                        return false;
                    }
                    if self.mul[x][self.add[y][z]] != self.add[self.mul[x][y]][self.mul[x][z]] {
                        return false;
                    }
                }
            }
        }
        (0..n).all(|x| {
            let mut pow = x;
            for _ in 0..=n {
                if pow == 0 {
                    return true;
                }
                pow = self.mul[pow][x];
            }
            false
        })
    }

    /// Additive subgroups closed under multiplication by every element.
    pub fn ideals(&self) -> BTreeSet<Vec<usize>> {
        let n = self.len();
        subgroups(n, |x, y| self.add[x][y])
            .into_iter()
            .filter(|j| {
                let inside: HashSet<usize> = j.iter().copied().collect();
                j.iter()
                    .all(|&x| (0..n).all(|a| inside.contains(&self.mul[a][x])))
            })
            .collect()
    }

    /// `h[γ][g]` with `λ(γ) α(g) λ(γ)^{-1} = α(h)`, found from the conjugated
    /// permutation itself; panics if that permutation is not a translation.
    pub fn conjugation_table(&self) -> Vec<Vec<usize>> {
        let n = self.len();
        (0..n)
            .map(|gamma| {
                let lambda: Vec<usize> = (0..n).map(|d| self.circle(gamma, d)).collect();
                let mut lambda_inv = vec![0; n];
                for (d, &img) in lambda.iter().enumerate() {
                    lambda_inv[img] = d;
                }
                (0..n)
                    .map(|g| {
                        let perm: Vec<usize> =
                            (0..n).map(|x| lambda[self.add[g][lambda_inv[x]]]).collect();
                        let h = perm[0];
                        assert!(
                            (0..n).all(|x| perm[x] == self.add[h][x]),
                            "conjugate of a translation is not a translation"
                        );
                        h
                    })
                    .collect()
            })
            .collect()
    }

    /// Additive subgroups `J` with `α(J)` stable under every `λ(γ)`.
    pub fn invariant_subgroups(&self) -> BTreeSet<Vec<usize>> {
        let n = self.len();
        let table = self.conjugation_table();
        subgroups(n, |x, y| self.add[x][y])
            .into_iter()
            .filter(|j| {
                let inside: HashSet<usize> = j.iter().copied().collect();
                (0..n).all(|gamma| j.iter().all(|&g| inside.contains(&table[gamma][g])))
            })
            .collect()
    }

    pub fn circle_subgroup_count(&self) -> usize {
        subgroups(self.len(), |x, y| self.circle(x, y)).len()
    }

    /// `true` when every element has circle order dividing `p`.
    pub fn circle_is_elementary(&self, p: u64) -> bool {
        (0..self.len()).all(|x| {
            let mut acc = 0;
            for _ in 0..p {
                acc = self.circle(acc, x);
            }
            acc == 0
        })
    }

    /// A library subgroup as a sorted list of oracle indices.
    pub fn indices(&self, s: &Subgroup) -> Vec<usize> {
        let mut v: Vec<usize> = s.elements().iter().map(|e| self.idx(e.coords())).collect();
        v.sort_unstable();
        v
    }

    pub fn elem(&self, i: usize) -> Elem {
        Elem(self.elems[i].clone())
    }
}

/// Every subgroup of the finite group on `0..n` with identity 0, as sorted
/// index lists. Joins with cyclic subgroups until nothing new appears.
pub fn subgroups(n: usize, op: impl Fn(usize, usize) -> usize) -> Vec<Vec<usize>> {
    let close = |gens: &[usize]| -> Vec<usize> {
        let mut inside = vec![false; n];
        inside[0] = true;
        let mut members = vec![0];
        let mut i = 0;
        while i < members.len() {
            for &g in gens {
                let y = op(members[i], g);
                if !inside[y] {
                    inside[y] = true;
                    members.push(y);
                }
            }
            i += 1;
        }
        members.sort_unstable();
        members
    };
    let mut seen: HashSet<Vec<usize>> = HashSet::new();
    let mut queue: Vec<(Vec<usize>, Vec<usize>)> = vec![(vec![0], vec![])];
    seen.insert(vec![0]);
    let mut cyclic: Vec<usize> = Vec::new();
    let mut cyclic_sets: HashSet<Vec<usize>> = HashSet::new();
    for x in 1..n {
        if cyclic_sets.insert(close(&[x])) {
            cyclic.push(x);
        }
    }
    let mut head = 0;
    while head < queue.len() {
        let (set, gens) = queue[head].clone();
        head += 1;
        for &x in &cyclic {
            if set.binary_search(&x).is_ok() {
                continue;
            }
            let mut g2 = gens.clone();
            g2.push(x);
            let joined = close(&g2);
            if seen.insert(joined.clone()) {
                queue.push((joined, g2));
            }
        }
    }
    let mut out: Vec<Vec<usize>> = queue.into_iter().map(|(s, _)| s).collect();
    out.sort();
    out
}

/// Every valid structure-constant table on the group with these moduli, by
/// scanning all symmetric tensors. Returns the tables and how many were
/// scanned.
pub fn brute_structures(moduli: &[u64]) -> (Vec<Vec<Vec<Vec<u64>>>>, usize) {
    let k = moduli.len();
    let pairs: Vec<(usize, usize)> = (0..k).flat_map(|i| (i..k).map(move |j| (i, j))).collect();
    let vectors = all_vectors(moduli);
    let mut tensors: Vec<Vec<Vec<u64>>> = vec![vec![]];
    for _ in &pairs {
        tensors = tensors
            .into_iter()
            .flat_map(|t| {
                vectors.iter().map(move |v| {
                    let mut t = t.clone();
                    t.push(v.clone());
                    t
                })
            })
            .collect();
    }
    let scanned = tensors.len();
    let mut found = Vec::new();
    for t in tensors {
        let mut c = vec![vec![vec![0u64; k]; k]; k];
        for (&(i, j), v) in pairs.iter().zip(&t) {
            c[i][j] = v.clone();
            c[j][i] = v.clone();
        }
        // b_i b_j must be killed by the smaller of the two generator orders
        let well_defined = pairs.iter().all(|&(i, j)| {
            let m = moduli[i].min(moduli[j]);
            (0..k).all(|l| (m as u128 * c[i][j][l] as u128).is_multiple_of(moduli[l] as u128))
        });
        if well_defined && Oracle::new(moduli, &c).is_nilpotent_ring() {
            found.push(c);
        }
    }
    found.sort();
    (found, scanned)
}

pub fn raw_constants(a: &RingStructure) -> Vec<Vec<Vec<u64>>> {
    a.constants()
        .iter()
        .map(|row| row.iter().map(|c| c.coords().to_vec()).collect())
        .collect()
}

/// Every permutation `x ↦ a + f(x)` of the group, with `f` an automorphism
/// found by trying all images of the generators.
pub fn holomorph_permutations(spec: &GroupSpec) -> Vec<Vec<usize>> {
    let moduli = spec.moduli().to_vec();
    let k = moduli.len();
    let elems = all_vectors(&moduli);
    let index: HashMap<Vec<u64>, usize> = elems
        .iter()
        .cloned()
        .enumerate()
        .map(|(i, v)| (v, i))
        .collect();
    let n = elems.len();
    let images: Vec<Vec<Vec<u64>>> = (0..k).fold(vec![vec![]], |acc, _| {
        acc.into_iter()
            .flat_map(|t: Vec<Vec<u64>>| {
                elems.iter().map(move |e| {
                    let mut t = t.clone();
                    t.push(e.clone());
                    t
                })
            })
            .collect()
    });
    let mut autos: Vec<Vec<usize>> = Vec::new();
    for img in images {
        // the image of generator i must be killed by its order
        if (0..k).any(|i| {
            (0..k)
                .any(|l| !(moduli[i] as u128 * img[i][l] as u128).is_multiple_of(moduli[l] as u128))
        }) {
            continue;
        }
        let f: Vec<usize> = elems
            .iter()
            .map(|x| {
                let v: Vec<u64> = (0..k)
                    .map(|l| {
                        let s: u128 = (0..k).map(|i| x[i] as u128 * img[i][l] as u128).sum();
                        (s % moduli[l] as u128) as u64
                    })
                    .collect();
                index[&v]
            })
            .collect();
        let distinct: HashSet<usize> = f.iter().copied().collect();
        if distinct.len() == n {
            autos.push(f);
        }
    }
    let mut out = Vec::new();
    for a in &elems {
        for f in &autos {
            out.push(
                (0..n)
                    .map(|x| {
                        let y = &elems[f[x]];
                        let s: Vec<u64> = (0..k).map(|l| (a[l] + y[l]) % moduli[l]).collect();
                        index[&s]
                    })
                    .collect(),
            );
        }
    }
    out
}

/// Regular subgroups of a permutation group whose regular subgroups are
/// generated by at most two elements. Returns `(all, abelian)` counts.
pub fn regular_subgroups_two_generated(perms: &[Vec<usize>]) -> (usize, usize) {
    let n = perms[0].len();
    let compose =
        |a: &Vec<usize>, b: &Vec<usize>| -> Vec<usize> { (0..n).map(|x| a[b[x]]).collect() };
    let mut found: HashSet<BTreeSet<Vec<usize>>> = HashSet::new();
    for x in perms {
        for y in perms {
            let mut group: BTreeSet<Vec<usize>> = BTreeSet::new();
            let id: Vec<usize> = (0..n).collect();
            group.insert(id.clone());
            let mut frontier = vec![id];
            let mut too_big = false;
            while let Some(g) = frontier.pop() {
                for s in [x, y] {
                    let h = compose(&g, s);
                    if group.insert(h.clone()) {
                        frontier.push(h);
                    }
                }
                if group.len() > n {
                    too_big = true;
                    break;
                }
            }
            if too_big || group.len() != n {
                continue;
            }
            let orbit: HashSet<usize> = group.iter().map(|g| g[0]).collect();
            if orbit.len() == n {
                found.insert(group);
            }
        }
    }
    let abelian = found
        .iter()
        .filter(|g| {
            g.iter()
                .all(|a| g.iter().all(|b| compose(a, b) == compose(b, a)))
        })
        .count();
    (found.len(), abelian)
}

/// Subgroup count of `C_p^n` by the oracle search.
pub fn elementary_subgroup_count(p: u64, n: u32) -> usize {
    let moduli = vec![p; n as usize];
    let zero_tensor = vec![vec![vec![0; n as usize]; n as usize]; n as usize];
    let o = Oracle::new(&moduli, &zero_tensor);
    subgroups(o.len(), |x, y| o.add[x][y]).len()
}
