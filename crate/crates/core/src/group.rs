//! Finite groups given by multiplication tables.
//!
//! Products are diagrammatic like everything else in the crate:
//! `mul(a, b)` is "a, then b".

use crate::abelian::{finite_abelian_invariants, AbelianInvariant};
use std::collections::{BTreeSet, HashSet, VecDeque};

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FiniteGroup {
    table: Vec<Vec<usize>>,
    identity: usize,
    inverse: Vec<usize>,
}

impl FiniteGroup {
    /// Builds a group from a full multiplication table, checking the axioms.
    pub fn from_table(table: Vec<Vec<usize>>) -> Option<Self> {
        let n = table.len();
        if n == 0 || table.iter().any(|r| r.len() != n || r.iter().any(|&x| x >= n)) {
            return None;
        }
        let identity = (0..n).find(|&e| (0..n).all(|a| table[e][a] == a && table[a][e] == a))?;
        let mut inverse = vec![0; n];
        for a in 0..n {
            inverse[a] = (0..n).find(|&b| table[a][b] == identity && table[b][a] == identity)?;
        }
        for a in 0..n {
            for b in 0..n {
                for c in 0..n {
                    if table[table[a][b]][c] != table[a][table[b][c]] {
                        return None;
                    }
                }
            }
        }
        Some(Self {
            table,
            identity,
            inverse,
        })
    }

    /// Builds a group from a table already known to satisfy the axioms.
    pub(crate) fn from_table_unchecked(table: Vec<Vec<usize>>) -> Self {
        let n = table.len();
        let identity = (0..n).find(|&e| (0..n).all(|a| table[e][a] == a)).expect("identity");
        let inverse = (0..n)
            .map(|a| (0..n).find(|&b| table[a][b] == identity).expect("inverse"))
            .collect();
        Self { table, identity, inverse }
    }

    pub fn trivial() -> Self {
        Self::cyclic(1)
    }

    pub fn cyclic(n: usize) -> Self {
        assert!(n >= 1);
        let table = (0..n).map(|a| (0..n).map(|b| (a + b) % n).collect()).collect();
        Self::from_table(table).expect("cyclic table is a group")
    }

    /// Symmetric group on `n` letters; elements are permutations in
    /// lexicographic order, so element 0 is the identity.
    pub fn symmetric(n: usize) -> Self {
        let perms = permutations(n);
        let index = |p: &Vec<usize>| perms.iter().position(|q| q == p).unwrap();
        let table = perms
            .iter()
            .map(|p| {
                perms
                    .iter()
                    // p first, then q
                    .map(|q| index(&(0..n).map(|i| q[p[i]]).collect()))
                    .collect()
            })
            .collect();
        Self::from_table(table).expect("symmetric table is a group")
    }

    pub fn direct_product(&self, other: &Self) -> Self {
        let (n, m) = (self.order(), other.order());
        let table = (0..n * m)
            .map(|x| {
                (0..n * m)
                    .map(|y| self.mul(x / m, y / m) * m + other.mul(x % m, y % m))
                    .collect()
            })
            .collect();
        Self::from_table(table).expect("product of groups is a group")
    }

    pub fn order(&self) -> usize {
        self.table.len()
    }

    pub fn identity(&self) -> usize {
        self.identity
    }

    pub fn mul(&self, a: usize, b: usize) -> usize {
        self.table[a][b]
    }

    pub fn inv(&self, a: usize) -> usize {
        self.inverse[a]
    }

    pub fn table(&self) -> &[Vec<usize>] {
        &self.table
    }

    pub fn pow(&self, a: usize, k: u64) -> usize {
        let mut acc = self.identity;
        for _ in 0..k {
            acc = self.mul(acc, a);
        }
        acc
    }

    pub fn element_order(&self, a: usize) -> usize {
        let mut x = a;
        let mut k = 1;
        while x != self.identity {
            x = self.mul(x, a);
            k += 1;
        }
        k
    }

    pub fn is_abelian(&self) -> bool {
        let n = self.order();
        (0..n).all(|a| (0..n).all(|b| self.mul(a, b) == self.mul(b, a)))
    }

    /// Elements of the subgroup generated by `gens`, sorted.
    pub fn generated(&self, gens: &[usize]) -> Vec<usize> {
        let mut seen = BTreeSet::from([self.identity]);
        let mut queue = VecDeque::from([self.identity]);
        while let Some(x) = queue.pop_front() {
            for &g in gens {
                let y = self.mul(x, g);
                if seen.insert(y) {
                    queue.push_back(y);
                }
            }
        }
        seen.into_iter().collect()
    }

    /// Greedy generating set: each element added is outside the span of the previous ones.
    pub fn generating_set(&self) -> Vec<usize> {
        let mut gens = Vec::new();
        let mut span: HashSet<usize> = HashSet::from([self.identity]);
        // large element orders first gives shorter generating sets
        let mut candidates: Vec<usize> = (0..self.order()).collect();
        candidates.sort_by_key(|&a| (std::cmp::Reverse(self.element_order(a)), a));
        for a in candidates {
            if !span.contains(&a) {
                gens.push(a);
                span = self.generated(&gens).into_iter().collect();
            }
        }
        gens
    }

    pub fn commutator_subgroup(&self) -> Vec<usize> {
        let n = self.order();
        let mut comms = BTreeSet::new();
        for a in 0..n {
            for b in 0..n {
                let c = self.mul(self.mul(self.inv(a), self.inv(b)), self.mul(a, b));
                comms.insert(c);
            }
        }
        self.generated(&comms.into_iter().collect::<Vec<_>>())
    }

    /// Invariant factors of the abelianization `G / [G, G]`.
    pub fn abelianization(&self) -> AbelianInvariant {
        let comm = self.commutator_subgroup();
        // coset label: least element of a·[G,G]
        let n = self.order();
        let mut coset_of = vec![usize::MAX; n];
        let mut reps = Vec::new();
        for a in 0..n {
            if coset_of[a] == usize::MAX {
                let label = reps.len();
                reps.push(a);
                for &c in &comm {
                    coset_of[self.mul(a, c)] = label;
                }
            }
        }
        let quotient_order = reps.len() as u64;
        let identity_coset = coset_of[self.identity];
        finite_abelian_invariants(quotient_order, |k| {
            reps.iter()
                .filter(|&&a| coset_of[self.pow(a, k)] == identity_coset)
                .count() as u64
        })
    }

    /// Exhaustive isomorphism test by extending generator images.
    pub fn is_isomorphic(&self, other: &Self) -> bool {
        if self.order() != other.order() {
            return false;
        }
        let mut mine: Vec<usize> = (0..self.order()).map(|a| self.element_order(a)).collect();
        let mut theirs: Vec<usize> = (0..other.order()).map(|a| other.element_order(a)).collect();
        mine.sort_unstable();
        theirs.sort_unstable();
        if mine != theirs || self.is_abelian() != other.is_abelian() {
            return false;
        }
        let gens = self.generating_set();
        let mut images = Vec::with_capacity(gens.len());
        self.extend_iso(other, &gens, &mut images)
    }

    fn extend_iso(&self, other: &Self, gens: &[usize], images: &mut Vec<usize>) -> bool {
        if images.len() == gens.len() {
            return self.homomorphism_from_generators(other, gens, images).is_some_and(|map| {
                let distinct: HashSet<usize> = map.iter().copied().collect();
                distinct.len() == other.order()
            });
        }
        let want = self.element_order(gens[images.len()]);
        for b in 0..other.order() {
            if other.element_order(b) == want {
                images.push(b);
                if self.extend_iso(other, gens, images) {
                    return true;
                }
                images.pop();
            }
        }
        false
    }

    /// Extends `gens[i] ↦ images[i]` to a homomorphism if one exists.
    /// `gens` must generate the group.
    pub fn homomorphism_from_generators(&self, other: &Self, gens: &[usize], images: &[usize]) -> Option<Vec<usize>> {
        let n = self.order();
        let mut map = vec![usize::MAX; n];
        map[self.identity] = other.identity;
        let mut queue = VecDeque::from([self.identity]);
        let mut visited = vec![false; n];
        visited[self.identity] = true;
        while let Some(x) = queue.pop_front() {
            for (&g, &h) in gens.iter().zip(images) {
                let y = self.mul(x, g);
                let fy = other.mul(map[x], h);
                if map[y] == usize::MAX {
                    map[y] = fy;
                } else if map[y] != fy {
                    return None;
                }
                if !visited[y] {
                    visited[y] = true;
                    queue.push_back(y);
                }
            }
        }
        if map.contains(&usize::MAX) {
            return None;
        }
        // closure via right multiplication by generators is enough, but check the table
        for a in 0..n {
            for b in 0..n {
                if map[self.mul(a, b)] != other.mul(map[a], map[b]) {
                    return None;
                }
            }
        }
        Some(map)
    }

    /// Evaluates a word of signed generator indices under `images`.
    pub fn eval_word(&self, images: &[usize], word: &[(usize, bool)]) -> usize {
        word.iter().fold(self.identity, |acc, &(g, inverted)| {
            let x = images[g];
            self.mul(acc, if inverted { self.inv(x) } else { x })
        })
    }
}

fn permutations(n: usize) -> Vec<Vec<usize>> {
    let mut out = Vec::new();
    let mut current = Vec::with_capacity(n);
    let mut used = vec![false; n];
    fn go(n: usize, current: &mut Vec<usize>, used: &mut [bool], out: &mut Vec<Vec<usize>>) {
        if current.len() == n {
            out.push(current.clone());
            return;
        }
        for i in 0..n {
            if !used[i] {
                used[i] = true;
                current.push(i);
                go(n, current, used, out);
                current.pop();
                used[i] = false;
            }
        }
    }
    go(n, &mut current, &mut used, &mut out);
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn symmetric_three_is_nonabelian_of_order_six() {
        let s3 = FiniteGroup::symmetric(3);
        assert_eq!(s3.order(), 6);
        assert!(!s3.is_abelian());
        assert_eq!(s3.identity(), 0);
        assert_eq!(s3.abelianization().torsion, vec![2]);
    }

    #[test]
    fn abelianization_of_products() {
        let g = FiniteGroup::cyclic(2).direct_product(&FiniteGroup::cyclic(4));
        assert_eq!(g.abelianization().torsion, vec![2, 4]);
        let g = FiniteGroup::cyclic(2).direct_product(&FiniteGroup::cyclic(3));
        assert_eq!(g.abelianization().torsion, vec![6]);
        assert!(FiniteGroup::trivial().abelianization().is_trivial());
    }

    #[test]
    fn isomorphism_search() {
        let z6 = FiniteGroup::cyclic(6);
        let z2z3 = FiniteGroup::cyclic(2).direct_product(&FiniteGroup::cyclic(3));
        assert!(z6.is_isomorphic(&z2z3));
        assert!(!z6.is_isomorphic(&FiniteGroup::symmetric(3)));
        let z2z2 = FiniteGroup::cyclic(2).direct_product(&FiniteGroup::cyclic(2));
        assert!(!z2z2.is_isomorphic(&FiniteGroup::cyclic(4)));
        assert!(FiniteGroup::symmetric(3).is_isomorphic(&FiniteGroup::symmetric(3)));
    }

    #[test]
    fn bad_table_is_rejected() {
        // a·a = a breaks inverses
        assert!(FiniteGroup::from_table(vec![vec![0, 1], vec![1, 1]]).is_none());
    }
}
