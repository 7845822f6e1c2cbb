//! Finitely generated abelian groups: Smith normal form of integer relation
//! matrices and invariant-factor decomposition of finite abelian groups.

use serde::{Deserialize, Serialize};
use std::fmt;

/// `Z^free_rank ⊕ Z/t1 ⊕ ... ⊕ Z/tk` with `t1 | t2 | ... | tk` and every `ti ≥ 2`.
#[derive(Clone, Debug, Default, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub struct AbelianInvariant {
    pub free_rank: usize,
    pub torsion: Vec<u64>,
}

impl AbelianInvariant {
    pub fn trivial() -> Self {
        Self::default()
    }

    pub fn free(rank: usize) -> Self {
        Self {
            free_rank: rank,
            torsion: Vec::new(),
        }
    }

    pub fn is_trivial(&self) -> bool {
        self.free_rank == 0 && self.torsion.is_empty()
    }

    /// Order of the group, `None` when infinite.
    pub fn order(&self) -> Option<u64> {
        if self.free_rank > 0 {
            return None;
        }
        Some(self.torsion.iter().product())
    }

    pub fn is_divisibility_chain(&self) -> bool {
        self.torsion.iter().all(|&t| t >= 2) && self.torsion.windows(2).all(|w| w[1] % w[0] == 0)
    }
}

impl fmt::Display for AbelianInvariant {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut parts = Vec::new();
        match self.free_rank {
            0 => {}
            1 => parts.push("Z".to_string()),
            r => parts.push(format!("Z^{r}")),
        }
        for t in &self.torsion {
            parts.push(format!("Z/{t}"));
        }
        if parts.is_empty() {
            write!(f, "0")
        } else {
            write!(f, "{}", parts.join(" + "))
        }
    }
}

/// Diagonal of the Smith normal form of `matrix` (rows of equal length
/// `cols`), as nonnegative entries in divisibility order. Zero entries are
/// dropped, so the result length is the rank.
pub fn smith_diagonal(matrix: &[Vec<i64>], cols: usize) -> Vec<u64> {
    let mut m: Vec<Vec<i128>> = matrix
        .iter()
        .map(|r| r.iter().map(|&x| x as i128).collect())
        .collect();
    let rows = m.len();
    let mut diag = Vec::new();
    let mut t = 0;
    while t < rows.min(cols) {
        // pivot: smallest nonzero absolute value in the trailing block
        let mut best: Option<(usize, usize)> = None;
        for i in t..rows {
            for j in t..cols {
                if m[i][j] != 0 && best.is_none_or(|(bi, bj)| m[i][j].abs() < m[bi][bj].abs()) {
                    best = Some((i, j));
                }
            }
        }
        let Some((pi, pj)) = best else { break };
        m.swap(t, pi);
        for row in m.iter_mut() {
            row.swap(t, pj);
        }
        loop {
            let p = m[t][t];
            let mut dirty = false;
            for i in t + 1..rows {
                let q = m[i][t] / p;
                if q != 0 {
                    for j in t..cols {
                        m[i][j] -= q * m[t][j];
                    }
                }
                if m[i][t] != 0 {
                    dirty = true;
                }
            }
            for j in t + 1..cols {
                let q = m[t][j] / p;
                if q != 0 {
                    for row in m.iter_mut().skip(t) {
                        row[j] -= q * row[t];
                    }
                }
                if m[t][j] != 0 {
                    dirty = true;
                }
            }
            if !dirty {
                // divisibility: fold any offending row into the pivot row
                let offending = (t + 1..rows).find(|&i| (t + 1..cols).any(|j| m[i][j] % p != 0));
                match offending {
                    Some(i) => {
                        for j in t..cols {
                            m[t][j] += m[i][j];
                        }
                    }
                    None => break,
                }
            }
            // move the smallest remaining entry of row/column t onto the pivot
            let mut best = (t, t);
            for i in t..rows {
                if m[i][t] != 0 && m[i][t].abs() < m[best.0][best.1].abs() {
                    best = (i, t);
                }
            }
            for j in t..cols {
                if m[t][j] != 0 && m[t][j].abs() < m[best.0][best.1].abs() {
                    best = (t, j);
                }
            }
            if best.0 != t {
                m.swap(t, best.0);
            }
            if best.1 != t {
                for row in m.iter_mut() {
                    row.swap(t, best.1);
                }
            }
        }
        diag.push(m[t][t].unsigned_abs() as u64);
        t += 1;
    }
    diag
}

/// Abelian invariants of `Z^cols / rowspace(matrix)`.
pub fn invariants_of_relation_matrix(matrix: &[Vec<i64>], cols: usize) -> AbelianInvariant {
    let diag = smith_diagonal(matrix, cols);
    AbelianInvariant {
        free_rank: cols - diag.len(),
        torsion: diag.into_iter().filter(|&d| d > 1).collect(),
    }
}

/// Invariant factors of a finite abelian group given by its elements and
/// a callback computing the order of each element's multiples.
///
/// `kernel_size(n)` must return `|{a : n·a = 0}|`.
pub fn finite_abelian_invariants(order: u64, mut kernel_size: impl FnMut(u64) -> u64) -> AbelianInvariant {
    let mut rest = order;
    let mut primes = Vec::new();
    let mut p = 2;
    while p * p <= rest {
        if rest.is_multiple_of(p) {
            primes.push(p);
            while rest.is_multiple_of(p) {
                rest /= p;
            }
        }
        p += 1;
    }
    if rest > 1 {
        primes.push(rest);
    }
    // per prime: exponents of the cyclic p-factors, largest first
    let mut per_prime: Vec<(u64, Vec<u32>)> = Vec::new();
    for &p in &primes {
        let mut counts = vec![1u64];
        let mut pk = 1u64;
        loop {
            pk *= p;
            let c = kernel_size(pk);
            if c == *counts.last().unwrap() {
                break;
            }
            counts.push(c);
        }
        // number of factors of order >= p^k is log_p(counts[k]/counts[k-1])
        let ge: Vec<u32> = counts
            .windows(2)
            .map(|w| {
                let mut q = w[1] / w[0];
                let mut e = 0;
                while q > 1 {
                    q /= p;
                    e += 1;
                }
                e
            })
            .collect();
        let n_factors = ge.first().copied().unwrap_or(0) as usize;
        let mut exps = Vec::with_capacity(n_factors);
        for f in 0..n_factors {
            exps.push(ge.iter().filter(|&&g| g as usize > f).count() as u32);
        }
        per_prime.push((p, exps));
    }
    let width = per_prime.iter().map(|(_, e)| e.len()).max().unwrap_or(0);
    let mut factors = Vec::with_capacity(width);
    for f in 0..width {
        let mut t = 1u64;
        for (p, exps) in &per_prime {
            if let Some(&e) = exps.get(f) {
                t *= p.pow(e);
            }
        }
        factors.push(t);
    }
    factors.reverse();
    AbelianInvariant {
        free_rank: 0,
        torsion: factors,
    }
}
