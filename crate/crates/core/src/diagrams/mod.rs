//! Diagrams of groupoids indexed by finite posets, and their limits and
//! colimits, strict and up to coherent isomorphism.
//!
//! A contravariant diagram has transitions `value(j) -> value(i)` for
//! `i <= j` (the limit side); a covariant one has `value(i) -> value(j)`.
//! Only strict pairs `i < j` store a transition; reflexive pairs are
//! identities.

mod colimits;
mod deform;
mod limits;

pub use colimits::{
    delta_comparison, diagram_colim, diagram_tc, filtered_colim, presented_diagram, ColimResult, DeltaResult, TcResult,
};
pub use deform::{deform, Deformation};
pub use limits::{diagram_lim, diagram_tl, gamma_embedding, Gamma, Limit, TwoLimit};

use crate::error::{Error, Result};
use crate::groupoid::{ConcreteFunctor, ConcreteGroupoid};
use crate::presentation::{PresFunctor, PresentedGroupoid};
use serde::{Deserialize, Serialize};
use std::collections::BTreeMap;
use std::sync::Arc;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FinitePoset {
    elements: Vec<String>,
    leq: Vec<Vec<bool>>,
}

impl FinitePoset {
    /// Poset generated by covering pairs `(lower, upper)`.
    pub fn from_covers(elements: Vec<String>, covers: &[(usize, usize)]) -> Result<Self> {
        let n = elements.len();
        let mut leq = vec![vec![false; n]; n];
        for (i, row) in leq.iter_mut().enumerate() {
            row[i] = true;
        }
        for &(a, b) in covers {
            if a >= n || b >= n {
                return Err(Error::InvalidPoset(format!("cover ({a}, {b}) out of range")));
            }
            leq[a][b] = true;
        }
        for k in 0..n {
            for i in 0..n {
                if leq[i][k] {
                    for j in 0..n {
                        if leq[k][j] {
                            leq[i][j] = true;
                        }
                    }
                }
            }
        }
        Self::from_relation(elements, leq)
    }

    /// Poset from a full order relation, checked.
    pub fn from_relation(elements: Vec<String>, leq: Vec<Vec<bool>>) -> Result<Self> {
        let n = elements.len();
        if leq.len() != n || leq.iter().any(|r| r.len() != n) {
            return Err(Error::InvalidPoset("relation has the wrong size".into()));
        }
        for i in 0..n {
            if !leq[i][i] {
                return Err(Error::InvalidPoset(format!("`{}` is not below itself", elements[i])));
            }
            for j in 0..n {
                if i != j && leq[i][j] && leq[j][i] {
                    return Err(Error::InvalidPoset(format!("`{}` and `{}` form a cycle", elements[i], elements[j])));
                }
                for k in 0..n {
                    if leq[i][j] && leq[j][k] && !leq[i][k] {
                        return Err(Error::InvalidPoset("relation is not transitive".into()));
                    }
                }
            }
        }
        Ok(Self { elements, leq })
    }

    pub fn discrete(elements: Vec<String>) -> Self {
        Self::from_covers(elements, &[]).unwrap()
    }

    /// The chain `0 < 1 < ... < n-1`.
    pub fn chain(n: usize) -> Self {
        let covers: Vec<(usize, usize)> = (1..n).map(|i| (i - 1, i)).collect();
        Self::from_covers((0..n).map(|i| i.to_string()).collect(), &covers).unwrap()
    }

    /// `c < a`, `c < b`: the shape of a span.
    pub fn span() -> Self {
        Self::from_covers(vec!["a".into(), "b".into(), "c".into()], &[(2, 0), (2, 1)]).unwrap()
    }

    pub fn len(&self) -> usize {
        self.elements.len()
    }

    pub fn is_empty(&self) -> bool {
        self.elements.is_empty()
    }

    pub fn elements(&self) -> &[String] {
        &self.elements
    }

    pub fn index(&self, name: &str) -> Option<usize> {
        self.elements.iter().position(|e| e == name)
    }

    pub fn leq(&self, i: usize, j: usize) -> bool {
        self.leq[i][j]
    }

    pub fn lt(&self, i: usize, j: usize) -> bool {
        i != j && self.leq[i][j]
    }

    /// All `(i, j)` with `i < j`, lexicographic.
    pub fn strict_pairs(&self) -> Vec<(usize, usize)> {
        let n = self.len();
        (0..n).flat_map(|i| (0..n).map(move |j| (i, j))).filter(|&(i, j)| self.lt(i, j)).collect()
    }

    /// All `(i, j, k)` with `i < j < k`, lexicographic.
    pub fn strict_chains(&self) -> Vec<(usize, usize, usize)> {
        let mut out = Vec::new();
        for (i, j) in self.strict_pairs() {
            for k in 0..self.len() {
                if self.lt(j, k) {
                    out.push((i, j, k));
                }
            }
        }
        out
    }

    /// Covering pairs of the order.
    pub fn covers(&self) -> Vec<(usize, usize)> {
        self.strict_pairs()
            .into_iter()
            .filter(|&(i, j)| !(0..self.len()).any(|k| self.lt(i, k) && self.lt(k, j)))
            .collect()
    }

    /// Every pair has a common upper bound. Returns a failing pair otherwise.
    pub fn filtered_witness(&self) -> Option<(usize, usize)> {
        let n = self.len();
        for i in 0..n {
            for j in i + 1..n {
                if !(0..n).any(|k| self.leq[i][k] && self.leq[j][k]) {
                    return Some((i, j));
                }
            }
        }
        None
    }

    pub fn is_filtered(&self) -> bool {
        !self.is_empty() && self.filtered_witness().is_none()
    }

    /// Same size and same order relation, ignoring names.
    pub fn same_order(&self, other: &FinitePoset) -> bool {
        self.leq == other.leq
    }

    /// The induced order on a subset of elements, in the given order.
    pub fn restrict(&self, keep: &[usize]) -> FinitePoset {
        let elements = keep.iter().map(|&i| self.elements[i].clone()).collect();
        let leq = keep.iter().map(|&i| keep.iter().map(|&j| self.leq[i][j]).collect()).collect();
        FinitePoset { elements, leq }
    }

    /// The greatest element, if any.
    pub fn top(&self) -> Option<usize> {
        (0..self.len()).find(|&t| (0..self.len()).all(|i| self.leq[i][t]))
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Variance {
    Covariant,
    Contravariant,
}

/// Functor-like transitions that a diagram can compose and compare.
pub trait Transition: Clone {
    type Value;
    fn source(&self) -> &Arc<Self::Value>;
    fn target(&self) -> &Arc<Self::Value>;
    fn compose(&self, next: &Self) -> Result<Self>;
    fn same_as(&self, other: &Self) -> bool;
    fn same_value(a: &Self::Value, b: &Self::Value) -> bool;
}

impl Transition for ConcreteFunctor {
    type Value = ConcreteGroupoid;
    fn source(&self) -> &Arc<ConcreteGroupoid> {
        &self.domain
    }
    fn target(&self) -> &Arc<ConcreteGroupoid> {
        &self.codomain
    }
    fn compose(&self, next: &Self) -> Result<Self> {
        self.then(next)
    }
    fn same_as(&self, other: &Self) -> bool {
        self.agrees_with(other)
    }
    fn same_value(a: &ConcreteGroupoid, b: &ConcreteGroupoid) -> bool {
        a.same_shape(b)
    }
}

impl Transition for PresFunctor {
    type Value = PresentedGroupoid;
    fn source(&self) -> &Arc<PresentedGroupoid> {
        &self.domain
    }
    fn target(&self) -> &Arc<PresentedGroupoid> {
        &self.codomain
    }
    fn compose(&self, next: &Self) -> Result<Self> {
        Ok(self.then(next))
    }
    fn same_as(&self, other: &Self) -> bool {
        self.agrees_with(other)
    }
    fn same_value(a: &PresentedGroupoid, b: &PresentedGroupoid) -> bool {
        std::ptr::eq(a, b) || a == b
    }
}

/// A strict diagram of groupoids over a finite poset.
#[derive(Clone, Debug)]
pub struct Diagram<F: Transition> {
    pub poset: FinitePoset,
    pub variance: Variance,
    pub values: Vec<Arc<F::Value>>,
    transitions: BTreeMap<(usize, usize), F>,
}

pub type ConcreteDiagram = Diagram<ConcreteFunctor>;
pub type PresentedDiagram = Diagram<PresFunctor>;

impl<F: Transition> Diagram<F> {
    /// Builds a diagram from the transitions on strict pairs and checks
    /// endpoints and strict functoriality on every chain.
    pub fn new(
        poset: FinitePoset,
        variance: Variance,
        values: Vec<Arc<F::Value>>,
        transitions: BTreeMap<(usize, usize), F>,
    ) -> Result<Self> {
        if values.len() != poset.len() {
            return Err(Error::InvalidDiagram("one value per poset element is required".into()));
        }
        let d = Self {
            poset,
            variance,
            values,
            transitions,
        };
        d.check()?;
        Ok(d)
    }

    /// Builds a diagram from transitions on covering pairs only, composing
    /// them along chains. Functoriality on the remaining pairs is checked.
    pub fn from_covers(
        poset: FinitePoset,
        variance: Variance,
        values: Vec<Arc<F::Value>>,
        covers: BTreeMap<(usize, usize), F>,
    ) -> Result<Self> {
        let mut transitions = covers;
        // add pairs by increasing length of the interval
        loop {
            let mut added = false;
            for (i, j) in poset.strict_pairs() {
                if transitions.contains_key(&(i, j)) {
                    continue;
                }
                let mid = (0..poset.len()).find(|&k| transitions.contains_key(&(i, k)) && transitions.contains_key(&(k, j)));
                if let Some(k) = mid {
                    let (a, b) = (&transitions[&(i, k)], &transitions[&(k, j)]);
                    let t = match variance {
                        Variance::Covariant => a.compose(b)?,
                        Variance::Contravariant => b.compose(a)?,
                    };
                    transitions.insert((i, j), t);
                    added = true;
                }
            }
            if !added {
                break;
            }
        }
        Self::new(poset, variance, values, transitions)
    }

    pub fn len(&self) -> usize {
        self.values.len()
    }

    pub fn is_empty(&self) -> bool {
        self.values.is_empty()
    }

    /// Transition on the strict pair `i < j`.
    pub fn transition(&self, i: usize, j: usize) -> &F {
        &self.transitions[&(i, j)]
    }

    pub fn transitions(&self) -> impl Iterator<Item = (&(usize, usize), &F)> {
        self.transitions.iter()
    }

    pub fn check(&self) -> Result<()> {
        for &(i, j) in self.transitions.keys() {
            if !self.poset.lt(i, j) {
                return Err(Error::InvalidDiagram(format!("transition on a non-strict pair ({i}, {j})")));
            }
        }
        for (i, j) in self.poset.strict_pairs() {
            let t = self
                .transitions
                .get(&(i, j))
                .ok_or_else(|| Error::InvalidDiagram(format!("missing transition ({i}, {j})")))?;
            let (from, to) = match self.variance {
                Variance::Covariant => (i, j),
                Variance::Contravariant => (j, i),
            };
            if !F::same_value(t.source(), &self.values[from]) || !F::same_value(t.target(), &self.values[to]) {
                return Err(Error::InvalidDiagram(format!("transition ({i}, {j}) has the wrong endpoints")));
            }
        }
        for (i, j, k) in self.poset.strict_chains() {
            let (ij, jk, ik) = (&self.transitions[&(i, j)], &self.transitions[&(j, k)], &self.transitions[&(i, k)]);
            let composite = match self.variance {
                Variance::Covariant => ij.compose(jk)?,
                Variance::Contravariant => jk.compose(ij)?,
            };
            if !composite.same_as(ik) {
                return Err(Error::InvalidDiagram(format!("not strict on the chain ({i}, {j}, {k})")));
            }
        }
        Ok(())
    }
}
