//! Signed digraphs and the graph-theoretic side of the model.
//!
//! A [`SignedDigraph`] always carries a positive self-arc at every vertex and
//! at most one positive and one negative arc per ordered pair, stored as two
//! boolean adjacency layers. Unions of graphs may therefore contain both
//! `(i, j, +)` and `(i, j, -)`.

mod balance;
mod cycle;
mod scc;

use std::fmt;
use std::ops::Mul;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

pub use balance::{
    check_balance, classify_class, verify_balance, BalanceVerdict, GraphClass,
    NegativeCycleCertificate, WalkStep,
};
pub use cycle::{find_negative_directed_cycle, longest_directed_cycle};
pub use scc::Condensation;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum Sign {
    #[serde(rename = "+")]
    Positive,
    #[serde(rename = "-")]
    Negative,
}

impl Sign {
    /// Sign of a nonzero real; `None` for zero or NaN.
    pub fn of(x: f64) -> Option<Sign> {
        if x > 0.0 {
            Some(Sign::Positive)
        } else if x < 0.0 {
            Some(Sign::Negative)
        } else {
            None
        }
    }

    pub fn as_f64(self) -> f64 {
        match self {
            Sign::Positive => 1.0,
            Sign::Negative => -1.0,
        }
    }

    pub fn flip(self) -> Sign {
        match self {
            Sign::Positive => Sign::Negative,
            Sign::Negative => Sign::Positive,
        }
    }

    pub fn is_negative(self) -> bool {
        self == Sign::Negative
    }

    pub fn symbol(self) -> char {
        match self {
            Sign::Positive => '+',
            Sign::Negative => '-',
        }
    }
}

impl Mul for Sign {
    type Output = Sign;

    fn mul(self, rhs: Sign) -> Sign {
        if self == rhs {
            Sign::Positive
        } else {
            Sign::Negative
        }
    }
}

impl fmt::Display for Sign {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.symbol())
    }
}

/// A signed arc `from -> to`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Arc {
    pub from: usize,
    pub to: usize,
    pub sign: Sign,
}

impl Arc {
    pub fn new(from: usize, to: usize, sign: Sign) -> Self {
        Arc { from, to, sign }
    }
}

/// Sign vector `b` with `b[0] = +1` on every weakly connected component's
/// lowest vertex. Names the bipartition `V+ = {i : b_i = +1}`,
/// `V- = {i : b_i = -1}`.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Clustering {
    signs: Vec<Sign>,
}

impl Clustering {
    /// Builds a clustering, flipping all signs if needed so that `b_1 = +1`.
    pub fn new(mut signs: Vec<Sign>) -> Self {
        assert!(!signs.is_empty(), "clustering needs at least one vertex");
        if signs[0] == Sign::Negative {
            signs.iter_mut().for_each(|s| *s = s.flip());
        }
        Clustering { signs }
    }

    /// The all-positive clustering `1`.
    pub fn all_positive(n: usize) -> Self {
        Clustering::new(vec![Sign::Positive; n])
    }

    /// Builds from a `±1` vector; any other value is rejected.
    pub fn from_values(values: &[i8]) -> Result<Self> {
        if values.is_empty() {
            return Err(Error::parse("clustering", "empty sign vector"));
        }
        let signs = values
            .iter()
            .map(|&v| match v {
                1 => Ok(Sign::Positive),
                -1 => Ok(Sign::Negative),
                other => Err(Error::parse("clustering", format!("entry {other} is not +1/-1"))),
            })
            .collect::<Result<Vec<_>>>()?;
        Ok(Clustering::new(signs))
    }

    pub(crate) fn from_raw(signs: Vec<Sign>) -> Self {
        Clustering { signs }
    }

    pub fn len(&self) -> usize {
        self.signs.len()
    }

    pub fn is_empty(&self) -> bool {
        self.signs.is_empty()
    }

    pub fn sign(&self, i: usize) -> Sign {
        self.signs[i]
    }

    pub fn signs(&self) -> &[Sign] {
        &self.signs
    }

    pub fn values(&self) -> Vec<i8> {
        self.signs.iter().map(|s| s.as_f64() as i8).collect()
    }

    pub fn as_vector(&self) -> crate::Vector {
        crate::Vector::from_iterator(self.len(), self.signs.iter().map(|s| s.as_f64()))
    }

    /// The diagonal gauge matrix `B` with `B_ii = b_i`.
    pub fn gauge_matrix(&self) -> crate::Matrix {
        crate::Matrix::from_diagonal(&self.as_vector())
    }

    pub fn is_all_positive(&self) -> bool {
        self.signs.iter().all(|&s| s == Sign::Positive)
    }

    pub fn positive_set(&self) -> Vec<usize> {
        (0..self.len()).filter(|&i| self.signs[i] == Sign::Positive).collect()
    }

    pub fn negative_set(&self) -> Vec<usize> {
        (0..self.len()).filter(|&i| self.signs[i] == Sign::Negative).collect()
    }
}

impl Serialize for Clustering {
    fn serialize<S: serde::Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        self.values().serialize(serializer)
    }
}

impl<'de> Deserialize<'de> for Clustering {
    fn deserialize<D: serde::Deserializer<'de>>(deserializer: D) -> Result<Self, D::Error> {
        let values = Vec::<i8>::deserialize(deserializer)?;
        Clustering::from_values(&values).map_err(serde::de::Error::custom)
    }
}

impl fmt::Display for Clustering {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "(")?;
        for (k, s) in self.signs.iter().enumerate() {
            if k > 0 {
                write!(f, ",")?;
            }
            write!(f, "{s}1")?;
        }
        write!(f, ")")
    }
}

/// Signed directed multigraph on `n` vertices with positive self-arcs.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct SignedDigraph {
    n: usize,
    positive: Vec<bool>,
    negative: Vec<bool>,
}

impl SignedDigraph {
    /// Graph with only the `n` positive self-arcs.
    ///
    /// Panics if `n == 0`.
    pub fn new(n: usize) -> Self {
        assert!(n >= 1, "a signed digraph needs at least one vertex");
        let mut positive = vec![false; n * n];
        for i in 0..n {
            positive[i * n + i] = true;
        }
        SignedDigraph {
            n,
            positive,
            negative: vec![false; n * n],
        }
    }

    pub fn from_arcs(n: usize, arcs: impl IntoIterator<Item = Arc>) -> Result<Self> {
        if n == 0 {
            return Err(Error::EmptyGraph);
        }
        let mut g = SignedDigraph::new(n);
        for arc in arcs {
            g.add_arc(arc.from, arc.to, arc.sign)?;
        }
        Ok(g)
    }

    /// Adds a signed arc. Re-adding an existing signed arc is a no-op.
    pub fn add_arc(&mut self, from: usize, to: usize, sign: Sign) -> Result<()> {
        for v in [from, to] {
            if v >= self.n {
                return Err(Error::VertexOutOfRange { vertex: v, n: self.n });
            }
        }
        if from == to && sign == Sign::Negative {
            return Err(Error::NegativeSelfArc { vertex: from });
        }
        let k = from * self.n + to;
        match sign {
            Sign::Positive => self.positive[k] = true,
            Sign::Negative => self.negative[k] = true,
        }
        Ok(())
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn has_arc(&self, from: usize, to: usize, sign: Sign) -> bool {
        let k = from * self.n + to;
        match sign {
            Sign::Positive => self.positive[k],
            Sign::Negative => self.negative[k],
        }
    }

    /// Whether some arc `from -> to` exists, ignoring signs.
    pub fn has_any_arc(&self, from: usize, to: usize) -> bool {
        let k = from * self.n + to;
        self.positive[k] || self.negative[k]
    }

    /// Signs of the arcs `from -> to` (zero, one or two of them).
    pub fn signs_between(&self, from: usize, to: usize) -> impl Iterator<Item = Sign> + '_ {
        [Sign::Positive, Sign::Negative]
            .into_iter()
            .filter(move |&s| self.has_arc(from, to, s))
    }

    /// All arcs, including self-arcs, ordered by `(from, to, sign)`.
    pub fn arcs(&self) -> impl Iterator<Item = Arc> + '_ {
        let n = self.n;
        (0..n * n).flat_map(move |k| {
            let (from, to) = (k / n, k % n);
            self.signs_between(from, to).map(move |sign| Arc { from, to, sign })
        })
    }

    pub fn non_self_arcs(&self) -> impl Iterator<Item = Arc> + '_ {
        self.arcs().filter(|a| a.from != a.to)
    }

    pub fn arc_count(&self) -> usize {
        self.positive.iter().chain(&self.negative).filter(|&&b| b).count()
    }

    /// True when no ordered pair carries both signs.
    pub fn is_simple(&self) -> bool {
        !self.positive.iter().zip(&self.negative).any(|(&p, &q)| p && q)
    }

    /// The underlying unsigned digraph.
    pub fn to_digraph(&self) -> Digraph {
        let mut d = Digraph::new(self.n);
        for i in 0..self.n {
            for j in 0..self.n {
                if self.has_any_arc(i, j) {
                    d.add_arc(i, j);
                }
            }
        }
        d
    }

    /// Subgraph induced by `vertices`, relabelled `0..vertices.len()` in the
    /// given order.
    pub fn induced_subgraph(&self, vertices: &[usize]) -> SignedDigraph {
        let mut sub = SignedDigraph::new(vertices.len().max(1));
        for (a, &u) in vertices.iter().enumerate() {
            for (b, &v) in vertices.iter().enumerate() {
                for s in self.signs_between(u, v) {
                    sub.add_arc(a, b, s).expect("induced arcs are valid");
                }
            }
        }
        sub
    }

    pub fn is_strongly_connected(&self) -> bool {
        self.to_digraph().is_strongly_connected()
    }

    pub fn is_rooted(&self) -> bool {
        self.to_digraph().is_rooted()
    }

    pub fn is_weakly_connected(&self) -> bool {
        self.to_digraph().is_weakly_connected()
    }

    pub fn mutually_reachable_classes(&self) -> Condensation {
        self.to_digraph().condensation()
    }
}

/// Union of signed graphs on a common vertex set.
///
/// Identical signed arcs collapse; opposite-signed arcs on the same ordered
/// pair both survive.
pub fn union<'a>(graphs: impl IntoIterator<Item = &'a SignedDigraph>) -> Result<SignedDigraph> {
    let mut iter = graphs.into_iter();
    let mut acc = iter.next().ok_or(Error::EmptyGraph)?.clone();
    for g in iter {
        if g.n != acc.n {
            return Err(Error::DimensionMismatch {
                expected: acc.n,
                found: g.n,
            });
        }
        for (a, b) in acc.positive.iter_mut().zip(&g.positive) {
            *a |= *b;
        }
        for (a, b) in acc.negative.iter_mut().zip(&g.negative) {
            *a |= *b;
        }
    }
    Ok(acc)
}

/// Unsigned digraph stored as sorted successor lists.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Digraph {
    succ: Vec<Vec<usize>>,
}

impl Digraph {
    pub fn new(n: usize) -> Self {
        Digraph {
            succ: vec![Vec::new(); n],
        }
    }

    pub fn n(&self) -> usize {
        self.succ.len()
    }

    pub fn add_arc(&mut self, from: usize, to: usize) {
        if let Err(pos) = self.succ[from].binary_search(&to) {
            self.succ[from].insert(pos, to);
        }
    }

    pub fn has_arc(&self, from: usize, to: usize) -> bool {
        self.succ[from].binary_search(&to).is_ok()
    }

    pub fn successors(&self, v: usize) -> &[usize] {
        &self.succ[v]
    }

    pub fn arc_count(&self) -> usize {
        self.succ.iter().map(Vec::len).sum()
    }

    pub fn reversed(&self) -> Digraph {
        let mut r = Digraph::new(self.n());
        for (u, out) in self.succ.iter().enumerate() {
            for &v in out {
                r.succ[v].push(u);
            }
        }
        r
    }

    /// Arc-set union; panics on mismatched sizes.
    pub fn union(&self, other: &Digraph) -> Digraph {
        assert_eq!(self.n(), other.n(), "digraph union needs equal vertex counts");
        let mut u = self.clone();
        for (v, out) in other.succ.iter().enumerate() {
            for &w in out {
                u.add_arc(v, w);
            }
        }
        u
    }

    /// BFS hop distances from `source`; `None` for unreachable vertices.
    pub fn distances_from(&self, source: usize) -> Vec<Option<usize>> {
        let mut dist = vec![None; self.n()];
        dist[source] = Some(0);
        let mut queue = std::collections::VecDeque::from([source]);
        while let Some(u) = queue.pop_front() {
            let d = dist[u].unwrap();
            for &v in &self.succ[u] {
                if dist[v].is_none() {
                    dist[v] = Some(d + 1);
                    queue.push_back(v);
                }
            }
        }
        dist
    }

    /// Shortest directed path `from -> to` as a vertex sequence.
    pub fn shortest_path(&self, from: usize, to: usize) -> Option<Vec<usize>> {
        let mut parent = vec![usize::MAX; self.n()];
        parent[from] = from;
        let mut queue = std::collections::VecDeque::from([from]);
        while let Some(u) = queue.pop_front() {
            if u == to {
                break;
            }
            for &v in &self.succ[u] {
                if parent[v] == usize::MAX {
                    parent[v] = u;
                    queue.push_back(v);
                }
            }
        }
        if parent[to] == usize::MAX {
            return None;
        }
        let mut path = vec![to];
        let mut v = to;
        while v != from {
            v = parent[v];
            path.push(v);
        }
        path.reverse();
        Some(path)
    }

    pub fn reachable_from(&self, source: usize) -> Vec<bool> {
        self.distances_from(source).iter().map(Option::is_some).collect()
    }

    pub fn is_strongly_connected(&self) -> bool {
        if self.n() == 0 {
            return false;
        }
        self.reachable_from(0).iter().all(|&r| r)
            && self.reversed().reachable_from(0).iter().all(|&r| r)
    }

    pub fn is_weakly_connected(&self) -> bool {
        if self.n() == 0 {
            return false;
        }
        let mut sym = self.clone();
        for (u, out) in self.succ.iter().enumerate() {
            for &v in out {
                sym.add_arc(v, u);
            }
        }
        sym.reachable_from(0).iter().all(|&r| r)
    }

    /// Vertices from which every vertex is reachable.
    pub fn roots(&self) -> Vec<usize> {
        let cond = self.condensation();
        match cond.sources().as_slice() {
            [only] => cond.components()[*only].clone(),
            _ => Vec::new(),
        }
    }

    pub fn is_rooted(&self) -> bool {
        self.n() > 0 && self.condensation().sources().len() == 1
    }

    pub fn condensation(&self) -> Condensation {
        Condensation::of(self)
    }

    /// Out-eccentricity of every vertex, or `None` if some vertex cannot
    /// reach another.
    pub fn eccentricities(&self) -> Option<Vec<usize>> {
        (0..self.n())
            .map(|v| {
                self.distances_from(v)
                    .into_iter()
                    .try_fold(0, |acc, d| d.map(|d| acc.max(d)))
            })
            .collect()
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use Sign::*;

    fn arcs(list: &[(usize, usize, Sign)]) -> Vec<Arc> {
        list.iter().map(|&(f, t, s)| Arc::new(f, t, s)).collect()
    }

    #[test]
    fn sign_parity() {
        assert_eq!(Negative * Negative, Positive);
        assert_eq!(Negative * Positive, Negative);
        assert_eq!(Positive * Positive, Positive);
        assert_eq!(Sign::of(0.0), None);
    }

    #[test]
    fn self_arcs_always_present() {
        let g = SignedDigraph::new(4);
        assert!((0..4).all(|i| g.has_arc(i, i, Positive)));
        assert_eq!(g.arc_count(), 4);
        assert!(matches!(
            SignedDigraph::from_arcs(2, arcs(&[(1, 1, Negative)])),
            Err(Error::NegativeSelfArc { vertex: 1 })
        ));
        assert!(matches!(
            SignedDigraph::from_arcs(2, arcs(&[(0, 2, Positive)])),
            Err(Error::VertexOutOfRange { vertex: 2, n: 2 })
        ));
    }

    #[test]
    fn union_keeps_opposite_signs() {
        let a = SignedDigraph::from_arcs(3, arcs(&[(2, 0, Positive)])).unwrap();
        let b = SignedDigraph::from_arcs(3, arcs(&[(2, 0, Negative)])).unwrap();
        let u = union([&a, &b]).unwrap();
        assert!(u.has_arc(2, 0, Positive) && u.has_arc(2, 0, Negative));
        assert!(!u.is_simple());
        assert_eq!(union([&a]).unwrap(), a);
        assert_eq!(union([&a, &a]).unwrap(), a);
        assert_eq!(union([&a, &b]).unwrap(), union([&b, &a]).unwrap());
        let c = SignedDigraph::new(2);
        assert!(matches!(union([&a, &c]), Err(Error::DimensionMismatch { .. })));
    }

    #[test]
    fn connectivity_examples() {
        let cycle = SignedDigraph::from_arcs(3, arcs(&[(0, 1, Positive), (1, 2, Positive), (2, 0, Positive)])).unwrap();
        assert!(cycle.is_strongly_connected());
        assert!(cycle.is_rooted());
        let isolated = SignedDigraph::new(2);
        assert!(!isolated.is_strongly_connected());
        assert!(!isolated.is_rooted());
        let star = SignedDigraph::from_arcs(4, arcs(&[(0, 1, Positive), (0, 2, Negative), (0, 3, Positive)])).unwrap();
        assert!(star.is_rooted() && !star.is_strongly_connected());
        let two_pairs = SignedDigraph::from_arcs(
            4,
            arcs(&[(0, 1, Positive), (1, 0, Positive), (2, 3, Positive), (3, 2, Negative)]),
        )
        .unwrap();
        assert!(!two_pairs.is_rooted());
        assert!(!two_pairs.is_weakly_connected());
    }

    #[test]
    fn eccentricities_of_cycle() {
        let mut d = Digraph::new(4);
        for i in 0..4 {
            d.add_arc(i, (i + 1) % 4);
        }
        assert_eq!(d.eccentricities(), Some(vec![3; 4]));
        d = Digraph::new(2);
        d.add_arc(0, 1);
        assert_eq!(d.eccentricities(), None);
    }

    #[test]
    fn clustering_is_canonical() {
        let b = Clustering::new(vec![Negative, Positive, Negative]);
        assert_eq!(b.values(), vec![1, -1, 1]);
        assert_eq!(b.to_string(), "(+1,-1,+1)");
        let gauge = b.gauge_matrix();
        assert_eq!(&gauge * &gauge, crate::Matrix::identity(3, 3));
        assert!(Clustering::from_values(&[1, 0]).is_err());
    }
}
