use std::collections::VecDeque;

use serde::Serialize;

use super::{Clustering, Sign, SignedDigraph};
use crate::error::{Error, Result};

/// One step of a closed walk: it connects `vertices[k]` to `vertices[k+1]`
/// (cyclically). `forward` means the arc points the way the walk goes.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct WalkStep {
    pub forward: bool,
    pub sign: Sign,
}

/// A closed walk with an odd number of negative arcs.
///
/// Produced either as an undirected walk (from a two-coloring conflict) or
/// as a simple directed cycle (every step forward).
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct NegativeCycleCertificate {
    vertices: Vec<usize>,
    steps: Vec<WalkStep>,
}

impl NegativeCycleCertificate {
    pub fn new(vertices: Vec<usize>, steps: Vec<WalkStep>) -> Self {
        assert_eq!(vertices.len(), steps.len(), "one step per vertex in a closed walk");
        assert!(!vertices.is_empty(), "empty closed walk");
        NegativeCycleCertificate { vertices, steps }
    }

    pub fn vertices(&self) -> &[usize] {
        &self.vertices
    }

    pub fn steps(&self) -> &[WalkStep] {
        &self.steps
    }

    pub fn len(&self) -> usize {
        self.vertices.len()
    }

    pub fn is_empty(&self) -> bool {
        self.vertices.is_empty()
    }

    pub fn negative_count(&self) -> usize {
        self.steps.iter().filter(|s| s.sign.is_negative()).count()
    }

    pub fn is_directed(&self) -> bool {
        self.steps.iter().all(|s| s.forward)
    }

    /// No vertex repeats.
    pub fn is_simple(&self) -> bool {
        let mut seen = self.vertices.clone();
        seen.sort_unstable();
        seen.windows(2).all(|w| w[0] != w[1])
    }

    /// The arcs `(from, to, sign)` the walk uses, in walk order.
    pub fn arcs(&self) -> impl Iterator<Item = super::Arc> + '_ {
        let m = self.len();
        (0..m).map(move |k| {
            let (u, v) = (self.vertices[k], self.vertices[(k + 1) % m]);
            let step = self.steps[k];
            if step.forward {
                super::Arc::new(u, v, step.sign)
            } else {
                super::Arc::new(v, u, step.sign)
            }
        })
    }

    /// Every arc exists in `g` and the negative count is odd.
    pub fn verify(&self, g: &SignedDigraph) -> bool {
        self.negative_count() % 2 == 1
            && self
                .arcs()
                .all(|a| a.from < g.n() && a.to < g.n() && g.has_arc(a.from, a.to, a.sign))
    }
}

#[derive(Serialize)]
struct ArcJson {
    from: usize,
    to: usize,
    sign: Sign,
}

#[derive(Serialize)]
struct CertificateJson {
    directed: bool,
    vertices: Vec<usize>,
    arcs: Vec<ArcJson>,
    negative_count: usize,
}

impl Serialize for NegativeCycleCertificate {
    fn serialize<S: serde::Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        CertificateJson {
            directed: self.is_directed(),
            vertices: self.vertices.iter().map(|v| v + 1).collect(),
            arcs: self
                .arcs()
                .map(|a| ArcJson {
                    from: a.from + 1,
                    to: a.to + 1,
                    sign: a.sign,
                })
                .collect(),
            negative_count: self.negative_count(),
        }
        .serialize(serializer)
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum BalanceVerdict {
    Balanced { clustering: Clustering },
    Unbalanced { certificate: NegativeCycleCertificate },
}

impl BalanceVerdict {
    pub fn is_balanced(&self) -> bool {
        matches!(self, BalanceVerdict::Balanced { .. })
    }

    pub fn clustering(&self) -> Option<&Clustering> {
        match self {
            BalanceVerdict::Balanced { clustering } => Some(clustering),
            BalanceVerdict::Unbalanced { .. } => None,
        }
    }
}

/// Structural class of a weakly connected signed digraph.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
#[serde(tag = "class", rename_all = "snake_case")]
pub enum GraphClass {
    /// `C_b`: balanced with respect to the clustering `b`.
    Balanced { b: Clustering },
    /// `C_u`: structurally unbalanced.
    Unbalanced,
}

/// Whether every non-self arc `(i, j, s)` has `s = b_i * b_j`.
pub fn verify_balance(g: &SignedDigraph, b: &Clustering) -> bool {
    b.len() == g.n() && g.non_self_arcs().all(|a| a.sign == b.sign(a.from) * b.sign(a.to))
}

#[derive(Clone, Copy)]
struct Edge {
    to: usize,
    sign: Sign,
    /// Arc points from the owning vertex to `to`.
    outgoing: bool,
}

/// Two-coloring over the undirected signed edges.
///
/// Balanced graphs get the canonical clustering (lowest vertex of each weakly
/// connected component is `+1`); otherwise the first coloring conflict is
/// turned into a simple negative undirected cycle.
pub fn check_balance(g: &SignedDigraph) -> BalanceVerdict {
    let n = g.n();
    let mut adj: Vec<Vec<Edge>> = vec![Vec::new(); n];
    for a in g.non_self_arcs() {
        adj[a.from].push(Edge { to: a.to, sign: a.sign, outgoing: true });
        adj[a.to].push(Edge { to: a.from, sign: a.sign, outgoing: false });
    }

    let mut color: Vec<Option<Sign>> = vec![None; n];
    // Tree edge into each vertex, seen from the parent.
    let mut parent: Vec<Option<(usize, Edge)>> = vec![None; n];
    let mut depth = vec![0usize; n];

    for root in 0..n {
        if color[root].is_some() {
            continue;
        }
        color[root] = Some(Sign::Positive);
        let mut queue = VecDeque::from([root]);
        while let Some(u) = queue.pop_front() {
            let cu = color[u].unwrap();
            for &e in &adj[u] {
                let want = cu * e.sign;
                match color[e.to] {
                    None => {
                        color[e.to] = Some(want);
                        parent[e.to] = Some((u, e));
                        depth[e.to] = depth[u] + 1;
                        queue.push_back(e.to);
                    }
                    Some(c) if c != want => {
                        let certificate = conflict_cycle(u, e, &parent, &depth);
                        debug_assert!(certificate.verify(g));
                        return BalanceVerdict::Unbalanced { certificate };
                    }
                    Some(_) => {}
                }
            }
        }
    }

    BalanceVerdict::Balanced {
        clustering: Clustering::from_raw(color.into_iter().map(Option::unwrap).collect()),
    }
}

/// Cycle `u -> ... -> lca -> ... -> w -> u` closed by the conflicting edge
/// `e = {u, w}`.
fn conflict_cycle(
    u: usize,
    e: Edge,
    parent: &[Option<(usize, Edge)>],
    depth: &[usize],
) -> NegativeCycleCertificate {
    let w = e.to;
    let mut up_u = vec![u];
    let mut up_w = vec![w];
    let (mut a, mut b) = (u, w);
    while depth[a] > depth[b] {
        a = parent[a].unwrap().0;
        up_u.push(a);
    }
    while depth[b] > depth[a] {
        b = parent[b].unwrap().0;
        up_w.push(b);
    }
    while a != b {
        a = parent[a].unwrap().0;
        b = parent[b].unwrap().0;
        up_u.push(a);
        up_w.push(b);
    }
    // up_u ends at lca, up_w ends at lca; drop one copy.
    up_w.pop();

    let mut vertices = Vec::new();
    let mut steps = Vec::new();
    // Climb from u to the lca: each step child -> parent.
    for pair in up_u.windows(2) {
        let child = pair[0];
        let (_, tree) = parent[child].unwrap();
        vertices.push(child);
        // tree.outgoing: arc parent -> child, so the climb is forward iff
        // the arc points child -> parent.
        steps.push(WalkStep { forward: !tree.outgoing, sign: tree.sign });
    }
    // Descend from the lca to w: each step parent -> child.
    let lca = *up_u.last().unwrap();
    let mut prev = lca;
    for &child in up_w.iter().rev() {
        let (_, tree) = parent[child].unwrap();
        vertices.push(prev);
        steps.push(WalkStep { forward: tree.outgoing, sign: tree.sign });
        prev = child;
    }
    // Close w -> u through e (seen from u).
    vertices.push(w);
    steps.push(WalkStep { forward: !e.outgoing, sign: e.sign });

    NegativeCycleCertificate::new(vertices, steps)
}

/// Class `C_b` or `C_u` of a weakly connected graph.
pub fn classify_class(g: &SignedDigraph) -> Result<GraphClass> {
    if !g.is_weakly_connected() {
        return Err(Error::NotWeaklyConnected);
    }
    Ok(match check_balance(g) {
        BalanceVerdict::Balanced { clustering } => GraphClass::Balanced { b: clustering },
        BalanceVerdict::Unbalanced { .. } => GraphClass::Unbalanced,
    })
}

#[cfg(test)]
mod tests {
    use super::super::{union, Arc};
    use super::*;
    use Sign::*;

    fn graph(n: usize, arcs: &[(usize, usize, Sign)]) -> SignedDigraph {
        SignedDigraph::from_arcs(n, arcs.iter().map(|&(f, t, s)| Arc::new(f, t, s))).unwrap()
    }

    // Graphs of the alternating 3x3 example: arc j -> i carries sign(a_ij).
    fn odd_graph() -> SignedDigraph {
        graph(3, &[(2, 0, Positive), (0, 1, Negative), (1, 2, Negative)])
    }

    fn even_graph() -> SignedDigraph {
        graph(3, &[(2, 0, Negative), (0, 1, Positive), (1, 2, Negative)])
    }

    fn brute_force_clusterings(g: &SignedDigraph) -> Vec<Vec<i8>> {
        let n = g.n();
        (0..1u32 << (n - 1))
            .map(|mask| {
                std::iter::once(1)
                    .chain((1..n).map(|i| if mask >> (i - 1) & 1 == 1 { -1 } else { 1 }))
                    .collect::<Vec<i8>>()
            })
            .filter(|b| {
                g.non_self_arcs()
                    .all(|a| (a.sign == Positive) == (b[a.from] == b[a.to]))
            })
            .collect()
    }

    #[test]
    fn all_positive_is_balanced_with_ones() {
        let g = graph(3, &[(0, 1, Positive), (1, 2, Positive), (2, 0, Positive)]);
        let verdict = check_balance(&g);
        assert_eq!(verdict.clustering().unwrap().values(), vec![1, 1, 1]);
        assert!(verify_balance(&g, &Clustering::all_positive(3)));
        assert_eq!(
            classify_class(&g).unwrap(),
            GraphClass::Balanced { b: Clustering::all_positive(3) }
        );
    }

    #[test]
    fn alternating_example_graphs() {
        assert_eq!(brute_force_clusterings(&odd_graph()), vec![vec![1, -1, 1]]);
        let verdict = check_balance(&odd_graph());
        assert_eq!(verdict.clustering().unwrap().values(), vec![1, -1, 1]);

        let even = even_graph();
        assert!(verify_balance(&even, &Clustering::from_values(&[1, 1, -1]).unwrap()));
        assert!(!verify_balance(&even, &Clustering::from_values(&[1, -1, 1]).unwrap()));
        assert_eq!(check_balance(&even).clustering().unwrap().values(), vec![1, 1, -1]);
    }

    #[test]
    fn union_example_is_unbalanced_via_parallel_arcs() {
        let u = union([&odd_graph(), &even_graph()]).unwrap();
        assert!(brute_force_clusterings(&u).is_empty());
        match check_balance(&u) {
            BalanceVerdict::Unbalanced { certificate } => {
                assert!(certificate.verify(&u));
                // Both 1 -> 2 and 3 -> 1 carry opposite-signed parallel arcs.
                assert_eq!(certificate.len(), 2);
                let mut vs = certificate.vertices().to_vec();
                vs.sort_unstable();
                assert!(vs == vec![0, 1] || vs == vec![0, 2], "{vs:?}");
            }
            other => panic!("expected unbalanced, got {other:?}"),
        }
        assert_eq!(classify_class(&u).unwrap(), GraphClass::Unbalanced);
    }

    #[test]
    fn canonical_clustering_per_component() {
        let g = graph(4, &[(0, 1, Negative), (3, 2, Negative)]);
        let b = check_balance(&g).clustering().unwrap().clone();
        assert_eq!(b.values(), vec![1, -1, 1, -1]);
        assert!(matches!(classify_class(&g), Err(Error::NotWeaklyConnected)));
    }

    #[test]
    fn single_vertex() {
        let g = SignedDigraph::new(1);
        assert_eq!(check_balance(&g).clustering().unwrap().values(), vec![1]);
    }

    #[test]
    fn longer_conflict_cycle_is_simple() {
        // Square with one negative edge plus a positive chord.
        let g = graph(
            5,
            &[
                (0, 1, Positive),
                (2, 1, Positive),
                (2, 3, Positive),
                (3, 4, Positive),
                (0, 4, Negative),
            ],
        );
        match check_balance(&g) {
            BalanceVerdict::Unbalanced { certificate } => {
                assert!(certificate.verify(&g));
                assert!(certificate.is_simple());
                assert_eq!(certificate.len(), 5);
            }
            other => panic!("expected unbalanced, got {other:?}"),
        }
    }
}
