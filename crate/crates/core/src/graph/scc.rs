use std::cmp::Reverse;
use std::collections::BinaryHeap;

use serde::Serialize;

use super::Digraph;

/// Strongly connected components and their acyclic component graph.
///
/// Components are numbered in topological order of the condensation, ties
/// broken by the smallest contained vertex. Vertex lists are sorted.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Condensation {
    components: Vec<Vec<usize>>,
    component_of: Vec<usize>,
    successors: Vec<Vec<usize>>,
}

impl Condensation {
    pub(crate) fn of(g: &Digraph) -> Self {
        let raw = tarjan(g);
        let mut raw_of = vec![0; g.n()];
        for (c, comp) in raw.iter().enumerate() {
            for &v in comp {
                raw_of[v] = c;
            }
        }

        let k = raw.len();
        let mut raw_succ = vec![Vec::new(); k];
        let mut indegree = vec![0usize; k];
        for u in 0..g.n() {
            for &v in g.successors(u) {
                let (cu, cv) = (raw_of[u], raw_of[v]);
                if cu != cv && !raw_succ[cu].contains(&cv) {
                    raw_succ[cu].push(cv);
                    indegree[cv] += 1;
                }
            }
        }

        // Kahn's algorithm keyed on the smallest vertex of each component.
        let min_vertex: Vec<usize> = raw.iter().map(|c| *c.iter().min().unwrap()).collect();
        let mut heap: BinaryHeap<Reverse<(usize, usize)>> = (0..k)
            .filter(|&c| indegree[c] == 0)
            .map(|c| Reverse((min_vertex[c], c)))
            .collect();
        let mut new_id = vec![usize::MAX; k];
        let mut order = Vec::with_capacity(k);
        while let Some(Reverse((_, c))) = heap.pop() {
            new_id[c] = order.len();
            order.push(c);
            for &d in &raw_succ[c] {
                indegree[d] -= 1;
                if indegree[d] == 0 {
                    heap.push(Reverse((min_vertex[d], d)));
                }
            }
        }

        let components = order
            .iter()
            .map(|&c| {
                let mut comp = raw[c].clone();
                comp.sort_unstable();
                comp
            })
            .collect();
        let component_of = raw_of.iter().map(|&c| new_id[c]).collect();
        let successors = order
            .iter()
            .map(|&c| {
                let mut s: Vec<usize> = raw_succ[c].iter().map(|&d| new_id[d]).collect();
                s.sort_unstable();
                s
            })
            .collect();
        Condensation {
            components,
            component_of,
            successors,
        }
    }

    pub fn components(&self) -> &[Vec<usize>] {
        &self.components
    }

    pub fn len(&self) -> usize {
        self.components.len()
    }

    pub fn is_empty(&self) -> bool {
        self.components.is_empty()
    }

    pub fn component_of(&self, v: usize) -> usize {
        self.component_of[v]
    }

    /// Successor components in the condensation DAG.
    pub fn successors(&self, c: usize) -> &[usize] {
        &self.successors[c]
    }

    /// Components with no incoming condensation arc.
    pub fn sources(&self) -> Vec<usize> {
        let mut has_pred = vec![false; self.len()];
        for out in &self.successors {
            for &d in out {
                has_pred[d] = true;
            }
        }
        (0..self.len()).filter(|&c| !has_pred[c]).collect()
    }
}

#[derive(Serialize)]
struct CondensationJson {
    components: Vec<Vec<usize>>,
    arcs: Vec<(usize, usize)>,
}

impl Serialize for Condensation {
    fn serialize<S: serde::Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        CondensationJson {
            components: self
                .components
                .iter()
                .map(|c| c.iter().map(|v| v + 1).collect())
                .collect(),
            arcs: self
                .successors
                .iter()
                .enumerate()
                .flat_map(|(c, out)| out.iter().map(move |&d| (c, d)))
                .collect(),
        }
        .serialize(serializer)
    }
}

/// Iterative Tarjan. Components come out in reverse topological order.
fn tarjan(g: &Digraph) -> Vec<Vec<usize>> {
    const UNSEEN: usize = usize::MAX;
    let n = g.n();
    let mut index = vec![UNSEEN; n];
    let mut low = vec![0; n];
    let mut on_stack = vec![false; n];
    let mut stack = Vec::new();
    let mut components = Vec::new();
    let mut next = 0;
    let mut call: Vec<(usize, usize)> = Vec::new();

    for root in 0..n {
        if index[root] != UNSEEN {
            continue;
        }
        index[root] = next;
        low[root] = next;
        next += 1;
        stack.push(root);
        on_stack[root] = true;
        call.push((root, 0));

        while let Some(top) = call.last_mut() {
            let (v, pos) = *top;
            if let Some(&w) = g.successors(v).get(pos) {
                top.1 += 1;
                if index[w] == UNSEEN {
                    index[w] = next;
                    low[w] = next;
                    next += 1;
                    stack.push(w);
                    on_stack[w] = true;
                    call.push((w, 0));
                } else if on_stack[w] {
                    low[v] = low[v].min(index[w]);
                }
            } else {
                call.pop();
                if let Some(&(u, _)) = call.last() {
                    low[u] = low[u].min(low[v]);
                }
                if low[v] == index[v] {
                    let mut comp = Vec::new();
                    loop {
                        let w = stack.pop().unwrap();
                        on_stack[w] = false;
                        comp.push(w);
                        if w == v {
                            break;
                        }
                    }
                    components.push(comp);
                }
            }
        }
    }
    components
}
