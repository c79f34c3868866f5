use super::balance::{check_balance, BalanceVerdict, NegativeCycleCertificate, WalkStep};
use super::{Digraph, Sign, SignedDigraph};
use crate::error::{Error, Result};

/// A directed walk as `(vertex, sign of the arc leaving it)` pairs.
type DirectedWalk = Vec<(usize, Sign)>;

/// Finds a simple negative directed cycle in a strongly connected graph.
///
/// Returns `Ok(None)` for balanced graphs. For unbalanced graphs the negative
/// undirected cycle from [`check_balance`] is turned into a negative directed
/// closed walk by routing around its source/sink vertices with directed
/// paths, and that walk is then shortened by excising positive simple cycles
/// until a negative simple cycle remains.
pub fn find_negative_directed_cycle(g: &SignedDigraph) -> Result<Option<NegativeCycleCertificate>> {
    let digraph = g.to_digraph();
    if !digraph.is_strongly_connected() {
        return Err(Error::NotStronglyConnected);
    }
    let undirected = match check_balance(g) {
        BalanceVerdict::Balanced { .. } => return Ok(None),
        BalanceVerdict::Unbalanced { certificate } => certificate,
    };
    let walk = negative_closed_walk(g, &digraph, &undirected)?;
    let cycle = reduce_to_negative_cycle(walk)?;
    let certificate = NegativeCycleCertificate::new(
        cycle.iter().map(|&(v, _)| v).collect(),
        cycle.iter().map(|&(_, sign)| WalkStep { forward: true, sign }).collect(),
    );
    if !certificate.verify(g) || !certificate.is_simple() {
        return Err(Error::InternalInconsistency(
            "cycle reduction produced an invalid certificate".into(),
        ));
    }
    Ok(Some(certificate))
}

fn negative_count(walk: &[(usize, Sign)]) -> usize {
    walk.iter().filter(|(_, s)| s.is_negative()).count()
}

/// Directed path `from -> to` along shortest hops, preferring positive arcs
/// where both signs are present.
fn directed_path(g: &SignedDigraph, digraph: &Digraph, from: usize, to: usize) -> DirectedWalk {
    let vertices = digraph
        .shortest_path(from, to)
        .expect("strongly connected graph has all paths");
    vertices
        .windows(2)
        .map(|w| {
            let sign = g.signs_between(w[0], w[1]).next().unwrap();
            (w[0], sign)
        })
        .collect()
}

/// Negative directed closed walk built from a negative undirected cycle.
fn negative_closed_walk(
    g: &SignedDigraph,
    digraph: &Digraph,
    cycle: &NegativeCycleCertificate,
) -> Result<DirectedWalk> {
    let m = cycle.len();
    let vs = cycle.vertices();
    let steps = cycle.steps();
    let at = |k: usize| vs[k % m];

    if steps.iter().all(|s| s.forward) {
        return Ok((0..m).map(|k| (vs[k], steps[k].sign)).collect());
    }
    if steps.iter().all(|s| !s.forward) {
        // Reverse traversal: v0 -> v_{m-1} -> ... -> v1 -> v0.
        return Ok((0..m)
            .map(|k| {
                let pos = (m - k) % m;
                (vs[pos], steps[(pos + m - 1) % m].sign)
            })
            .collect());
    }

    // Sources have both incident cycle arcs leaving them, sinks both entering.
    let is_source = |k: usize| !steps[(k + m - 1) % m].forward && steps[k].forward;
    let is_sink = |k: usize| steps[(k + m - 1) % m].forward && !steps[k].forward;
    let first_source = (0..m).find(|&k| is_source(k)).expect("mixed orientation has a source");
    // Alternating source/sink positions, counted from first_source onwards.
    let special: Vec<usize> = (first_source..first_source + m)
        .filter(|&k| is_source(k % m) || is_sink(k % m))
        .collect();
    debug_assert!(special.len().is_multiple_of(2));
    let k_pairs = special.len() / 2;
    let source = |j: usize| special[2 * j];
    let sink = |j: usize| special[2 * j + 1];

    // p_plus(j): forward along the cycle from source j to sink j.
    let p_plus = |j: usize| -> DirectedWalk {
        (source(j)..sink(j)).map(|k| (at(k), steps[k % m].sign)).collect()
    };
    // p_minus(j): backward along the cycle from source j to the previous sink.
    let p_minus = |j: usize| -> DirectedWalk {
        let start = source(j) as isize;
        // Sink preceding source j, unwrapped so that it sits below source(j).
        let stop = if j == 0 { sink(k_pairs - 1) as isize - m as isize } else { sink(j - 1) as isize };
        let mut walk = Vec::new();
        let mut k = start;
        while k > stop {
            let pos = k.rem_euclid(m as isize) as usize;
            walk.push((vs[pos], steps[(pos + m - 1) % m].sign));
            k -= 1;
        }
        walk
    };

    let mut combined = Vec::new();
    for j in 0..k_pairs {
        let from = at(if j == 0 { sink(k_pairs - 1) } else { sink(j - 1) });
        let q = directed_path(g, digraph, from, at(source(j)));
        let back = p_minus(j);
        if (negative_count(&q) + negative_count(&back)) % 2 == 1 {
            let mut walk = q;
            walk.extend(back);
            return Ok(walk);
        }
        combined.extend(q);
        combined.extend(p_plus(j));
    }
    if negative_count(&combined).is_multiple_of(2) {
        return Err(Error::InternalInconsistency(
            "closed-walk construction lost the odd parity".into(),
        ));
    }
    Ok(combined)
}

/// Repeatedly excises the first simple cycle closed along the walk.
fn reduce_to_negative_cycle(mut walk: DirectedWalk) -> Result<DirectedWalk> {
    loop {
        let mut last_seen = std::collections::HashMap::new();
        let mut repeat = None;
        for (pos, &(v, _)) in walk.iter().enumerate() {
            if let Some(&first) = last_seen.get(&v) {
                repeat = Some((first, pos));
                break;
            }
            last_seen.insert(v, pos);
        }
        let Some((start, end)) = repeat else {
            return Ok(walk);
        };
        let inner: DirectedWalk = walk.drain(start..end).collect();
        if negative_count(&inner) % 2 == 1 {
            return Ok(inner);
        }
        if walk.is_empty() {
            return Err(Error::InternalInconsistency("cycle reduction emptied the walk".into()));
        }
    }
}

/// Length of the longest simple directed cycle (self-loops count as 1).
///
/// Exhaustive search; returns `None` for graphs above `max_n` vertices.
pub fn longest_directed_cycle(g: &Digraph, max_n: usize) -> Option<usize> {
    let n = g.n();
    if n > max_n {
        return None;
    }
    let mut best = 0;
    let mut on_path = vec![false; n];
    for start in 0..n {
        if g.has_arc(start, start) {
            best = best.max(1);
        }
        // Cycles whose smallest vertex is `start`.
        extend_cycles(g, start, start, 1, &mut on_path, &mut best);
        if best == n {
            break;
        }
    }
    Some(best)
}

fn extend_cycles(g: &Digraph, start: usize, v: usize, len: usize, on_path: &mut [bool], best: &mut usize) {
    on_path[v] = true;
    for &w in g.successors(v) {
        if w == start && v != start {
            *best = (*best).max(len);
        } else if w > start && !on_path[w] && *best < g.n() {
            extend_cycles(g, start, w, len + 1, on_path, best);
        }
    }
    on_path[v] = false;
}

#[cfg(test)]
mod tests {
    use super::super::Arc;
    use super::*;
    use Sign::*;

    fn graph(n: usize, arcs: &[(usize, usize, Sign)]) -> SignedDigraph {
        SignedDigraph::from_arcs(n, arcs.iter().map(|&(f, t, s)| Arc::new(f, t, s))).unwrap()
    }

    #[test]
    fn balanced_gives_none() {
        let g = graph(3, &[(0, 1, Positive), (1, 2, Negative), (2, 0, Negative)]);
        assert_eq!(find_negative_directed_cycle(&g).unwrap(), None);
    }

    #[test]
    fn mixed_two_cycle() {
        let g = graph(2, &[(0, 1, Positive), (1, 0, Negative)]);
        let c = find_negative_directed_cycle(&g).unwrap().unwrap();
        assert!(c.verify(&g) && c.is_directed() && c.is_simple());
        assert_eq!(c.len(), 2);
        assert_eq!(c.negative_count(), 1);
    }

    #[test]
    fn requires_strong_connectivity() {
        let g = graph(2, &[(0, 1, Negative)]);
        assert!(matches!(find_negative_directed_cycle(&g), Err(Error::NotStronglyConnected)));
    }

    #[test]
    fn undirected_cycle_with_sources_and_sinks() {
        // Undirected negative triangle 0-1-2 with 0 a source and 2 a sink,
        // closed into strong connectivity by a positive path 2 -> 3 -> 0.
        let g = graph(
            4,
            &[
                (0, 1, Positive),
                (1, 2, Positive),
                (0, 2, Negative),
                (2, 3, Positive),
                (3, 0, Positive),
            ],
        );
        let c = find_negative_directed_cycle(&g).unwrap().unwrap();
        assert!(c.verify(&g) && c.is_directed() && c.is_simple(), "{c:?}");
    }

    #[test]
    fn opposite_parallel_arcs() {
        let g = graph(
            3,
            &[
                (2, 0, Positive),
                (2, 0, Negative),
                (0, 1, Positive),
                (1, 2, Negative),
            ],
        );
        let c = find_negative_directed_cycle(&g).unwrap().unwrap();
        assert!(c.verify(&g) && c.is_directed() && c.is_simple());
    }

    #[test]
    fn reduction_excises_positive_loops() {
        // walk 0 -+-> 1 -+-> 0 -(-)-> 2 -+-> 0 : positive 2-cycle then negative 2-cycle
        let walk = vec![(0, Positive), (1, Positive), (0, Negative), (2, Positive)];
        let cycle = reduce_to_negative_cycle(walk).unwrap();
        assert_eq!(cycle, vec![(0, Negative), (2, Positive)]);
    }

    #[test]
    fn longest_cycle() {
        let mut d = Digraph::new(4);
        for i in 0..4 {
            d.add_arc(i, i);
        }
        assert_eq!(longest_directed_cycle(&d, 10), Some(1));
        d.add_arc(0, 1);
        d.add_arc(1, 0);
        assert_eq!(longest_directed_cycle(&d, 10), Some(2));
        d.add_arc(1, 2);
        d.add_arc(2, 3);
        d.add_arc(3, 0);
        assert_eq!(longest_directed_cycle(&d, 10), Some(4));
        assert_eq!(longest_directed_cycle(&d, 3), None);
    }
}
