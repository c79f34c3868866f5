//! Fixture matrices and random instance generators for tests and benches.

use rand::seq::SliceRandom;
use rand::Rng;

use crate::graph::{check_balance, Arc, Clustering, Sign, SignedDigraph};
use crate::weight::{validate, SwitchingSignal, WeightMatrix, DEFAULT_ROW_SUM_TOL};
use crate::Matrix;

/// `A(2k-1)` of the alternating 3-agent example.
pub fn alternating_odd() -> WeightMatrix {
    WeightMatrix::from_rows(&[
        vec![0.5, 0.0, 0.5],
        vec![-0.5, 0.5, 0.0],
        vec![0.0, -0.5, 0.5],
    ])
    .expect("fixture is valid")
}

/// `A(2k)` of the alternating 3-agent example.
pub fn alternating_even() -> WeightMatrix {
    WeightMatrix::from_rows(&[
        vec![0.5, 0.0, -0.5],
        vec![0.5, 0.5, 0.0],
        vec![0.0, -0.5, 0.5],
    ])
    .expect("fixture is valid")
}

/// Period-2 signal alternating the two example matrices, starting odd.
pub fn alternating_signal() -> SwitchingSignal {
    SwitchingSignal::periodic(vec![alternating_odd(), alternating_even()]).expect("fixture is valid")
}

/// How arc signs are drawn for a random graph.
#[derive(Debug, Clone)]
pub enum SignRule {
    /// Signs consistent with the clustering.
    Balanced(Clustering),
    /// Balanced w.r.t. a random clustering, then one arc flipped. On a
    /// strongly connected graph this always yields an unbalanced graph.
    Unbalanced,
    /// Independent fair coin per arc.
    Random,
}

pub fn random_clustering<R: Rng>(rng: &mut R, n: usize) -> Clustering {
    Clustering::new(
        (0..n)
            .map(|_| if rng.random_bool(0.5) { Sign::Positive } else { Sign::Negative })
            .collect(),
    )
}

/// Random strongly connected simple signed digraph: a random Hamiltonian
/// cycle plus each other ordered pair with probability `density`.
pub fn random_strongly_connected<R: Rng>(rng: &mut R, n: usize, density: f64, rule: &SignRule) -> SignedDigraph {
    let mut order: Vec<usize> = (0..n).collect();
    order.shuffle(rng);
    let mut pairs = Vec::new();
    if n > 1 {
        for k in 0..n {
            pairs.push((order[k], order[(k + 1) % n]));
        }
    }
    for i in 0..n {
        for j in 0..n {
            if i != j && !pairs.contains(&(i, j)) && rng.random_bool(density) {
                pairs.push((i, j));
            }
        }
    }

    let reference = match rule {
        SignRule::Balanced(b) => Some(b.clone()),
        SignRule::Unbalanced => Some(random_clustering(rng, n)),
        SignRule::Random => None,
    };
    let mut arcs: Vec<Arc> = pairs
        .iter()
        .map(|&(i, j)| {
            let sign = match &reference {
                Some(b) => b.sign(i) * b.sign(j),
                None => {
                    if rng.random_bool(0.5) {
                        Sign::Positive
                    } else {
                        Sign::Negative
                    }
                }
            };
            Arc::new(i, j, sign)
        })
        .collect();
    if matches!(rule, SignRule::Unbalanced) && !arcs.is_empty() {
        let k = rng.random_range(0..arcs.len());
        arcs[k].sign = arcs[k].sign.flip();
    }
    SignedDigraph::from_arcs(n, arcs).expect("generated arcs are valid")
}

/// Random weights realising a simple signed digraph: each row draws
/// magnitudes uniformly in `[1, 3]` over its in-neighbours (and itself) and
/// normalises them, so `beta >= 1 / (3 * max in-degree)`.
pub fn random_weights<R: Rng>(rng: &mut R, g: &SignedDigraph) -> WeightMatrix {
    assert!(g.is_simple(), "weights realise simple graphs only");
    let n = g.n();
    let mut m = Matrix::zeros(n, n);
    for i in 0..n {
        let mut total = 0.0;
        for j in 0..n {
            if let Some(sign) = g.signs_between(j, i).next() {
                let w: f64 = rng.random_range(1.0..3.0);
                m[(i, j)] = sign.as_f64() * w;
                total += w;
            }
        }
        for j in 0..n {
            m[(i, j)] /= total;
        }
    }
    validate(m, None, DEFAULT_ROW_SUM_TOL).expect("normalised weights are valid")
}

/// Random rooted but not strongly connected instance.
///
/// The first `root_size` vertices (before the final relabelling) form a
/// strongly connected root class whose induced graph is balanced or not as
/// requested; every other vertex is reached from earlier ones and no arc
/// enters the root class from outside. Returns the weights and the root set.
pub fn random_rooted_not_strongly_connected<R: Rng>(
    rng: &mut R,
    n: usize,
    root_size: usize,
    root_balanced: bool,
) -> (WeightMatrix, Vec<usize>) {
    assert!(root_size >= 1 && root_size < n);
    assert!(root_balanced || root_size >= 2, "a single vertex is always balanced");
    let rule = if root_balanced {
        SignRule::Balanced(random_clustering(rng, root_size))
    } else {
        SignRule::Unbalanced
    };
    let root = random_strongly_connected(rng, root_size, 0.3, &rule);
    debug_assert_eq!(check_balance(&root).is_balanced(), root_balanced);

    let mut labels: Vec<usize> = (0..n).collect();
    labels.shuffle(rng);
    let sign = |rng: &mut R| if rng.random_bool(0.5) { Sign::Positive } else { Sign::Negative };

    let mut arcs: Vec<Arc> = root
        .non_self_arcs()
        .map(|a| Arc::new(labels[a.from], labels[a.to], a.sign))
        .collect();
    for v in root_size..n {
        let parent = rng.random_range(0..v);
        arcs.push(Arc::new(labels[parent], labels[v], sign(rng)));
        // Extra in-arcs from anywhere; none ever enter the root class.
        for u in 0..n {
            if u != v && u != parent && rng.random_bool(0.2) {
                arcs.push(Arc::new(labels[u], labels[v], sign(rng)));
            }
        }
    }
    let g = SignedDigraph::from_arcs(n, arcs).expect("generated arcs are valid");
    let mut roots: Vec<usize> = (0..root_size).map(|v| labels[v]).collect();
    roots.sort_unstable();
    (random_weights(rng, &g), roots)
}

/// Uniform direction on the unit sphere in `R^n`.
pub fn random_unit_vector<R: Rng>(rng: &mut R, n: usize) -> crate::Vector {
    use rand_distr::{Distribution, StandardNormal};
    loop {
        let v = crate::Vector::from_fn(n, |_, _| StandardNormal.sample(rng));
        let norm = v.norm();
        if norm > 1e-12 {
            return v / norm;
        }
    }
}
