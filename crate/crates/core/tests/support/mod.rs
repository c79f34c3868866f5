//! Independent reference computations for the integration tests. None of
//! these call into the algorithms they are used to check.
#![allow(dead_code)]

use altafini_core::fixtures::{random_clustering, random_strongly_connected, random_weights, SignRule};
use altafini_core::graph::{Arc, Sign, SignedDigraph};
use altafini_core::weight::{validate, SwitchingSignal, WeightMatrix, DEFAULT_ROW_SUM_TOL};
use altafini_core::Matrix;
use nalgebra::Complex;
use rand::Rng;

/// All clusterings with `b_1 = +1` under which every arc has sign
/// `b_from * b_to`, by enumeration of `2^(n-1)` candidates.
pub fn brute_force_clusterings(g: &SignedDigraph) -> Vec<Vec<i8>> {
    let n = g.n();
    (0..1u64 << (n - 1))
        .map(|mask| {
            (0..n)
                .map(|i| if i > 0 && (mask >> (i - 1)) & 1 == 1 { -1 } else { 1 })
                .collect::<Vec<i8>>()
        })
        .filter(|b| {
            g.arcs().all(|a| {
                let product = b[a.from] * b[a.to];
                match a.sign {
                    Sign::Positive => product == 1,
                    Sign::Negative => product == -1,
                }
            })
        })
        .collect()
}

/// A simple directed cycle as `(vertices, signs)`, rotated so the smallest
/// vertex comes first; `signs[k]` labels the arc leaving `vertices[k]`.
pub type SignedCycle = (Vec<usize>, Vec<Sign>);

/// Every simple directed cycle of length >= 2, one entry per choice of arc
/// sign where parallel arcs exist.
pub fn simple_directed_cycles(g: &SignedDigraph) -> Vec<SignedCycle> {
    let n = g.n();
    let mut out = Vec::new();
    let mut path = Vec::new();
    for start in 0..n {
        path.clear();
        path.push(start);
        extend(g, start, &mut path, &mut out);
    }
    out
}

fn extend(g: &SignedDigraph, start: usize, path: &mut Vec<usize>, out: &mut Vec<SignedCycle>) {
    let last = *path.last().unwrap();
    for next in 0..g.n() {
        if next == last || !g.has_any_arc(last, next) {
            continue;
        }
        if next == start && path.len() >= 2 {
            let mut closed = path.clone();
            closed.push(start);
            for signs in sign_choices(g, &closed) {
                out.push((path.clone(), signs));
            }
        } else if next > start && !path.contains(&next) {
            path.push(next);
            extend(g, start, path, out);
            path.pop();
        }
    }
}

fn sign_choices(g: &SignedDigraph, closed: &[usize]) -> Vec<Vec<Sign>> {
    let mut acc = vec![Vec::new()];
    for w in closed.windows(2) {
        let options: Vec<Sign> = [Sign::Positive, Sign::Negative]
            .into_iter()
            .filter(|&s| g.has_arc(w[0], w[1], s))
            .collect();
        acc = acc
            .into_iter()
            .flat_map(|prefix| {
                options.iter().map(move |&s| {
                    let mut p = prefix.clone();
                    p.push(s);
                    p
                })
            })
            .collect();
    }
    acc
}

pub fn is_negative(cycle: &SignedCycle) -> bool {
    cycle.1.iter().filter(|s| **s == Sign::Negative).count() % 2 == 1
}

/// Rotates a directed cycle so its smallest vertex is first.
pub fn canonical_rotation(vertices: &[usize], signs: &[Sign]) -> SignedCycle {
    let k = (0..vertices.len()).min_by_key(|&k| vertices[k]).unwrap();
    let rot = |i: usize| (i + k) % vertices.len();
    (
        (0..vertices.len()).map(|i| vertices[rot(i)]).collect(),
        (0..signs.len()).map(|i| signs[rot(i)]).collect(),
    )
}

/// Reachability closure (Floyd–Warshall) of the graph with an arc `j -> i`
/// whenever `m[(i, j)] > 0`. Entry `[u][v]` is true when `v` is reachable
/// from `u`.
pub fn reachability(m: &Matrix) -> Vec<Vec<bool>> {
    let n = m.nrows();
    let mut r = vec![vec![false; n]; n];
    for i in 0..n {
        r[i][i] = true;
        for j in 0..n {
            if m[(i, j)] > 0.0 {
                r[j][i] = true;
            }
        }
    }
    for k in 0..n {
        for u in 0..n {
            if r[u][k] {
                let via = r[k].clone();
                for (target, reach) in r[u].iter_mut().zip(via) {
                    *target |= reach;
                }
            }
        }
    }
    r
}

/// Strongly connected components from a reachability closure, each sorted,
/// ordered by smallest member.
pub fn components_from_reachability(r: &[Vec<bool>]) -> Vec<Vec<usize>> {
    let n = r.len();
    let mut seen = vec![false; n];
    let mut comps = Vec::new();
    for u in 0..n {
        if seen[u] {
            continue;
        }
        let comp: Vec<usize> = (0..n).filter(|&v| r[u][v] && r[v][u]).collect();
        for &v in &comp {
            seen[v] = true;
        }
        comps.push(comp);
    }
    comps
}

/// Characteristic polynomial coefficients `c_0 = 1, c_1, ..., c_n` of
/// `det(λI - M) = sum c_k λ^(n-k)` by the Faddeev–LeVerrier recursion.
pub fn characteristic_polynomial(m: &Matrix) -> Vec<f64> {
    let n = m.nrows();
    let mut coeffs = vec![1.0];
    let mut mk = Matrix::zeros(n, n);
    let identity = Matrix::identity(n, n);
    for k in 1..=n {
        mk = m * (&mk + &identity * coeffs[k - 1]);
        coeffs.push(-mk.trace() / k as f64);
    }
    coeffs
}

/// Roots of a monic polynomial (coefficients highest degree first) by the
/// Aberth–Ehrlich simultaneous iteration.
pub fn polynomial_roots(coeffs: &[f64]) -> Vec<Complex<f64>> {
    let degree = coeffs.len() - 1;
    if degree == 0 {
        return Vec::new();
    }
    let eval = |z: Complex<f64>| {
        let mut p = Complex::new(0.0, 0.0);
        let mut dp = Complex::new(0.0, 0.0);
        for &c in coeffs {
            dp = dp * z + p;
            p = p * z + c;
        }
        (p, dp)
    };
    let radius = 1.0 + coeffs[1..].iter().map(|c| c.abs()).fold(0.0, f64::max);
    let mut z: Vec<Complex<f64>> = (0..degree)
        .map(|k| Complex::from_polar(0.5 * radius, 0.4 + 2.0 * std::f64::consts::PI * k as f64 / degree as f64))
        .collect();
    for _ in 0..2000 {
        let mut moved: f64 = 0.0;
        for k in 0..degree {
            let (p, dp) = eval(z[k]);
            if p.norm() == 0.0 {
                continue;
            }
            let ratio = p / dp;
            let repulsion: Complex<f64> = (0..degree)
                .filter(|&j| j != k)
                .map(|j| Complex::new(1.0, 0.0) / (z[k] - z[j]))
                .sum();
            let step = ratio / (Complex::new(1.0, 0.0) - ratio * repulsion);
            z[k] -= step;
            moved = moved.max(step.norm());
        }
        if moved < 1e-15 {
            break;
        }
    }
    z
}

pub fn sorted_moduli(ev: impl IntoIterator<Item = Complex<f64>>) -> Vec<f64> {
    let mut m: Vec<f64> = ev.into_iter().map(|z| z.norm()).collect();
    m.sort_by(|a, b| b.total_cmp(a));
    m
}

/// Eigenvalue moduli from nalgebra's real Schur decomposition.
pub fn nalgebra_moduli(m: &Matrix) -> Vec<f64> {
    sorted_moduli(m.complex_eigenvalues().iter().copied())
}

/// Eigenvalue moduli from the characteristic polynomial.
pub fn charpoly_moduli(m: &Matrix) -> Vec<f64> {
    sorted_moduli(polynomial_roots(&characteristic_polynomial(m)))
}

pub fn max_gap(a: &[f64], b: &[f64]) -> f64 {
    assert_eq!(a.len(), b.len());
    a.iter().zip(b).map(|(x, y)| (x - y).abs()).fold(0.0, f64::max)
}

/// Splits the arcs of `g` at random over `parts` graphs, each keeping the
/// self-arcs, and realises each part with random weights.
pub fn split_into_period<R: Rng>(rng: &mut R, g: &SignedDigraph, parts: usize) -> SwitchingSignal {
    let n = g.n();
    let mut buckets: Vec<Vec<Arc>> = vec![Vec::new(); parts];
    for arc in g.non_self_arcs() {
        buckets[rng.random_range(0..parts)].push(arc);
    }
    let period = buckets
        .into_iter()
        .map(|arcs| random_weights(rng, &SignedDigraph::from_arcs(n, arcs).unwrap()))
        .collect();
    SwitchingSignal::periodic(period).unwrap()
}

/// Random strongly connected weight matrix with a given sign rule.
pub fn random_sc_matrix<R: Rng>(rng: &mut R, n: usize, rule: &SignRule) -> WeightMatrix {
    let density = rng.random_range(0.1..0.6);
    let g = random_strongly_connected(rng, n, density, rule);
    random_weights(rng, &g)
}

pub fn random_balanced_rule<R: Rng>(rng: &mut R, n: usize) -> SignRule {
    SignRule::Balanced(random_clustering(rng, n))
}

pub fn identity(n: usize) -> WeightMatrix {
    validate(Matrix::identity(n, n), None, DEFAULT_ROW_SUM_TOL).unwrap()
}

/// All `2^k` sign assignments of a fixed arc list.
pub fn all_sign_patterns(n: usize, pairs: &[(usize, usize)]) -> Vec<SignedDigraph> {
    (0..1u64 << pairs.len())
        .map(|mask| {
            let arcs = pairs.iter().enumerate().map(|(k, &(f, t))| {
                let sign = if (mask >> k) & 1 == 1 { Sign::Negative } else { Sign::Positive };
                Arc::new(f, t, sign)
            });
            SignedDigraph::from_arcs(n, arcs).unwrap()
        })
        .collect()
}

pub fn complete_pairs(n: usize) -> Vec<(usize, usize)> {
    (0..n).flat_map(|i| (0..n).filter(move |&j| j != i).map(move |j| (i, j))).collect()
}

pub fn ring_pairs(n: usize) -> Vec<(usize, usize)> {
    (0..n).flat_map(|i| [(i, (i + 1) % n), ((i + 1) % n, i)]).collect()
}
