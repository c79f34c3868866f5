//! Absolute probability sequences, convergence-rate bounds and empirical
//! contraction rates.
//!
//! For a stochastic sequence `S(t)` whose graphs are strongly connected with
//! positive diagonals and nonzero entries at least `β`, deviations from
//! consensus shrink at least as fast as `ρ^t` with `ρ = 1 - δβ²/(4p*)`,
//! where `δ` bounds an absolute probability sequence from below and `p*` is
//! the largest shortest-path depth of the graphs.

use serde::Serialize;

use crate::dynamics::Trajectory;
use crate::error::{Error, Result};
use crate::graph::{check_balance, longest_directed_cycle, Clustering, Digraph, SignedDigraph};
use crate::lifting::{lift, lifted_graph};
use crate::weight::{SwitchingSignal, WeightMatrix};
use crate::{Matrix, Vector};

/// Power iteration stopping tolerance on successive iterates.
pub const PERRON_TOL: f64 = 1e-14;
pub const PERRON_MAX_ITERATIONS: usize = 100_000;
/// Graphs above this size skip the exhaustive longest-cycle search.
pub const LONGEST_CYCLE_MAX_N: usize = 16;

/// Stochastic vectors `π(1), ..., π(L + P)` with `π'(t) = π'(t+1) S(t)`,
/// where `π(L + P + 1) = π(L + 1)` closes the period.
#[derive(Debug, Clone, Serialize)]
pub struct AbsoluteProbabilitySequence {
    pub lifted: bool,
    pub prefix_len: usize,
    pub period_len: usize,
    #[serde(serialize_with = "serialize_vectors")]
    pub pis: Vec<Vector>,
    /// Minimum entry over one period after the prefix.
    pub delta: f64,
    /// Minimum entry over the prefix, when there is one.
    pub prefix_delta: Option<f64>,
    pub perron_iterations: usize,
}

fn serialize_vectors<S: serde::Serializer>(vs: &[Vector], s: S) -> std::result::Result<S::Ok, S::Error> {
    use serde::ser::SerializeSeq;
    let mut seq = s.serialize_seq(Some(vs.len()))?;
    for v in vs {
        seq.serialize_element(v.as_slice())?;
    }
    seq.end()
}

impl AbsoluteProbabilitySequence {
    /// `π(t)` for any `t >= 1`.
    pub fn pi(&self, t: usize) -> &Vector {
        assert!(t >= 1, "time starts at 1");
        let idx = if t <= self.prefix_len {
            t - 1
        } else {
            self.prefix_len + (t - 1 - self.prefix_len) % self.period_len
        };
        &self.pis[idx]
    }

    /// Largest `|π'(t+1) S(t) - π'(t)|` over the represented steps.
    pub fn identity_residual(&self, s: &SwitchingSignal) -> f64 {
        (1..=self.prefix_len + self.period_len)
            .map(|t| {
                let st = stochastic_matrix(s.matrix_at(t), self.lifted);
                (st.tr_mul(self.pi(t + 1)) - self.pi(t)).amax()
            })
            .fold(0.0, f64::max)
    }
}

/// `|A|` or `Ā`.
fn stochastic_matrix(a: &WeightMatrix, lifted: bool) -> Matrix {
    if lifted {
        lift(a).into_matrix()
    } else {
        a.abs()
    }
}

fn stochastic_graph(a: &WeightMatrix, lifted: bool) -> Digraph {
    if lifted {
        lifted_graph(a)
    } else {
        a.graph().to_digraph()
    }
}

/// Left Perron vector of a primitive stochastic matrix, normalised to sum 1.
///
/// Power iteration to [`PERRON_TOL`], then one linear solve of
/// `(M' - I) π = 0, 1'π = 1` that is kept when its residual is smaller.
pub fn left_perron_vector(m: &Matrix) -> Result<(Vector, usize)> {
    let n = m.nrows();
    let mut v = Vector::from_element(n, 1.0 / n as f64);
    let mut iterations = 0;
    loop {
        iterations += 1;
        let mut next = m.tr_mul(&v);
        next /= next.sum();
        let moved = (&next - &v).amax();
        v = next;
        if moved <= PERRON_TOL {
            break;
        }
        if iterations >= PERRON_MAX_ITERATIONS {
            return Err(Error::NotConverged { what: "Perron power iteration", iterations });
        }
    }

    let residual = |p: &Vector| (m.tr_mul(p) - p).amax();
    let mut system = m.transpose() - Matrix::identity(n, n);
    system.row_mut(n - 1).fill(1.0);
    let mut rhs = Vector::zeros(n);
    rhs[n - 1] = 1.0;
    if let Some(solved) = system.lu().solve(&rhs) {
        if solved.iter().all(|&x| x >= 0.0) && residual(&solved) < residual(&v) {
            v = solved;
        }
    }
    Ok((v, iterations))
}

/// Absolute probability sequence for `{|A(t)|}` or, with `lifted`, `{Ā(t)}`.
///
/// `π(L+1)` is the left Perron vector of `S(L+P) ⋯ S(L+1)`; the remaining
/// entries follow from `π'(t) = π'(t+1) S(t)`.
pub fn absolute_probability_sequence(s: &SwitchingSignal, lifted: bool) -> Result<AbsoluteProbabilitySequence> {
    let prefix_len = s.prefix_len();
    let period_len = s.period_len();
    let first = prefix_len + 1;
    let last = prefix_len + period_len;

    let mut joint = stochastic_graph(s.matrix_at(first), lifted);
    for t in first + 1..=last {
        joint = joint.union(&stochastic_graph(s.matrix_at(t), lifted));
    }
    if !joint.is_strongly_connected() {
        return Err(Error::NotIrreducible(format!(
            "the {}graph over steps {first}..{last} is not strongly connected",
            if lifted { "lifted " } else { "" }
        )));
    }

    let matrices: Vec<Matrix> = (1..=last).map(|t| stochastic_matrix(s.matrix_at(t), lifted)).collect();
    let dim = matrices[0].nrows();
    let mut product = Matrix::identity(dim, dim);
    for m in &matrices[prefix_len..] {
        product = m * product;
    }
    let (start, perron_iterations) = left_perron_vector(&product)?;

    let mut pis = vec![Vector::zeros(dim); last];
    pis[prefix_len] = start.clone();
    let mut next = start;
    for t in (1..=last).rev() {
        if t == first {
            // Closing step; π(L+1) stays the Perron vector itself.
            next = pis[prefix_len].clone();
            continue;
        }
        let pi = matrices[t - 1].tr_mul(&next);
        pis[t - 1] = pi.clone();
        next = pi;
    }

    let min_of = |vs: &[Vector]| vs.iter().map(|v| v.min()).fold(f64::INFINITY, f64::min);
    Ok(AbsoluteProbabilitySequence {
        lifted,
        prefix_len,
        period_len,
        delta: min_of(&pis[prefix_len..]),
        prefix_delta: (prefix_len > 0).then(|| min_of(&pis[..prefix_len])),
        pis,
        perron_iterations,
    })
}

/// Both readings of the shortest-path depth of a strongly connected graph.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct PathDepth {
    /// Largest root eccentricity (the diameter); used in the bounds.
    pub max_eccentricity: usize,
    /// Smallest root eccentricity (the radius).
    pub min_eccentricity: usize,
}

/// Root eccentricities of a strongly connected digraph, floored at 1 so a
/// single vertex still yields a usable bound.
pub fn path_depth(g: &Digraph) -> Result<PathDepth> {
    if !g.is_strongly_connected() {
        return Err(Error::NotStronglyConnected);
    }
    let ecc = g.eccentricities().ok_or(Error::NotStronglyConnected)?;
    Ok(PathDepth {
        max_eccentricity: ecc.iter().copied().max().unwrap_or(0).max(1),
        min_eccentricity: ecc.iter().copied().min().unwrap_or(0).max(1),
    })
}

/// `p*`: the largest depth of a shortest-path spanning tree over all roots.
pub fn p_star(g: &SignedDigraph) -> Result<usize> {
    path_depth(&g.to_digraph()).map(|d| d.max_eccentricity)
}

#[derive(Debug, Clone, PartialEq, Serialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum RateKind {
    /// Every graph strongly connected and balanced w.r.t. `b`; bounds the
    /// consensus spread of the gauged state `b ∘ x`.
    Balanced { b: Clustering },
    /// Every graph strongly connected and unbalanced; bounds the lifted
    /// spread, i.e. `2 max |x_i|`.
    Unbalanced,
    /// Bound applied to the one-period product, reported per step as
    /// `ρ_P^(1/P)`. `b` is set when every window is balanced w.r.t. it.
    PeriodProduct { period: usize, b: Option<Clustering> },
}

/// Check of `p̄* <= 2p* + c*` for one graph of the signal.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct LiftedDepthCheck {
    pub time: usize,
    pub lifted_p_star: usize,
    pub p_star: usize,
    /// Longest directed cycle; `None` when the graph is too large to search.
    pub c_star: Option<usize>,
    pub holds: Option<bool>,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct RateBound {
    #[serde(flatten)]
    pub kind: RateKind,
    pub rho: f64,
    pub delta: f64,
    pub beta: f64,
    pub p_star: usize,
    /// `ρ` with the radius reading of `p*`.
    pub rho_min_eccentricity: f64,
    pub p_star_min_eccentricity: usize,
    pub prefix_delta: Option<f64>,
    pub lifted_depth_checks: Vec<LiftedDepthCheck>,
}

impl RateBound {
    fn new(kind: RateKind, delta: f64, beta: f64, depth: PathDepth, prefix_delta: Option<f64>) -> Result<Self> {
        let rho = rho_formula(delta, beta, depth.max_eccentricity);
        let rho_min = rho_formula(delta, beta, depth.min_eccentricity);
        if !(rho > 0.0 && rho < 1.0) {
            return Err(Error::InternalInconsistency(format!(
                "rate bound {rho} outside (0, 1) for delta={delta}, beta={beta}, p*={}",
                depth.max_eccentricity
            )));
        }
        Ok(RateBound {
            kind,
            rho,
            delta,
            beta,
            p_star: depth.max_eccentricity,
            rho_min_eccentricity: rho_min,
            p_star_min_eccentricity: depth.min_eccentricity,
            prefix_delta,
            lifted_depth_checks: Vec::new(),
        })
    }

    pub fn lifted_depth_checks_hold(&self) -> bool {
        self.lifted_depth_checks.iter().all(|c| c.holds != Some(false))
    }
}

/// `1 - δβ²/(4p*)`.
pub fn rho_formula(delta: f64, beta: f64, p_star: usize) -> f64 {
    1.0 - delta * beta * beta / (4.0 * p_star as f64)
}

fn combine_depths(depths: impl IntoIterator<Item = PathDepth>) -> PathDepth {
    depths.into_iter().fold(
        PathDepth { max_eccentricity: 1, min_eccentricity: 1 },
        |acc, d| PathDepth {
            max_eccentricity: acc.max_eccentricity.max(d.max_eccentricity),
            min_eccentricity: acc.min_eccentricity.max(d.min_eccentricity),
        },
    )
}

fn strongly_connected_at(s: &SwitchingSignal, t: usize) -> Result<SignedDigraph> {
    let g = s.matrix_at(t).graph();
    if !g.is_strongly_connected() {
        return Err(Error::HypothesisViolation {
            time: t,
            reason: "graph is not strongly connected".into(),
        });
    }
    Ok(g)
}

/// `ρ` for a signal whose graphs are all strongly connected and balanced
/// with respect to one clustering.
pub fn rate_bound_balanced(s: &SwitchingSignal) -> Result<RateBound> {
    let mut common: Option<Clustering> = None;
    let mut depths = Vec::new();
    for t in 1..=s.prefix_len() + s.period_len() {
        let g = strongly_connected_at(s, t)?;
        let b = check_balance(&g).clustering().cloned().ok_or_else(|| Error::HypothesisViolation {
            time: t,
            reason: "graph is structurally unbalanced".into(),
        })?;
        match &common {
            Some(c) if *c != b => {
                return Err(Error::HypothesisViolation {
                    time: t,
                    reason: format!("graph is balanced w.r.t. {b}, earlier graphs w.r.t. {c}"),
                })
            }
            _ => common = Some(b),
        }
        depths.push(path_depth(&g.to_digraph())?);
    }
    let aps = absolute_probability_sequence(s, false)?;
    RateBound::new(
        RateKind::Balanced { b: common.expect("signal has a matrix") },
        aps.delta,
        s.beta(),
        combine_depths(depths),
        aps.prefix_delta,
    )
}

/// `ρ̄` for a signal whose graphs are all strongly connected and unbalanced.
/// Records `p̄* <= 2p* + c*` per graph.
pub fn rate_bound_unbalanced(s: &SwitchingSignal) -> Result<RateBound> {
    let mut depths = Vec::new();
    let mut checks = Vec::new();
    for t in 1..=s.prefix_len() + s.period_len() {
        let g = strongly_connected_at(s, t)?;
        if check_balance(&g).is_balanced() {
            return Err(Error::HypothesisViolation {
                time: t,
                reason: "graph is structurally balanced".into(),
            });
        }
        let lifted = path_depth(&lifted_graph(s.matrix_at(t)))?;
        let digraph = g.to_digraph();
        let p = path_depth(&digraph)?.max_eccentricity;
        let c_star = longest_directed_cycle(&digraph, LONGEST_CYCLE_MAX_N);
        checks.push(LiftedDepthCheck {
            time: t,
            lifted_p_star: lifted.max_eccentricity,
            p_star: p,
            c_star,
            holds: c_star.map(|c| lifted.max_eccentricity <= 2 * p + c),
        });
        depths.push(lifted);
    }
    let aps = absolute_probability_sequence(s, true)?;
    let mut bound = RateBound::new(RateKind::Unbalanced, aps.delta, s.beta(), combine_depths(depths), aps.prefix_delta)?;
    bound.lifted_depth_checks = checks;
    Ok(bound)
}

/// Bound from the one-period product after the prefix, for signals whose
/// individual graphs need not satisfy the per-step hypotheses.
///
/// With a common clustering `b` over the period the product of `|A(t)|` is
/// used; otherwise the product of the lifts, which must be irreducible. `δ`,
/// `β` and `p*` are those of the product, and the reported `ρ` is per step.
pub fn rate_bound_period_product(s: &SwitchingSignal) -> Result<RateBound> {
    let first = s.prefix_len() + 1;
    let period = s.period_len();
    let joint = s.window_union_graph(first, period);
    let b = check_balance(&joint).clustering().cloned();
    let lifted = b.is_none();
    let dim = if lifted { 2 * s.n() } else { s.n() };
    let mut product = Matrix::identity(dim, dim);
    for t in first..first + period {
        product = stochastic_matrix(s.matrix_at(t), lifted) * product;
    }
    let mut graph = Digraph::new(dim);
    let mut beta = f64::INFINITY;
    for i in 0..dim {
        for j in 0..dim {
            if product[(i, j)] > 0.0 {
                graph.add_arc(j, i);
                beta = beta.min(product[(i, j)]);
            }
        }
    }
    let depth = path_depth(&graph).map_err(|_| {
        Error::NotIrreducible(format!("product over steps {first}..{} is reducible", first + period - 1))
    })?;
    let (pi, _) = left_perron_vector(&product)?;
    let mut bound = RateBound::new(RateKind::PeriodProduct { period, b }, pi.min(), beta, depth, None)?;
    let exponent = 1.0 / period as f64;
    bound.rho = bound.rho.powf(exponent);
    bound.rho_min_eccentricity = bound.rho_min_eccentricity.powf(exponent);
    Ok(bound)
}

/// Picks the per-step balanced or unbalanced bound when its hypotheses hold,
/// else the period-product bound.
pub fn rate_bound_auto(s: &SwitchingSignal) -> Result<RateBound> {
    rate_bound_balanced(s)
        .or_else(|_| rate_bound_unbalanced(s))
        .or_else(|_| rate_bound_period_product(s))
}

/// Which spread the empirical rate is fitted to.
#[derive(Debug, Clone, PartialEq, Serialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum SpreadMeasure {
    /// `max_i |x_i(t)|`, for zero-consensus regimes.
    MaxAbs,
    /// `max_i b_i x_i(t) - min_i b_i x_i(t)`, for modulus consensus w.r.t. `b`.
    Gauged { b: Clustering },
    /// `max z(t) - min z(t)`.
    Lifted,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct EmpiricalRate {
    /// Per-step contraction factor `exp(slope)`.
    pub rho: f64,
    pub measure: SpreadMeasure,
    /// Fitted times, inclusive.
    pub window: (usize, usize),
    /// Spread ratio between the window ends.
    pub contraction: f64,
}

/// Spreads at or below this fraction of the initial spread are treated as
/// round-off and excluded from the fit.
pub const SPREAD_NOISE_FLOOR: f64 = 1e-12;

/// Least-squares slope of `log spread(t)` over the last half of the
/// informative part of the trajectory, i.e. up to the last time the spread
/// is above the noise floor.
pub fn empirical_rate(traj: &Trajectory, measure: SpreadMeasure) -> Result<EmpiricalRate> {
    let spread: Vec<f64> = match &measure {
        SpreadMeasure::MaxAbs => traj.max_abs(),
        SpreadMeasure::Gauged { b } => traj.gauged_spread(b),
        SpreadMeasure::Lifted => traj.lifted_spread().to_vec(),
    };
    empirical_rate_of(&spread, measure)
}

/// [`empirical_rate`] on a precomputed spread series, `spread[0]` at `t = 1`.
pub fn empirical_rate_of(spread: &[f64], measure: SpreadMeasure) -> Result<EmpiricalRate> {
    let initial = spread.first().copied().unwrap_or(0.0);
    let floor = initial * SPREAD_NOISE_FLOOR;
    let end = spread.iter().rposition(|&v| v > floor && v > 0.0).unwrap_or(0);
    let start = end / 2;
    let contraction = match spread.get(end) {
        Some(&v) if v > 0.0 => spread[start] / v,
        _ => 1.0,
    };
    if end < 2 || contraction.is_nan() || contraction < 10.0 {
        return Err(Error::NonContracting { ratio: contraction });
    }

    let pts: Vec<(f64, f64)> = (start..=end)
        .filter(|&k| spread[k] > floor)
        .map(|k| (k as f64, spread[k].ln()))
        .collect();
    let m = pts.len() as f64;
    let mean_t = pts.iter().map(|p| p.0).sum::<f64>() / m;
    let mean_y = pts.iter().map(|p| p.1).sum::<f64>() / m;
    let sxy: f64 = pts.iter().map(|(t, y)| (t - mean_t) * (y - mean_y)).sum();
    let sxx: f64 = pts.iter().map(|(t, _)| (t - mean_t).powi(2)).sum();
    Ok(EmpiricalRate {
        rho: (sxy / sxx).exp(),
        measure,
        window: (start + 1, end + 1),
        contraction,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::dynamics::simulate;
    use crate::fixtures::{alternating_odd, alternating_signal};
    use crate::graph::{Arc, Sign};
    use crate::weight::{gauge_transform, validate, DEFAULT_ROW_SUM_TOL};

    fn uniform(n: usize) -> WeightMatrix {
        validate(Matrix::from_element(n, n, 1.0 / n as f64), None, DEFAULT_ROW_SUM_TOL).unwrap()
    }

    #[test]
    fn doubly_stochastic_gives_uniform() {
        let aps = absolute_probability_sequence(&SwitchingSignal::constant(uniform(4)), false).unwrap();
        assert!(aps.pis[0].iter().all(|&p| (p - 0.25).abs() < 1e-15));
        assert!((aps.delta - 0.25).abs() < 1e-15);
    }

    #[test]
    fn perron_vector_of_example() {
        let a = alternating_odd();
        let aps = absolute_probability_sequence(&SwitchingSignal::constant(a.clone()), false).unwrap();
        let pi = &aps.pis[0];
        assert!((a.abs().tr_mul(pi) - pi).amax() < 1e-14);
        assert!((pi.sum() - 1.0).abs() < 1e-14);
        // |A| is doubly stochastic here too.
        assert!(pi.iter().all(|&p| (p - 1.0 / 3.0).abs() < 1e-14));
    }

    #[test]
    fn periodic_sequence_identity() {
        let s = alternating_signal();
        for lifted in [false, true] {
            let aps = absolute_probability_sequence(&s, lifted).unwrap();
            assert_eq!(aps.pis.len(), 2);
            assert!(aps.identity_residual(&s) < 1e-12);
            assert!(aps.delta > 0.0);
            for pi in &aps.pis {
                assert!((pi.sum() - 1.0).abs() < 1e-12);
            }
        }
    }

    #[test]
    fn prefix_is_propagated_backwards() {
        let a = WeightMatrix::from_rows(&[vec![0.9, 0.1], vec![0.2, 0.8]]).unwrap();
        let s = SwitchingSignal::eventually_periodic(vec![uniform(2), a.clone()], vec![alternating_odd_2(), a]).unwrap();
        let aps = absolute_probability_sequence(&s, false).unwrap();
        assert_eq!(aps.pis.len(), 4);
        assert!(aps.prefix_delta.is_some());
        assert!(aps.identity_residual(&s) < 1e-12);
    }

    fn alternating_odd_2() -> WeightMatrix {
        WeightMatrix::from_rows(&[vec![0.5, -0.5], vec![0.5, 0.5]]).unwrap()
    }

    #[test]
    fn reducible_period_is_rejected() {
        let id = validate(Matrix::identity(2, 2), None, DEFAULT_ROW_SUM_TOL).unwrap();
        assert!(matches!(
            absolute_probability_sequence(&SwitchingSignal::constant(id), false),
            Err(Error::NotIrreducible(_))
        ));
        // Balanced graph: the lift splits into two components.
        assert!(matches!(
            absolute_probability_sequence(&SwitchingSignal::constant(alternating_odd()), true),
            Err(Error::NotIrreducible(_))
        ));
    }

    #[test]
    fn p_star_examples() {
        let complete = uniform(4).graph();
        assert_eq!(p_star(&complete).unwrap(), 1);
        let cycle = SignedDigraph::from_arcs(5, (0..5).map(|i| Arc::new(i, (i + 1) % 5, Sign::Positive))).unwrap();
        assert_eq!(p_star(&cycle).unwrap(), 4);
        assert_eq!(p_star(&alternating_odd().graph()).unwrap(), 2);
        assert!(matches!(p_star(&SignedDigraph::new(2)), Err(Error::NotStronglyConnected)));
    }

    #[test]
    fn uniform_complete_bound() {
        for n in 2..6 {
            let bound = rate_bound_balanced(&SwitchingSignal::constant(uniform(n))).unwrap();
            let nf = n as f64;
            assert!((bound.rho - (1.0 - 1.0 / (4.0 * nf.powi(3)))).abs() < 1e-15);
            assert_eq!(bound.p_star, 1);
        }
    }

    #[test]
    fn balanced_bound_is_gauge_invariant() {
        let a = alternating_odd();
        let b = crate::graph::Clustering::from_values(&[1, 1, -1]).unwrap();
        let gauged = validate(gauge_transform(&a, &b), None, DEFAULT_ROW_SUM_TOL).unwrap();
        let r1 = rate_bound_balanced(&SwitchingSignal::constant(a)).unwrap();
        let r2 = rate_bound_balanced(&SwitchingSignal::constant(gauged)).unwrap();
        assert_eq!(r1.rho, r2.rho);
        assert_eq!(r1.delta, r2.delta);
    }

    #[test]
    fn mixed_two_cycle_unbalanced_bound() {
        let a = WeightMatrix::from_rows(&[vec![0.5, -0.5], vec![0.5, 0.5]]).unwrap();
        let bound = rate_bound_unbalanced(&SwitchingSignal::constant(a)).unwrap();
        // The lift is a directed 4-cycle with self-loops.
        assert_eq!(bound.p_star, 3);
        assert!((bound.delta - 0.25).abs() < 1e-14);
        assert!(bound.rho > 0.0 && bound.rho < 1.0);
        assert!(bound.lifted_depth_checks_hold());
        assert_eq!(bound.lifted_depth_checks[0].c_star, Some(2));
        assert!(rate_bound_balanced(&SwitchingSignal::constant(alternating_odd_2())).is_err());
    }

    #[test]
    fn per_step_bounds_reject_the_alternating_example() {
        let s = alternating_signal();
        assert!(matches!(rate_bound_balanced(&s), Err(Error::HypothesisViolation { time: 2, .. })));
        assert!(matches!(rate_bound_unbalanced(&s), Err(Error::HypothesisViolation { time: 1, .. })));
        let bound = rate_bound_auto(&s).unwrap();
        assert_eq!(bound.kind, RateKind::PeriodProduct { period: 2, b: None });
        let traj = simulate(&s, &Vector::from_element(3, 1.0), 200).unwrap();
        let emp = empirical_rate(&traj, SpreadMeasure::MaxAbs).unwrap();
        assert!(emp.rho < 1.0 && emp.rho <= bound.rho, "{} vs {}", emp.rho, bound.rho);
    }

    #[test]
    fn geometric_series_rate() {
        let spread: Vec<f64> = (0..80).map(|t| 0.5f64.powi(t)).collect();
        let emp = empirical_rate_of(&spread, SpreadMeasure::MaxAbs).unwrap();
        assert!((emp.rho - 0.5).abs() < 1e-6);
        assert!(matches!(
            empirical_rate_of(&[1.0; 50], SpreadMeasure::MaxAbs),
            Err(Error::NonContracting { .. })
        ));
    }

    #[test]
    fn identity_does_not_contract() {
        let id = validate(Matrix::identity(3, 3), None, DEFAULT_ROW_SUM_TOL).unwrap();
        let traj = simulate(&SwitchingSignal::constant(id), &Vector::from_vec(vec![1.0, 2.0, 3.0]), 50).unwrap();
        assert!(matches!(empirical_rate(&traj, SpreadMeasure::MaxAbs), Err(Error::NonContracting { .. })));
    }
}
