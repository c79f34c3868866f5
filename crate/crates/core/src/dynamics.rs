//! Trajectories, state transition matrices, limit detection and the
//! classification of periodic signals into limit regimes.

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::fixtures::random_unit_vector;
use crate::graph::{check_balance, Clustering, Sign};
use crate::lifting::{lift, lift_state, LiftedMatrix};
use crate::weight::SwitchingSignal;
use crate::{Matrix, Vector};

/// Relative tolerance for the zero and modulus-consensus detectors.
pub const DEFAULT_DETECTION_TOL: f64 = 1e-8;
/// Upper limit for adaptive horizons.
pub const DEFAULT_MAX_HORIZON: usize = 1_000_000;

/// States `x(1), ..., x(T)` of `x(t+1) = A(t) x(t)`, optionally with the
/// lifted states `z(t)`.
#[derive(Debug, Clone)]
pub struct Trajectory {
    states: Vec<Vector>,
    lifted: Option<Vec<Vector>>,
    modulus_spread: Vec<f64>,
    lifted_spread: Vec<f64>,
}

fn modulus_spread(x: &Vector) -> f64 {
    let (lo, hi) = x
        .iter()
        .fold((f64::INFINITY, 0.0f64), |(lo, hi), v| (lo.min(v.abs()), hi.max(v.abs())));
    hi - lo
}

fn value_spread(z: &Vector) -> f64 {
    z.max() - z.min()
}

impl Trajectory {
    fn start(x1: Vector, lifted: bool) -> Self {
        let z1 = lifted.then(|| lift_state(&x1));
        let lifted_spread = match &z1 {
            Some(z) => value_spread(z),
            None => 2.0 * x1.amax(),
        };
        Trajectory {
            modulus_spread: vec![modulus_spread(&x1)],
            lifted_spread: vec![lifted_spread],
            states: vec![x1],
            lifted: z1.map(|z| vec![z]),
        }
    }

    /// Builds a trajectory from recorded states (e.g. a trajectory file).
    pub fn from_states(states: Vec<Vector>) -> Result<Self> {
        let first = states
            .first()
            .ok_or_else(|| Error::InvalidArgument("empty trajectory".into()))?;
        let n = first.len();
        if let Some(bad) = states.iter().find(|x| x.len() != n) {
            return Err(Error::DimensionMismatch { expected: n, found: bad.len() });
        }
        Ok(Trajectory {
            modulus_spread: states.iter().map(modulus_spread).collect(),
            lifted_spread: states.iter().map(|x| 2.0 * x.amax()).collect(),
            states,
            lifted: None,
        })
    }

    /// Advances to horizon `horizon` (no-op if already there).
    pub fn extend(&mut self, s: &SwitchingSignal, horizon: usize) {
        let lifts: Option<Vec<LiftedMatrix>> = self
            .lifted
            .as_ref()
            .map(|_| s.representative_matrices().into_iter().map(lift).collect());
        let prefix = s.prefix_len();
        let period = s.period_len();
        let lift_at = |t: usize| -> usize {
            if t <= prefix {
                t - 1
            } else {
                prefix + (t - 1 - prefix) % period
            }
        };
        while self.states.len() < horizon {
            let t = self.states.len();
            let next = s.matrix_at(t).entries() * &self.states[t - 1];
            self.modulus_spread.push(modulus_spread(&next));
            match (&mut self.lifted, &lifts) {
                (Some(zs), Some(lifts)) => {
                    let z = lifts[lift_at(t)].matrix() * &zs[t - 1];
                    self.lifted_spread.push(value_spread(&z));
                    zs.push(z);
                }
                _ => self.lifted_spread.push(2.0 * next.amax()),
            }
            self.states.push(next);
        }
    }

    pub fn n(&self) -> usize {
        self.states[0].len()
    }

    /// Number of recorded states `T`.
    pub fn horizon(&self) -> usize {
        self.states.len()
    }

    /// `x(t)` for `1 <= t <= T`.
    pub fn state(&self, t: usize) -> &Vector {
        &self.states[t - 1]
    }

    pub fn states(&self) -> &[Vector] {
        &self.states
    }

    pub fn initial(&self) -> &Vector {
        &self.states[0]
    }

    pub fn last(&self) -> &Vector {
        self.states.last().unwrap()
    }

    /// `z(t)` when the trajectory was simulated with the lift.
    pub fn lifted_states(&self) -> Option<&[Vector]> {
        self.lifted.as_deref()
    }

    /// `max_i |x_i(t)| - min_i |x_i(t)|` per step.
    pub fn modulus_spread(&self) -> &[f64] {
        &self.modulus_spread
    }

    /// `max z(t) - min z(t)` per step.
    pub fn lifted_spread(&self) -> &[f64] {
        &self.lifted_spread
    }

    pub fn max_abs(&self) -> Vec<f64> {
        self.states.iter().map(|x| x.amax()).collect()
    }

    /// `max_i b_i x_i(t) - min_i b_i x_i(t)` per step: the consensus spread of
    /// the gauge-transformed state.
    pub fn gauged_spread(&self, b: &Clustering) -> Vec<f64> {
        let bv = b.as_vector();
        self.states.iter().map(|x| value_spread(&x.component_mul(&bv))).collect()
    }
}

fn check_initial(s: &SwitchingSignal, x1: &Vector, horizon: usize) -> Result<()> {
    if x1.len() != s.n() {
        return Err(Error::DimensionMismatch { expected: s.n(), found: x1.len() });
    }
    if horizon == 0 {
        return Err(Error::InvalidArgument("horizon must be at least 1".into()));
    }
    Ok(())
}

/// Iterates `x(t+1) = A(t) x(t)` from `x(1) = x1` up to `x(horizon)`.
pub fn simulate(s: &SwitchingSignal, x1: &Vector, horizon: usize) -> Result<Trajectory> {
    check_initial(s, x1, horizon)?;
    let mut traj = Trajectory::start(x1.clone(), false);
    traj.extend(s, horizon);
    Ok(traj)
}

/// [`simulate`] that also iterates `z(t+1) = Ā(t) z(t)` from `z(1) = [x1; -x1]`.
pub fn simulate_lifted(s: &SwitchingSignal, x1: &Vector, horizon: usize) -> Result<Trajectory> {
    check_initial(s, x1, horizon)?;
    let mut traj = Trajectory::start(x1.clone(), true);
    traj.extend(s, horizon);
    Ok(traj)
}

/// `Φ(k, j) = A(k-1) ⋯ A(j)`, with `Φ(j, j) = I`.
pub fn transition_matrix(s: &SwitchingSignal, from: usize, to: usize) -> Result<Matrix> {
    if from == 0 || to < from {
        return Err(Error::InvalidArgument(format!(
            "transition matrix needs 1 <= j <= k, got j={from}, k={to}"
        )));
    }
    let n = s.n();
    let mut phi = Matrix::identity(n, n);
    for t in from..to {
        phi = s.matrix_at(t).entries() * phi;
    }
    Ok(phi)
}

/// `Φ(T, 1)` with `T` doubled from [`default_horizon`] until successive
/// products differ by at most `1e-13` entrywise (or `T` reaches
/// [`DEFAULT_MAX_HORIZON`]). Returns the product and `T`.
pub fn converged_transition_matrix(s: &SwitchingSignal) -> Result<(Matrix, usize)> {
    let mut horizon = default_horizon(s).max(2);
    let mut phi = transition_matrix(s, 1, horizon)?;
    loop {
        // Φ(2T, 1) = Φ(2T, T) Φ(T, 1)
        let next = transition_matrix(s, horizon, 2 * horizon)? * &phi;
        let moved = (&next - &phi).amax();
        phi = next;
        horizon *= 2;
        if moved <= 1e-13 || horizon >= DEFAULT_MAX_HORIZON {
            return Ok((phi, horizon));
        }
    }
}

/// Uniform random unit vector from a seed.
pub fn random_initial_condition(n: usize, seed: u64) -> Vector {
    random_unit_vector(&mut ChaCha8Rng::seed_from_u64(seed), n)
}

/// Best rank-one fit `Φ ≈ b c'` with `c_j = mean_i b_i Φ_ij`; returns `c`
/// and the largest entrywise deviation.
pub fn rank_one_residual(phi: &Matrix, b: &Clustering) -> (Vector, f64) {
    let n = phi.nrows();
    let c = Vector::from_fn(phi.ncols(), |j, _| {
        (0..n).map(|i| b.sign(i).as_f64() * phi[(i, j)]).sum::<f64>() / n as f64
    });
    let residual = (0..n)
        .flat_map(|i| (0..phi.ncols()).map(move |j| (i, j)))
        .map(|(i, j)| (phi[(i, j)] - b.sign(i).as_f64() * c[j]).abs())
        .fold(0.0, f64::max);
    (c, residual)
}

#[derive(Debug, Clone, PartialEq, Serialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum LimitKind {
    /// All `|x_i|` agree on a nonzero `level`, with signs `b_i * sign(x_1)`.
    NonzeroModulusConsensus { b: Clustering, level: f64 },
    ZeroConsensus,
    Undetermined,
}

impl std::fmt::Display for LimitKind {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            LimitKind::NonzeroModulusConsensus { b, level } => {
                write!(f, "nonzero modulus consensus w.r.t. {b} at level {level:e}")
            }
            LimitKind::ZeroConsensus => f.write_str("zero consensus"),
            LimitKind::Undetermined => f.write_str("undetermined"),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct LimitVerdict {
    #[serde(flatten)]
    pub kind: LimitKind,
    /// Zero: final `max |x_i|`; otherwise the final modulus spread.
    pub residual: f64,
    pub horizon: usize,
    pub tolerance: f64,
    pub bipartite: bool,
}

impl LimitVerdict {
    fn new(kind: LimitKind, residual: f64, horizon: usize, tolerance: f64) -> Self {
        let bipartite = matches!(&kind, LimitKind::NonzeroModulusConsensus { b, .. } if !b.is_all_positive());
        LimitVerdict { kind, residual, horizon, tolerance, bipartite }
    }

    pub fn is_zero(&self) -> bool {
        self.kind == LimitKind::ZeroConsensus
    }

    pub fn clustering(&self) -> Option<&Clustering> {
        match &self.kind {
            LimitKind::NonzeroModulusConsensus { b, .. } => Some(b),
            _ => None,
        }
    }

    /// Same kind, and the same clustering for nonzero verdicts.
    pub fn agrees_with(&self, other: &LimitVerdict) -> bool {
        match (&self.kind, &other.kind) {
            (LimitKind::NonzeroModulusConsensus { b: a, .. }, LimitKind::NonzeroModulusConsensus { b, .. }) => a == b,
            (a, b) => std::mem::discriminant(a) == std::mem::discriminant(b),
        }
    }
}

/// Classifies the end of a trajectory.
///
/// Zero if `max |x_i(T)| <= tol * max(1, ||x(1)||_∞)`. Nonzero modulus
/// consensus if the modulus spread is at most `tol` times the level and the
/// sign pattern relative to `x_1` is constant over the last quarter.
pub fn detect_limit(traj: &Trajectory, tol: f64) -> LimitVerdict {
    let horizon = traj.horizon();
    let last = traj.last();
    let max_abs = last.amax();
    let scale = traj.initial().amax().max(1.0);
    if max_abs <= tol * scale {
        return LimitVerdict::new(LimitKind::ZeroConsensus, max_abs, horizon, tol);
    }

    let spread = *traj.modulus_spread().last().unwrap();
    let min_abs = max_abs - spread;
    let level = 0.5 * (max_abs + min_abs);
    let pattern = |x: &Vector| -> Option<Vec<Sign>> {
        let s1 = Sign::of(x[0])?;
        x.iter().map(|&v| Sign::of(v).map(|s| s * s1)).collect()
    };
    let window_start = horizon - horizon / 4;
    let reference = pattern(last);
    let stable = reference.is_some()
        && (window_start..=horizon).all(|t| pattern(traj.state(t)) == reference);
    if stable && spread <= tol * level {
        let b = Clustering::new(reference.unwrap());
        return LimitVerdict::new(LimitKind::NonzeroModulusConsensus { b, level }, spread, horizon, tol);
    }
    LimitVerdict::new(LimitKind::Undetermined, spread, horizon, tol)
}

/// Horizon policy for [`run_to_verdict`].
#[derive(Debug, Clone, Copy)]
pub struct HorizonOptions {
    /// Starting horizon; defaults to `64 * n * P + L` for period `P` and
    /// prefix `L`.
    pub initial: Option<usize>,
    pub max: usize,
    pub tol: f64,
    pub lifted: bool,
}

impl Default for HorizonOptions {
    fn default() -> Self {
        HorizonOptions {
            initial: None,
            max: DEFAULT_MAX_HORIZON,
            tol: DEFAULT_DETECTION_TOL,
            lifted: false,
        }
    }
}

pub fn default_horizon(s: &SwitchingSignal) -> usize {
    64 * s.n() * s.period_len() + s.prefix_len()
}

/// Simulates with a doubling horizon until the verdict settles.
///
/// A zero verdict is final (`max |x_i|` never increases). A nonzero verdict
/// must repeat, with the same clustering, after one more doubling.
/// Undetermined runs keep doubling up to `opts.max`.
pub fn run_to_verdict(s: &SwitchingSignal, x1: &Vector, opts: HorizonOptions) -> Result<(Trajectory, LimitVerdict)> {
    let mut horizon = opts.initial.unwrap_or_else(|| default_horizon(s)).clamp(1, opts.max.max(1));
    let mut traj = if opts.lifted {
        simulate_lifted(s, x1, horizon)?
    } else {
        simulate(s, x1, horizon)?
    };
    let mut verdict = detect_limit(&traj, opts.tol);
    loop {
        if verdict.is_zero() || horizon >= opts.max {
            return Ok((traj, verdict));
        }
        horizon = (horizon * 2).min(opts.max);
        traj.extend(s, horizon);
        let next = detect_limit(&traj, opts.tol);
        let settled = verdict.clustering().is_some() && next.agrees_with(&verdict);
        verdict = next;
        if settled {
            return Ok((traj, verdict));
        }
    }
}

/// One window `G(start) ∪ ... ∪ G(start + length - 1)` examined by the
/// classifier.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct WindowFinding {
    pub start: usize,
    pub length: usize,
    /// The window starts inside the aperiodic prefix.
    pub in_prefix: bool,
    pub strongly_connected: bool,
    /// Clustering of the window union, `None` when unbalanced.
    pub clustering: Option<Clustering>,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum SequenceBalance {
    /// Every window is balanced with respect to `b`.
    RepeatedlyJointlyBalanced { b: Clustering },
    /// Prefix windows deviate but every periodic window is balanced w.r.t. `b`.
    MixedPrefix { b: Clustering },
    /// Every window of the given length and start is unbalanced. The window
    /// may be coarser than the one examined when periodic windows mix
    /// clusterings or include unbalanced ones.
    RepeatedlyJointlyUnbalanced { window_length: usize, window_start: usize },
}

#[derive(Debug, Clone, PartialEq, Serialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum Prediction {
    /// For almost all initial conditions.
    NonzeroModulusConsensus { b: Clustering },
    /// For all initial conditions.
    ZeroConsensus,
}

impl std::fmt::Display for Prediction {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            Prediction::NonzeroModulusConsensus { b } => write!(f, "nonzero modulus consensus w.r.t. {b}"),
            Prediction::ZeroConsensus => f.write_str("zero consensus"),
        }
    }
}

impl Prediction {
    pub fn matches(&self, verdict: &LimitVerdict) -> bool {
        match (self, &verdict.kind) {
            (Prediction::NonzeroModulusConsensus { b }, LimitKind::NonzeroModulusConsensus { b: got, .. }) => b == got,
            (Prediction::ZeroConsensus, LimitKind::ZeroConsensus) => true,
            _ => false,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct SequenceClassification {
    /// Window length `p` for which every window is jointly strongly connected.
    pub window_length: usize,
    /// First window start `q`.
    pub window_start: usize,
    pub windows: Vec<WindowFinding>,
    pub balance: SequenceBalance,
    pub prediction: Prediction,
}

fn gcd(a: usize, b: usize) -> usize {
    if b == 0 {
        a
    } else {
        gcd(b, a % b)
    }
}

/// Windows from `q` covering the prefix and one full cycle of periodic
/// windows; `Err` names the first window that is not strongly connected.
fn examine_windows(s: &SwitchingSignal, p: usize, q: usize) -> Result<Vec<WindowFinding>> {
    let prefix = s.prefix_len();
    let cycle = s.period_len() / gcd(p, s.period_len());
    let mut findings = Vec::new();
    let mut tail = 0;
    let mut start = q;
    while tail < cycle {
        let g = s.window_union_graph(start, p);
        let in_prefix = start <= prefix;
        if !g.is_strongly_connected() {
            return Err(Error::NotJointlyStronglyConnected { start, length: p });
        }
        findings.push(WindowFinding {
            start,
            length: p,
            in_prefix,
            strongly_connected: true,
            clustering: check_balance(&g).clustering().cloned(),
        });
        if !in_prefix {
            tail += 1;
        }
        start += p;
    }
    Ok(findings)
}

/// Decides the limit regime of a constant or eventually periodic signal.
///
/// With `p`/`q` unset, `q = L + 1` and `p` runs through `P, 2P, 3P, 4P`.
pub fn classify_sequence(s: &SwitchingSignal, p: Option<usize>, q: Option<usize>) -> Result<SequenceClassification> {
    let prefix = s.prefix_len();
    let period = s.period_len();
    let q = q.unwrap_or(prefix + 1);
    if q == 0 || p == Some(0) {
        return Err(Error::InvalidArgument("window length and start must be positive".into()));
    }
    let candidates: Vec<usize> = match p {
        Some(p) => vec![p],
        None => (1..=4).map(|k| k * period).collect(),
    };

    let mut last_err = None;
    let mut found = None;
    for &p in &candidates {
        match examine_windows(s, p, q) {
            Ok(w) => {
                found = Some((p, w));
                break;
            }
            Err(e) => last_err = Some(e),
        }
    }
    let (p, windows) = match found {
        Some(f) => f,
        None => return Err(last_err.expect("at least one candidate")),
    };

    let tail: Vec<&WindowFinding> = windows.iter().filter(|w| !w.in_prefix).collect();
    let tail_b = tail[0].clustering.clone();
    let tail_balanced = tail_b.is_some() && tail.iter().all(|w| w.clustering == tail_b);

    let (balance, prediction) = if tail_balanced {
        let b = tail_b.unwrap();
        let balance = if windows.iter().all(|w| w.clustering.as_ref() == Some(&b)) {
            SequenceBalance::RepeatedlyJointlyBalanced { b: b.clone() }
        } else {
            SequenceBalance::MixedPrefix { b: b.clone() }
        };
        (balance, Prediction::NonzeroModulusConsensus { b })
    } else {
        let all_tail_unbalanced = tail.iter().all(|w| w.clustering.is_none());
        let all_unbalanced = windows.iter().all(|w| w.clustering.is_none());
        let balance = if all_unbalanced {
            SequenceBalance::RepeatedlyJointlyUnbalanced { window_length: p, window_start: q }
        } else if all_tail_unbalanced {
            SequenceBalance::RepeatedlyJointlyUnbalanced { window_length: p, window_start: tail[0].start }
        } else {
            // One window spanning a full cycle of periodic windows contains
            // either an unbalanced window or two different clusterings.
            SequenceBalance::RepeatedlyJointlyUnbalanced {
                window_length: p * tail.len(),
                window_start: tail[0].start,
            }
        };
        (balance, Prediction::ZeroConsensus)
    };
    debug_assert!(period > 0);

    Ok(SequenceClassification {
        window_length: p,
        window_start: q,
        windows,
        balance,
        prediction,
    })
}

/// Outcome of [`exceptional_set_probe`].
#[derive(Debug, Clone, Serialize)]
pub struct ExceptionalSetProbe {
    pub seed: u64,
    pub trials: usize,
    pub clustering: Clustering,
    /// Fraction of random unit-sphere `x(1)` reaching nonzero modulus
    /// consensus with the predicted clustering.
    pub nonzero_fraction: f64,
    /// Horizon at which `Φ(T, 1)` was taken as converged.
    pub horizon: usize,
    /// Estimated `c` in `Φ(T, 1) → b c'`.
    pub c: Vec<f64>,
    pub rank_one_residual: f64,
    /// Unit `x(1)` with `c' x(1) = 0`.
    pub exceptional_initial: Vec<f64>,
    /// `max |x_i(T)| / ||x(1)||_∞` from the exceptional initial condition.
    pub exceptional_ratio: f64,
}

/// Probes the "almost all initial conditions" statement for a signal whose
/// graph sequence is repeatedly jointly balanced.
pub fn exceptional_set_probe(s: &SwitchingSignal, trials: usize, seed: u64) -> Result<ExceptionalSetProbe> {
    let classification = classify_sequence(s, None, None)?;
    let b = match classification.prediction {
        Prediction::NonzeroModulusConsensus { b } => b,
        Prediction::ZeroConsensus => {
            return Err(Error::InvalidArgument(
                "probe needs a repeatedly jointly balanced signal".into(),
            ))
        }
    };
    let n = s.n();
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let initials: Vec<Vector> = (0..trials).map(|_| random_unit_vector(&mut rng, n)).collect();
    let outcomes = initials
        .par_iter()
        .map(|x1| run_to_verdict(s, x1, HorizonOptions::default()).map(|(_, v)| v))
        .collect::<Result<Vec<_>>>()?;
    let hits = outcomes
        .iter()
        .filter(|v| v.clustering() == Some(&b))
        .count();

    let (phi, horizon) = converged_transition_matrix(s)?;
    let (c, residual) = rank_one_residual(&phi, &b);

    let raw = random_unit_vector(&mut rng, n);
    let cc = c.dot(&c);
    let projected = if cc > 0.0 { &raw - &c * (c.dot(&raw) / cc) } else { raw };
    let exceptional = &projected / projected.norm();
    let final_state = &phi * &exceptional;
    let ratio = final_state.amax() / exceptional.amax();

    Ok(ExceptionalSetProbe {
        seed,
        trials,
        clustering: b,
        nonzero_fraction: if trials == 0 { 0.0 } else { hits as f64 / trials as f64 },
        horizon,
        c: c.iter().copied().collect(),
        rank_one_residual: residual,
        exceptional_initial: exceptional.iter().copied().collect(),
        exceptional_ratio: ratio,
    })
}
