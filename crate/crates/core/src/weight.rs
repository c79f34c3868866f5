//! Signed weight matrices `A(t)` and switching signals.
//!
//! A valid [`WeightMatrix`] has a positive diagonal, absolute row sums equal
//! to one, and every nonzero magnitude at least `beta`. Its graph has an arc
//! `j -> i` carrying `sign(a_ij)` for every nonzero `a_ij`.

use serde::Serialize;

use crate::error::{Error, Result};
use crate::graph::{union, Clustering, Sign, SignedDigraph};
use crate::Matrix;

/// Default tolerance on `|sum_j |a_ij| - 1|`.
pub const DEFAULT_ROW_SUM_TOL: f64 = 1e-9;
/// Magnitudes below this are structural zeros.
pub const ZERO_THRESHOLD: f64 = 1e-12;

#[derive(Debug, Clone, PartialEq)]
pub struct WeightMatrix {
    entries: Matrix,
    beta: f64,
}

impl WeightMatrix {
    /// Validates row-major entries with the default tolerance.
    pub fn from_rows(rows: &[Vec<f64>]) -> Result<Self> {
        let n = rows.len();
        if let Some(bad) = rows.iter().find(|r| r.len() != n) {
            return Err(Error::NotSquare { rows: n, cols: bad.len() });
        }
        let entries = Matrix::from_fn(n, n, |i, j| rows[i][j]);
        validate(entries, None, DEFAULT_ROW_SUM_TOL)
    }

    pub fn n(&self) -> usize {
        self.entries.nrows()
    }

    pub fn entries(&self) -> &Matrix {
        &self.entries
    }

    pub fn get(&self, i: usize, j: usize) -> f64 {
        self.entries[(i, j)]
    }

    pub fn beta(&self) -> f64 {
        self.beta
    }

    pub fn rows(&self) -> Vec<Vec<f64>> {
        (0..self.n())
            .map(|i| self.entries.row(i).iter().copied().collect())
            .collect()
    }

    /// Signed graph: arc `j -> i` with `sign(a_ij)` for each nonzero `a_ij`.
    pub fn graph(&self) -> SignedDigraph {
        graph_of(self)
    }

    /// Entrywise absolute value, a stochastic matrix.
    pub fn abs(&self) -> Matrix {
        self.entries.abs()
    }

    /// Maximum absolute row sum.
    pub fn infinity_norm(&self) -> f64 {
        infinity_norm(&self.entries)
    }
}

impl Serialize for WeightMatrix {
    fn serialize<S: serde::Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        #[derive(Serialize)]
        struct Json {
            entries: Vec<Vec<f64>>,
            beta: f64,
        }
        Json {
            entries: self.rows(),
            beta: self.beta,
        }
        .serialize(serializer)
    }
}

pub fn infinity_norm(m: &Matrix) -> f64 {
    m.row_iter()
        .map(|r| r.iter().map(|x| x.abs()).sum::<f64>())
        .fold(0.0, f64::max)
}

/// Checks the weight-matrix conditions and returns the validated matrix.
///
/// Entries with magnitude below [`ZERO_THRESHOLD`] are zeroed first. Without
/// `beta_hint`, `beta` is the smallest nonzero magnitude.
pub fn validate(mut entries: Matrix, beta_hint: Option<f64>, tol: f64) -> Result<WeightMatrix> {
    let (rows, cols) = entries.shape();
    if rows != cols || rows == 0 {
        return Err(Error::NotSquare { rows, cols });
    }
    let n = rows;
    for i in 0..n {
        for j in 0..n {
            let x = entries[(i, j)];
            if !x.is_finite() {
                return Err(Error::NonFinite { row: i, col: j });
            }
            if x.abs() < ZERO_THRESHOLD {
                entries[(i, j)] = 0.0;
            }
        }
    }
    for i in 0..n {
        let d = entries[(i, i)];
        if d <= 0.0 {
            return Err(Error::NonPositiveDiagonal { row: i, value: d });
        }
    }
    for i in 0..n {
        let sum: f64 = entries.row(i).iter().map(|x| x.abs()).sum();
        if (sum - 1.0).abs() > tol {
            return Err(Error::RowSumViolation { row: i, sum });
        }
    }
    let min_nonzero = entries
        .iter()
        .map(|x| x.abs())
        .filter(|&x| x > 0.0)
        .fold(f64::INFINITY, f64::min);
    let beta = match beta_hint {
        Some(beta) => {
            for i in 0..n {
                for j in 0..n {
                    let value = entries[(i, j)].abs();
                    if value > 0.0 && value < beta {
                        return Err(Error::BetaViolation { row: i, col: j, value, beta });
                    }
                }
            }
            beta
        }
        None => min_nonzero,
    };
    Ok(WeightMatrix { entries, beta })
}

pub fn graph_of(a: &WeightMatrix) -> SignedDigraph {
    let n = a.n();
    let mut g = SignedDigraph::new(n);
    for i in 0..n {
        for j in 0..n {
            if let Some(sign) = Sign::of(a.get(i, j)) {
                g.add_arc(j, i, sign).expect("valid matrix has positive diagonal");
            }
        }
    }
    g
}

/// `B A B` for the diagonal sign matrix `B` of `b`.
pub fn gauge_transform(a: &WeightMatrix, b: &Clustering) -> Matrix {
    assert_eq!(a.n(), b.len(), "clustering length must match matrix size");
    Matrix::from_fn(a.n(), a.n(), |i, j| {
        b.sign(i).as_f64() * a.get(i, j) * b.sign(j).as_f64()
    })
}

/// Time-varying sequence `A(1), A(2), ...`.
///
/// Finite lists are extended by repeating their last matrix, so every signal
/// is eventually periodic.
#[derive(Debug, Clone, PartialEq)]
pub enum SwitchingSignal {
    Constant(WeightMatrix),
    Finite(Vec<WeightMatrix>),
    EventuallyPeriodic {
        prefix: Vec<WeightMatrix>,
        period: Vec<WeightMatrix>,
    },
}

impl SwitchingSignal {
    pub fn constant(a: WeightMatrix) -> Self {
        SwitchingSignal::Constant(a)
    }

    pub fn finite(matrices: Vec<WeightMatrix>) -> Result<Self> {
        check_dims(matrices.iter())?;
        if matrices.is_empty() {
            return Err(Error::EmptySignal);
        }
        Ok(SwitchingSignal::Finite(matrices))
    }

    pub fn eventually_periodic(prefix: Vec<WeightMatrix>, period: Vec<WeightMatrix>) -> Result<Self> {
        if period.is_empty() {
            return Err(Error::EmptySignal);
        }
        check_dims(prefix.iter().chain(&period))?;
        Ok(SwitchingSignal::EventuallyPeriodic { prefix, period })
    }

    pub fn periodic(period: Vec<WeightMatrix>) -> Result<Self> {
        Self::eventually_periodic(Vec::new(), period)
    }

    pub fn n(&self) -> usize {
        self.matrix_at(1).n()
    }

    /// Number of steps before the periodic part starts.
    pub fn prefix_len(&self) -> usize {
        match self {
            SwitchingSignal::Constant(_) => 0,
            SwitchingSignal::Finite(list) => list.len() - 1,
            SwitchingSignal::EventuallyPeriodic { prefix, .. } => prefix.len(),
        }
    }

    pub fn period_len(&self) -> usize {
        match self {
            SwitchingSignal::Constant(_) | SwitchingSignal::Finite(_) => 1,
            SwitchingSignal::EventuallyPeriodic { period, .. } => period.len(),
        }
    }

    /// Whether a finite list had to be extended to make the signal infinite.
    pub fn is_extended(&self) -> bool {
        matches!(self, SwitchingSignal::Finite(_))
    }

    /// `A(t)` for `t >= 1`. Panics on `t == 0`.
    pub fn matrix_at(&self, t: usize) -> &WeightMatrix {
        assert!(t >= 1, "time starts at 1");
        match self {
            SwitchingSignal::Constant(a) => a,
            SwitchingSignal::Finite(list) => &list[(t - 1).min(list.len() - 1)],
            SwitchingSignal::EventuallyPeriodic { prefix, period } => {
                if t <= prefix.len() {
                    &prefix[t - 1]
                } else {
                    &period[(t - 1 - prefix.len()) % period.len()]
                }
            }
        }
    }

    /// The distinct matrices `A(1), ..., A(L + P)` covering prefix and one period.
    pub fn representative_matrices(&self) -> Vec<&WeightMatrix> {
        (1..=self.prefix_len() + self.period_len())
            .map(|t| self.matrix_at(t))
            .collect()
    }

    /// Uniform lower bound on nonzero magnitudes across the signal.
    pub fn beta(&self) -> f64 {
        self.representative_matrices()
            .iter()
            .map(|a| a.beta())
            .fold(f64::INFINITY, f64::min)
    }

    /// Union of the graphs of `A(start), ..., A(start + length - 1)`.
    pub fn window_union_graph(&self, start: usize, length: usize) -> SignedDigraph {
        assert!(length >= 1, "window length must be positive");
        let graphs: Vec<SignedDigraph> = (start..start + length)
            .map(|t| self.matrix_at(t).graph())
            .collect();
        union(&graphs).expect("signal matrices share a dimension")
    }
}

fn check_dims<'a>(mut matrices: impl Iterator<Item = &'a WeightMatrix>) -> Result<()> {
    if let Some(first) = matrices.next() {
        let n = first.n();
        for m in matrices {
            if m.n() != n {
                return Err(Error::DimensionMismatch { expected: n, found: m.n() });
            }
        }
    }
    Ok(())
}
