//! Lift of the signed `n`-state system to a `2n`-state consensus process.
//!
//! With `z = [x; -x]`, the update `z(t+1) = Ā(t) z(t)` uses the nonnegative
//! matrix with blocks
//!
//! ```text
//! ā[i][j]   = ā[i+n][j+n] = max(0,  a_ij)
//! ā[i+n][j] = ā[i][j+n]   = max(0, -a_ij)
//! ```
//!
//! Lifted vertex `i + n` is the negated copy of agent `i` and is rendered
//! `i⁻` in reports.

use serde::Serialize;

use crate::error::{Error, Result};
use crate::graph::{check_balance, BalanceVerdict, Digraph, Sign, SignedDigraph};
use crate::weight::{SwitchingSignal, WeightMatrix};
use crate::{Matrix, Vector};

/// `2n x 2n` nonnegative stochastic matrix `Ā`.
#[derive(Debug, Clone, PartialEq)]
pub struct LiftedMatrix(Matrix);

impl LiftedMatrix {
    pub fn matrix(&self) -> &Matrix {
        &self.0
    }

    pub fn into_matrix(self) -> Matrix {
        self.0
    }

    /// Graph with arc `j -> i` whenever `ā_ij > 0`.
    pub fn graph(&self) -> Digraph {
        let m = self.0.nrows();
        let mut g = Digraph::new(m);
        for i in 0..m {
            for j in 0..m {
                if self.0[(i, j)] > 0.0 {
                    g.add_arc(j, i);
                }
            }
        }
        g
    }
}

pub fn lift(a: &WeightMatrix) -> LiftedMatrix {
    let n = a.n();
    let mut m = Matrix::zeros(2 * n, 2 * n);
    for i in 0..n {
        for j in 0..n {
            let x = a.get(i, j);
            let pos = x.max(0.0);
            let neg = (-x).max(0.0);
            m[(i, j)] = pos;
            m[(i + n, j + n)] = pos;
            m[(i + n, j)] = neg;
            m[(i, j + n)] = neg;
        }
    }
    LiftedMatrix(m)
}

/// Graph of `lift(a)`, read off the lifted entries.
pub fn lifted_graph(a: &WeightMatrix) -> Digraph {
    lift(a).graph()
}

/// Lifted graph built arc by arc from a signed graph: a positive arc
/// `j -> i` becomes `j -> i` and `j+n -> i+n`; a negative one becomes
/// `j -> i+n` and `j+n -> i`.
pub fn lift_signed_graph(g: &SignedDigraph) -> Digraph {
    let n = g.n();
    let mut d = Digraph::new(2 * n);
    for arc in g.arcs() {
        let (j, i) = (arc.from, arc.to);
        match arc.sign {
            Sign::Positive => {
                d.add_arc(j, i);
                d.add_arc(j + n, i + n);
            }
            Sign::Negative => {
                d.add_arc(j, i + n);
                d.add_arc(j + n, i);
            }
        }
    }
    d
}

/// `[x; -x]`.
pub fn lift_state(x: &Vector) -> Vector {
    let n = x.len();
    Vector::from_fn(2 * n, |k, _| if k < n { x[k] } else { -x[k - n] })
}

/// Report label for lifted vertex `v` (0-based) of a `2n`-vertex lift.
pub fn lifted_vertex_label(v: usize, n: usize) -> String {
    if v < n {
        format!("{}", v + 1)
    } else {
        format!("{}⁻", v - n + 1)
    }
}

/// Structure of the lifted graph of a strongly connected signed graph.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum LiftedGraphStructure {
    /// Balanced case: `first = V+ ∪ (V- + n)`, `second` its mirror.
    TwoComponents { first: Vec<usize>, second: Vec<usize> },
    /// Unbalanced case.
    StronglyConnected,
}

impl Serialize for LiftedGraphStructure {
    fn serialize<S: serde::Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        #[derive(Serialize)]
        #[serde(tag = "kind", rename_all = "snake_case")]
        enum Json<'a> {
            TwoComponents { first: &'a [usize], second: &'a [usize] },
            StronglyConnected,
        }
        // 1-based; `n+i` is the negated copy of agent `i`.
        match self {
            LiftedGraphStructure::TwoComponents { first, second } => {
                let f: Vec<usize> = first.iter().map(|v| v + 1).collect();
                let s: Vec<usize> = second.iter().map(|v| v + 1).collect();
                Json::TwoComponents { first: &f, second: &s }.serialize(serializer)
            }
            LiftedGraphStructure::StronglyConnected => Json::StronglyConnected.serialize(serializer),
        }
    }
}

/// Classifies the lifted graph of a strongly connected `g` twice, from the
/// balance of `g` and from the SCCs of the lifted graph, and requires the
/// two to agree.
pub fn analyze_lifted_structure(g: &SignedDigraph) -> Result<LiftedGraphStructure> {
    if !g.is_strongly_connected() {
        return Err(Error::NotStronglyConnected);
    }
    let n = g.n();
    let predicted = match check_balance(g) {
        BalanceVerdict::Balanced { clustering } => {
            let mut first: Vec<usize> = clustering
                .positive_set()
                .into_iter()
                .chain(clustering.negative_set().into_iter().map(|j| j + n))
                .collect();
            first.sort_unstable();
            let mut second: Vec<usize> = (0..2 * n).filter(|v| !first.contains(v)).collect();
            second.sort_unstable();
            LiftedGraphStructure::TwoComponents { first, second }
        }
        BalanceVerdict::Unbalanced { .. } => LiftedGraphStructure::StronglyConnected,
    };

    let cond = lift_signed_graph(g).condensation();
    let direct = match cond.components() {
        [all] if all.len() == 2 * n => Some(LiftedGraphStructure::StronglyConnected),
        [a, b] if a.len() == n && b.len() == n => {
            // Report the component holding vertex 0 first.
            let (first, second) = if a.contains(&0) { (a, b) } else { (b, a) };
            Some(LiftedGraphStructure::TwoComponents {
                first: first.clone(),
                second: second.clone(),
            })
        }
        _ => None,
    };
    match direct {
        Some(d) if d == predicted => Ok(predicted),
        other => Err(Error::InternalInconsistency(format!(
            "lifted structure predicted {predicted:?} but SCCs give {other:?} ({} components)",
            cond.len()
        ))),
    }
}

/// [`analyze_lifted_structure`] applied to the union over a window.
pub fn joint_lifted_structure(s: &SwitchingSignal, start: usize, length: usize) -> Result<LiftedGraphStructure> {
    analyze_lifted_structure(&s.window_union_graph(start, length))
}
