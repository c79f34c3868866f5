//! File formats. All vertex ids in files are 1-based.
//!
//! - Graph JSON: `{"n": 3, "arcs": [{"from": 1, "to": 2, "sign": "+"}], "self_arcs": "implicit"}`.
//!   With `"self_arcs": "explicit"` every vertex must list its positive self-arc.
//! - Matrix: CSV rows without header, or JSON `{"entries": [[...]], "beta": 0.5}`
//!   (`beta` optional), or a bare JSON array of rows.
//! - Signal JSON: `{"mode": "constant", "matrix": M}`,
//!   `{"mode": "finite", "matrices": [M, ...]}`,
//!   `{"mode": "periodic", "period": [M, ...]}` or
//!   `{"mode": "eventually_periodic", "prefix": [M, ...], "period": [M, ...]}`,
//!   where each `M` is an inline matrix or a path relative to the signal file.
//! - Trajectory CSV: header `t,x1,...,xn`, one row per step.
//! - Vector: CSV (one row or one column) or a JSON array.

use std::fmt::Write as _;
use std::path::{Path, PathBuf};

use serde::{Deserialize, Serialize};
use serde_json::Value;

use crate::dynamics::Trajectory;
use crate::error::{Error, Result};
use crate::graph::{Arc, Sign, SignedDigraph};
use crate::weight::{validate, SwitchingSignal, WeightMatrix};
use crate::{Matrix, Vector};

/// Signal modes that describe sequences with no finite representation.
const UNDECIDABLE_MODES: [&str; 4] = ["aperiodic", "arbitrary", "random", "infinite"];

pub fn read_text(path: &Path) -> Result<String> {
    std::fs::read_to_string(path).map_err(|source| Error::Io {
        path: path.display().to_string(),
        source,
    })
}

pub fn write_text(path: &Path, text: &str) -> Result<()> {
    std::fs::write(path, text).map_err(|source| Error::Io {
        path: path.display().to_string(),
        source,
    })
}

fn json_error(context: &str, e: serde_json::Error) -> Error {
    Error::parse(format!("{context}, line {} column {}", e.line(), e.column()), e)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum SelfArcs {
    #[default]
    Implicit,
    Explicit,
}

#[derive(Debug, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct ArcJson {
    from: usize,
    to: usize,
    sign: Sign,
}

#[derive(Debug, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct GraphJson {
    n: usize,
    #[serde(default)]
    arcs: Vec<ArcJson>,
    #[serde(default)]
    self_arcs: SelfArcs,
}

pub fn parse_graph_json(text: &str) -> Result<SignedDigraph> {
    let raw: GraphJson = serde_json::from_str(text).map_err(|e| json_error("graph", e))?;
    if raw.n == 0 {
        return Err(Error::EmptyGraph);
    }
    let mut g = SignedDigraph::new(raw.n);
    let mut has_self = vec![false; raw.n];
    for (k, arc) in raw.arcs.iter().enumerate() {
        let context = || format!("graph, arcs[{k}]");
        for v in [arc.from, arc.to] {
            if v == 0 || v > raw.n {
                return Err(Error::parse(context(), format!("vertex {v} outside 1..={}", raw.n)));
            }
        }
        let (from, to) = (arc.from - 1, arc.to - 1);
        if from == to {
            if arc.sign == Sign::Negative {
                return Err(Error::NegativeSelfArc { vertex: from });
            }
            has_self[from] = true;
            continue;
        }
        g.add_arc(from, to, arc.sign)?;
    }
    if raw.self_arcs == SelfArcs::Explicit {
        if let Some(v) = has_self.iter().position(|&h| !h) {
            return Err(Error::MissingSelfArc { vertex: v });
        }
    }
    Ok(g)
}

pub fn graph_to_json(g: &SignedDigraph, self_arcs: SelfArcs) -> String {
    let arcs = g
        .arcs()
        .filter(|a| self_arcs == SelfArcs::Explicit || a.from != a.to)
        .map(|a: Arc| ArcJson { from: a.from + 1, to: a.to + 1, sign: a.sign })
        .collect();
    let json = GraphJson { n: g.n(), arcs, self_arcs };
    serde_json::to_string_pretty(&json).expect("graph serializes")
}

pub fn read_graph(path: &Path) -> Result<SignedDigraph> {
    parse_graph_json(&read_text(path)?).map_err(|e| with_path(path, e))
}

fn with_path(path: &Path, e: Error) -> Error {
    match e {
        Error::Parse { context, message } => Error::Parse {
            context: format!("{}: {context}", path.display()),
            message,
        },
        other => other,
    }
}

fn rows_to_matrix(rows: &[Vec<f64>], context: &str) -> Result<Matrix> {
    let n = rows.len();
    if n == 0 {
        return Err(Error::parse(context, "no rows"));
    }
    if let Some((i, r)) = rows.iter().enumerate().find(|(_, r)| r.len() != n) {
        return Err(Error::parse(
            format!("{context}, row {}", i + 1),
            format!("expected {n} entries, found {}", r.len()),
        ));
    }
    Ok(Matrix::from_fn(n, n, |i, j| rows[i][j]))
}

/// Square matrix from header-less CSV.
pub fn parse_matrix_csv(text: &str) -> Result<Matrix> {
    let mut reader = csv::ReaderBuilder::new()
        .has_headers(false)
        .trim(csv::Trim::All)
        .comment(Some(b'#'))
        .flexible(true)
        .from_reader(text.as_bytes());
    let mut rows = Vec::new();
    for record in reader.records() {
        let record = record.map_err(|e| Error::parse("matrix csv", e))?;
        let line = record.position().map(|p| p.line()).unwrap_or(0);
        if record.iter().all(|f| f.is_empty()) {
            continue;
        }
        let row = record
            .iter()
            .enumerate()
            .map(|(k, field)| {
                field.parse::<f64>().map_err(|e| {
                    Error::parse(format!("matrix csv, line {line} field {}", k + 1), format!("{field:?}: {e}"))
                })
            })
            .collect::<Result<Vec<f64>>>()?;
        rows.push(row);
    }
    rows_to_matrix(&rows, "matrix csv")
}

/// Entries and optional beta from an inline JSON matrix value.
fn matrix_from_value(value: &Value, context: &str) -> Result<(Matrix, Option<f64>)> {
    #[derive(Deserialize)]
    #[serde(deny_unknown_fields)]
    struct MatrixJson {
        entries: Vec<Vec<f64>>,
        #[serde(default)]
        beta: Option<f64>,
    }
    let (rows, beta) = match value {
        Value::Array(_) => {
            let rows: Vec<Vec<f64>> =
                serde_json::from_value(value.clone()).map_err(|e| Error::parse(context, e))?;
            (rows, None)
        }
        Value::Object(_) => {
            let m: MatrixJson = serde_json::from_value(value.clone()).map_err(|e| Error::parse(context, e))?;
            (m.entries, m.beta)
        }
        _ => return Err(Error::parse(context, "expected a matrix (array of rows or {\"entries\": ...})")),
    };
    Ok((rows_to_matrix(&rows, context)?, beta))
}

pub fn parse_matrix_json(text: &str) -> Result<(Matrix, Option<f64>)> {
    let value: Value = serde_json::from_str(text).map_err(|e| json_error("matrix json", e))?;
    matrix_from_value(&value, "matrix json")
}

/// Matrix from text, choosing JSON when the first non-blank character opens
/// a JSON value.
pub fn parse_matrix(text: &str) -> Result<(Matrix, Option<f64>)> {
    match text.trim_start().chars().next() {
        Some('{') | Some('[') => parse_matrix_json(text),
        _ => parse_matrix_csv(text).map(|m| (m, None)),
    }
}

pub fn read_weight_matrix(path: &Path, tol: f64) -> Result<WeightMatrix> {
    let (m, beta) = parse_matrix(&read_text(path)?).map_err(|e| with_path(path, e))?;
    validate(m, beta, tol)
}

/// CSV with shortest round-trip decimal formatting.
pub fn matrix_to_csv(m: &Matrix) -> String {
    let mut out = String::new();
    for row in m.row_iter() {
        let fields: Vec<String> = row.iter().map(|x| format!("{x:?}")).collect();
        writeln!(out, "{}", fields.join(",")).unwrap();
    }
    out
}

pub fn matrix_to_json(a: &WeightMatrix) -> String {
    serde_json::to_string_pretty(a).expect("matrix serializes")
}

fn matrices_from_values(
    values: &Value,
    key: &str,
    base: &Path,
    tol: f64,
) -> Result<Vec<WeightMatrix>> {
    let list = values
        .as_array()
        .ok_or_else(|| Error::parse(format!("signal, {key}"), "expected an array of matrices"))?;
    list.iter()
        .enumerate()
        .map(|(k, v)| signal_matrix(v, &format!("signal, {key}[{k}]"), base, tol))
        .collect()
}

fn signal_matrix(value: &Value, context: &str, base: &Path, tol: f64) -> Result<WeightMatrix> {
    let (m, beta) = match value {
        Value::String(rel) => {
            let path: PathBuf = base.join(rel);
            parse_matrix(&read_text(&path)?).map_err(|e| with_path(&path, e))?
        }
        other => matrix_from_value(other, context)?,
    };
    validate(m, beta, tol).map_err(|e| match e {
        Error::Parse { .. } | Error::Io { .. } => e,
        other => Error::parse(context, other),
    })
}

/// Parses a signal description; relative matrix paths resolve against `base`.
pub fn parse_signal_json(text: &str, base: &Path, tol: f64) -> Result<SwitchingSignal> {
    let value: Value = serde_json::from_str(text).map_err(|e| json_error("signal", e))?;
    let obj = value
        .as_object()
        .ok_or_else(|| Error::parse("signal", "expected a JSON object"))?;
    let mode = obj
        .get("mode")
        .and_then(Value::as_str)
        .ok_or_else(|| Error::parse("signal", "missing string field \"mode\""))?;
    let field = |key: &str| {
        obj.get(key)
            .ok_or_else(|| Error::parse("signal", format!("mode {mode:?} needs field {key:?}")))
    };
    match mode {
        "constant" => Ok(SwitchingSignal::constant(signal_matrix(field("matrix")?, "signal, matrix", base, tol)?)),
        "finite" => SwitchingSignal::finite(matrices_from_values(field("matrices")?, "matrices", base, tol)?),
        "periodic" => SwitchingSignal::periodic(matrices_from_values(field("period")?, "period", base, tol)?),
        "eventually_periodic" => {
            let prefix = match obj.get("prefix") {
                Some(p) => matrices_from_values(p, "prefix", base, tol)?,
                None => Vec::new(),
            };
            SwitchingSignal::eventually_periodic(prefix, matrices_from_values(field("period")?, "period", base, tol)?)
        }
        m if UNDECIDABLE_MODES.contains(&m) => Err(Error::UndecidableSignal(format!(
            "mode {m:?} has no finite description; use constant, finite, periodic or eventually_periodic"
        ))),
        other => Err(Error::parse("signal", format!("unknown mode {other:?}"))),
    }
}

pub fn read_signal(path: &Path, tol: f64) -> Result<SwitchingSignal> {
    let base = path.parent().unwrap_or(Path::new("."));
    parse_signal_json(&read_text(path)?, base, tol).map_err(|e| with_path(path, e))
}

/// Signal JSON with every matrix inline.
pub fn signal_to_json(s: &SwitchingSignal) -> String {
    let rows = |a: &WeightMatrix| serde_json::json!({ "entries": a.rows() });
    let list = |v: &[WeightMatrix]| Value::Array(v.iter().map(rows).collect());
    let value = match s {
        SwitchingSignal::Constant(a) => serde_json::json!({ "mode": "constant", "matrix": rows(a) }),
        SwitchingSignal::Finite(v) => serde_json::json!({ "mode": "finite", "matrices": list(v) }),
        SwitchingSignal::EventuallyPeriodic { prefix, period } => serde_json::json!({
            "mode": "eventually_periodic",
            "prefix": list(prefix),
            "period": list(period),
        }),
    };
    serde_json::to_string_pretty(&value).expect("signal serializes")
}

/// Vector from CSV (single row or column) or a JSON array.
pub fn parse_vector(text: &str) -> Result<Vector> {
    if text.trim_start().starts_with('[') {
        let v: Vec<f64> = serde_json::from_str(text).map_err(|e| json_error("vector", e))?;
        return Ok(Vector::from_vec(v));
    }
    let mut values = Vec::new();
    for (lineno, line) in text.lines().enumerate() {
        let line = line.trim();
        if line.is_empty() || line.starts_with('#') {
            continue;
        }
        for (k, field) in line.split(',').enumerate() {
            let field = field.trim();
            let x = field.parse::<f64>().map_err(|e| {
                Error::parse(format!("vector, line {} field {}", lineno + 1, k + 1), format!("{field:?}: {e}"))
            })?;
            values.push(x);
        }
    }
    if values.is_empty() {
        return Err(Error::parse("vector", "no entries"));
    }
    Ok(Vector::from_vec(values))
}

pub fn read_vector(path: &Path) -> Result<Vector> {
    parse_vector(&read_text(path)?).map_err(|e| with_path(path, e))
}

pub fn trajectory_to_csv(traj: &Trajectory) -> String {
    let mut out = String::from("t");
    for i in 1..=traj.n() {
        write!(out, ",x{i}").unwrap();
    }
    out.push('\n');
    for (t, x) in traj.states().iter().enumerate() {
        write!(out, "{}", t + 1).unwrap();
        for v in x.iter() {
            write!(out, ",{v:?}").unwrap();
        }
        out.push('\n');
    }
    out
}

/// Per-step spreads for external plotting: `t,modulus_spread,lifted_spread,max_abs`.
pub fn spread_to_csv(traj: &Trajectory) -> String {
    let mut out = String::from("t,modulus_spread,lifted_spread,max_abs\n");
    let max_abs = traj.max_abs();
    let rows = traj.modulus_spread().iter().zip(traj.lifted_spread()).zip(&max_abs);
    for (t, ((m, l), a)) in rows.enumerate() {
        writeln!(out, "{},{m:?},{l:?},{a:?}", t + 1).unwrap();
    }
    out
}

pub fn parse_trajectory_csv(text: &str) -> Result<Trajectory> {
    let mut reader = csv::ReaderBuilder::new().trim(csv::Trim::All).from_reader(text.as_bytes());
    let headers = reader.headers().map_err(|e| Error::parse("trajectory csv, header", e))?.clone();
    let n = headers.len().saturating_sub(1);
    let expected: Vec<String> = std::iter::once("t".to_string()).chain((1..=n).map(|i| format!("x{i}"))).collect();
    if n == 0 || headers.iter().ne(expected.iter().map(String::as_str)) {
        return Err(Error::parse("trajectory csv, header", "expected t,x1,...,xn"));
    }
    let mut states = Vec::new();
    for record in reader.records() {
        let record = record.map_err(|e| Error::parse("trajectory csv", e))?;
        let line = record.position().map(|p| p.line()).unwrap_or(0);
        let fields: Vec<f64> = record
            .iter()
            .enumerate()
            .map(|(k, f)| {
                f.parse::<f64>().map_err(|e| {
                    Error::parse(format!("trajectory csv, line {line} field {}", k + 1), format!("{f:?}: {e}"))
                })
            })
            .collect::<Result<_>>()?;
        if fields[0] != (states.len() + 1) as f64 {
            return Err(Error::parse(
                format!("trajectory csv, line {line} field 1"),
                format!("expected t={}, found {}", states.len() + 1, fields[0]),
            ));
        }
        states.push(Vector::from_vec(fields[1..].to_vec()));
    }
    Trajectory::from_states(states)
}

pub fn read_trajectory(path: &Path) -> Result<Trajectory> {
    parse_trajectory_csv(&read_text(path)?).map_err(|e| with_path(path, e))
}
