//! Eigenstructure of a time-invariant weight matrix whose graph is rooted
//! but not necessarily strongly connected.
//!
//! With the root class `R` ordered first, `P A P' = [[B, 0], [C, D]]`. The
//! eigenvalues of `D` lie strictly inside the unit disk, so the spectrum on
//! the unit circle is decided by `B`: a single eigenvalue at 1 when the
//! graph induced on `R` is balanced, none otherwise.

pub mod eigen;

use nalgebra::Complex;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::graph::{check_balance, BalanceVerdict, SignedDigraph};
use crate::rate::left_perron_vector;
use crate::weight::WeightMatrix;
use crate::{Matrix, Vector};

pub use eigen::{eigenvalues, spectral_radius};

/// `|λ - 1|` below this counts as an eigenvalue at 1.
pub const UNIT_EIGENVALUE_TOL: f64 = 1e-9;
/// Bound on `|v'A - v'|` for the fixed-vector certificate.
pub const FIXED_VECTOR_TOL: f64 = 1e-9;

/// The unique source class of the condensation, sorted.
pub fn root_class(g: &SignedDigraph) -> Result<Vec<usize>> {
    let cond = g.mutually_reachable_classes();
    match cond.sources().as_slice() {
        [only] => {
            let mut r = cond.components()[*only].clone();
            r.sort_unstable();
            Ok(r)
        }
        _ => Err(Error::NotRooted),
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum SpectralVerdict {
    AllInsideUnitDisk,
    SingleEigenvalueAtOne,
}

#[derive(Debug, Clone, Serialize)]
pub struct SpectralReport {
    #[serde(serialize_with = "one_based")]
    pub root_class: Vec<usize>,
    /// Balance of the graph induced on the root class; vertex ids in the
    /// certificate index into `root_class`.
    pub root_balance: BalanceVerdict,
    /// `(re, im)` pairs sorted by decreasing modulus.
    pub eigenvalues: Vec<(f64, f64)>,
    /// Sorted decreasing.
    pub eigenvalue_magnitudes: Vec<f64>,
    pub verdict: SpectralVerdict,
    /// `|v'A - v'|_∞` for `v = [b_R ∘ π_R; 0]` when the root class is balanced.
    pub fixed_vector_residual: Option<f64>,
    /// Largest entry of the block of `P A P'` coupling the rest into `R`.
    pub block_form_residual: f64,
    /// Spectral radius of `D`; 0 when `R` is everything.
    pub d_spectral_radius: f64,
    /// Largest gap between the sorted moduli of `A` and of `B ∪ D`.
    pub block_spectrum_mismatch: f64,
    pub spectral_radius: f64,
    pub abs_spectral_radius: f64,
    pub tolerance: f64,
}

fn one_based<S: serde::Serializer>(v: &[usize], s: S) -> std::result::Result<S::Ok, S::Error> {
    s.collect_seq(v.iter().map(|x| x + 1))
}

fn sorted_by_modulus(mut ev: Vec<Complex<f64>>) -> Vec<Complex<f64>> {
    ev.sort_by(|a, b| b.norm().total_cmp(&a.norm()).then(b.re.total_cmp(&a.re)).then(b.im.total_cmp(&a.im)));
    ev
}

fn sorted_magnitudes(ev: &[Complex<f64>]) -> Vec<f64> {
    let mut m: Vec<f64> = ev.iter().map(|z| z.norm()).collect();
    m.sort_by(|a, b| b.total_cmp(a));
    m
}

fn submatrix(m: &Matrix, rows: &[usize], cols: &[usize]) -> Matrix {
    Matrix::from_fn(rows.len(), cols.len(), |i, j| m[(rows[i], cols[j])])
}

/// `(ρ(A), ρ(|A|))`, failing if `ρ(A) > ρ(|A|) + 1e-9`.
pub fn spectral_radius_comparison(a: &WeightMatrix) -> Result<(f64, f64)> {
    let rho = spectral_radius(a.entries())?;
    let rho_abs = spectral_radius(&a.abs())?;
    if rho > rho_abs + 1e-9 {
        return Err(Error::PropositionViolation(format!(
            "spectral radius {rho} exceeds that of |A| ({rho_abs})"
        )));
    }
    Ok((rho, rho_abs))
}

/// Eigenvalue analysis of a weight matrix with a rooted graph.
///
/// The verdict is computed from the eigenvalues and then required to match
/// the one predicted by the balance of the root class; any disagreement, a
/// nonzero coupling block, or an eigenvalue of `D` on the unit circle is a
/// [`Error::PropositionViolation`].
pub fn analyze_spectrum(a: &WeightMatrix) -> Result<SpectralReport> {
    let n = a.n();
    let g = a.graph();
    let root = root_class(&g)?;
    let root_balance = check_balance(&g.induced_subgraph(&root));
    let rest: Vec<usize> = (0..n).filter(|v| root.binary_search(v).is_err()).collect();

    let m = a.entries();
    let ev = sorted_by_modulus(eigenvalues(m)?);
    let magnitudes = sorted_magnitudes(&ev);

    let block_form_residual = submatrix(m, &root, &rest).amax();
    if block_form_residual != 0.0 {
        return Err(Error::PropositionViolation(format!(
            "root rows draw weight {block_form_residual} from outside the root class"
        )));
    }
    let b_block = submatrix(m, &root, &root);
    let d_block = submatrix(m, &rest, &rest);
    let d_ev = eigenvalues(&d_block)?;
    let d_spectral_radius = d_ev.iter().map(|z| z.norm()).fold(0.0, f64::max);
    if d_spectral_radius >= 1.0 - UNIT_EIGENVALUE_TOL {
        return Err(Error::PropositionViolation(format!(
            "non-root block has an eigenvalue of modulus {d_spectral_radius}"
        )));
    }
    let mut split = eigenvalues(&b_block)?;
    split.extend(d_ev);
    let block_spectrum_mismatch = sorted_magnitudes(&split)
        .iter()
        .zip(&magnitudes)
        .map(|(x, y)| (x - y).abs())
        .fold(0.0, f64::max);

    let fixed_vector_residual = match &root_balance {
        BalanceVerdict::Balanced { clustering } => {
            let abs_b = b_block.abs();
            let (pi, _) = left_perron_vector(&abs_b)?;
            let mut v = Vector::zeros(n);
            for (k, &r) in root.iter().enumerate() {
                v[r] = clustering.sign(k).as_f64() * pi[k];
            }
            Some((m.tr_mul(&v) - &v).amax())
        }
        BalanceVerdict::Unbalanced { .. } => None,
    };

    let at_one: Vec<&Complex<f64>> = ev.iter().filter(|z| (*z - 1.0).norm() <= UNIT_EIGENVALUE_TOL).collect();
    let others_max = ev
        .iter()
        .filter(|z| (*z - 1.0).norm() > UNIT_EIGENVALUE_TOL)
        .map(|z| z.norm())
        .fold(0.0, f64::max);
    let inside = others_max < 1.0 - UNIT_EIGENVALUE_TOL;
    let certified = fixed_vector_residual.is_some_and(|r| r <= FIXED_VECTOR_TOL);
    let computed = match (at_one.len(), inside) {
        (0, true) => Some(SpectralVerdict::AllInsideUnitDisk),
        (1, true) if certified => Some(SpectralVerdict::SingleEigenvalueAtOne),
        _ => None,
    };
    let predicted = if root_balance.is_balanced() {
        SpectralVerdict::SingleEigenvalueAtOne
    } else {
        SpectralVerdict::AllInsideUnitDisk
    };
    if computed != Some(predicted) {
        let offending = ev.first().copied().unwrap_or_default();
        return Err(Error::PropositionViolation(format!(
            "root class balanced={} predicts {predicted:?}, but the eigenvalues give {computed:?} \
             ({} at 1, largest other modulus {others_max}, leading eigenvalue {offending})",
            root_balance.is_balanced(),
            at_one.len()
        )));
    }

    let (rho, rho_abs) = spectral_radius_comparison(a)?;
    Ok(SpectralReport {
        root_class: root,
        root_balance,
        eigenvalues: ev.iter().map(|z| (z.re, z.im)).collect(),
        eigenvalue_magnitudes: magnitudes,
        verdict: predicted,
        fixed_vector_residual,
        block_form_residual,
        d_spectral_radius,
        block_spectrum_mismatch,
        spectral_radius: rho,
        abs_spectral_radius: rho_abs,
        tolerance: UNIT_EIGENVALUE_TOL,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fixtures::alternating_odd;
    use crate::graph::{Arc, Sign};
    use crate::weight::{validate, DEFAULT_ROW_SUM_TOL};
    use Sign::*;

    #[test]
    fn root_class_examples() {
        let sc = alternating_odd().graph();
        assert_eq!(root_class(&sc).unwrap(), vec![0, 1, 2]);
        let chain = SignedDigraph::from_arcs(3, [Arc::new(0, 1, Positive), Arc::new(1, 2, Positive)]).unwrap();
        assert_eq!(root_class(&chain).unwrap(), vec![0]);
        let g = SignedDigraph::from_arcs(
            3,
            [Arc::new(0, 1, Positive), Arc::new(1, 0, Negative), Arc::new(1, 2, Positive)],
        )
        .unwrap();
        assert_eq!(root_class(&g).unwrap(), vec![0, 1]);
        assert!(matches!(root_class(&SignedDigraph::new(2)), Err(Error::NotRooted)));
    }

    #[test]
    fn strongly_connected_balanced() {
        let report = analyze_spectrum(&alternating_odd()).unwrap();
        assert_eq!(report.verdict, SpectralVerdict::SingleEigenvalueAtOne);
        assert!(report.fixed_vector_residual.unwrap() < 1e-14);
        assert_eq!(report.d_spectral_radius, 0.0);
    }

    #[test]
    fn mixed_root_two_cycle() {
        // R = {1, 2} with a negative arc 2 -> 1; vertex 3 listens to vertex 2.
        let a = WeightMatrix::from_rows(&[
            vec![0.5, -0.5, 0.0],
            vec![0.5, 0.5, 0.0],
            vec![0.0, 0.5, 0.5],
        ])
        .unwrap();
        let report = analyze_spectrum(&a).unwrap();
        assert_eq!(report.root_class, vec![0, 1]);
        assert_eq!(report.verdict, SpectralVerdict::AllInsideUnitDisk);
        // Root block eigenvalues 0.5 ± 0.5i, plus 0.5 from vertex 3.
        let r = 0.5f64.sqrt();
        assert!((report.eigenvalue_magnitudes[0] - r).abs() < 1e-14);
        assert!((report.eigenvalue_magnitudes[2] - 0.5).abs() < 1e-14);
    }

    #[test]
    fn positive_root_two_cycle() {
        let a = WeightMatrix::from_rows(&[
            vec![0.5, 0.5, 0.0],
            vec![0.5, 0.5, 0.0],
            vec![0.0, -0.25, 0.75],
        ])
        .unwrap();
        let report = analyze_spectrum(&a).unwrap();
        assert_eq!(report.verdict, SpectralVerdict::SingleEigenvalueAtOne);
        assert!((report.eigenvalue_magnitudes[0] - 1.0).abs() < 1e-14);
        assert!(report.eigenvalue_magnitudes[1] < 1.0 - 1e-3);
        assert!(report.block_spectrum_mismatch < 1e-12);
    }

    #[test]
    fn radius_comparison() {
        let id = validate(Matrix::identity(3, 3), None, DEFAULT_ROW_SUM_TOL).unwrap();
        let (r, ra) = spectral_radius_comparison(&id).unwrap();
        assert!((r - 1.0).abs() < 1e-15 && (ra - 1.0).abs() < 1e-15);
        let pos = WeightMatrix::from_rows(&[vec![0.5, 0.5], vec![0.25, 0.75]]).unwrap();
        let (r, ra) = spectral_radius_comparison(&pos).unwrap();
        assert!((r - ra).abs() < 1e-14 && (ra - 1.0).abs() < 1e-14);
        let mixed = WeightMatrix::from_rows(&[vec![0.5, -0.5], vec![0.5, 0.5]]).unwrap();
        let (r, ra) = spectral_radius_comparison(&mixed).unwrap();
        assert!(r < 1.0 - 1e-3 && (ra - 1.0).abs() < 1e-14);
    }
}
