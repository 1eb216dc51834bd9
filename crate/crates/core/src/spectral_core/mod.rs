//! Numeric spectral engine: eigenprojectors, eigenvalue supports, strong
//! cospectrality and walk amplitudes `e_uᵀ exp(−itA) e_v`.

mod exact;
mod walk;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::exact_arith::QuadraticNumber;
use crate::graphs::Graph;
use crate::linalg::{symmetric_eigen, Matrix};

pub use exact::{annotate_exact, exact_projectors, integral_spectrum, recognize_eigenvalue};
pub(crate) use walk::{golden_section_max, scan_kernel};
pub use walk::{
    fidelity_series, max_fidelity_scan, max_fidelity_scan_window, transition_amplitude,
    transition_matrix, AmplitudeKernel, FidelitySeries,
};

pub const DEFAULT_CLUSTER_TOL: f64 = 1e-8;
pub const DEFAULT_SUPPORT_TOL: f64 = 1e-8;
pub const DEFAULT_SIGN_TOL: f64 = 1e-8;

/// Numeric tolerances of the engine, all defaulting to `1e-8`.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct Tolerances {
    /// Relative gap below which eigenvalues are merged.
    pub cluster: f64,
    /// `‖f_λ e_v‖` above which `λ` is in the support of `v`.
    pub support: f64,
    /// Max-norm tolerance of the `f_λ e_u = ±f_λ e_v` test.
    pub sign: f64,
}

impl Default for Tolerances {
    fn default() -> Self {
        Self { cluster: DEFAULT_CLUSTER_TOL, support: DEFAULT_SUPPORT_TOL, sign: DEFAULT_SIGN_TOL }
    }
}

impl Tolerances {
    /// Numeric decomposition of `g` carrying these support and sign
    /// tolerances.
    pub fn decompose(&self, g: &Graph) -> Result<SpectralDecomposition> {
        let mut d = eigendecompose(g, self.cluster)?;
        d.support_tol = self.support;
        d.sign_tol = self.sign;
        Ok(d)
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Source {
    Numeric,
    ClosedForm,
}

/// One distinct eigenvalue with its multiplicity and orthogonal projector.
#[derive(Clone, Debug)]
pub struct SpectralEntry {
    pub eigenvalue: f64,
    pub multiplicity: usize,
    pub projector: Matrix,
    /// Exact value when it has been certified as an integer or quadratic
    /// irrational.
    pub exact: Option<QuadraticNumber>,
}

#[derive(Clone, Debug)]
pub struct SpectralDecomposition {
    pub entries: Vec<SpectralEntry>,
    pub source: Source,
    pub support_tol: f64,
    pub sign_tol: f64,
}

impl SpectralDecomposition {
    pub fn new(entries: Vec<SpectralEntry>, source: Source) -> Self {
        Self { entries, source, support_tol: DEFAULT_SUPPORT_TOL, sign_tol: DEFAULT_SIGN_TOL }
    }

    pub fn n(&self) -> usize {
        self.entries.first().map_or(0, |e| e.projector.n())
    }

    pub fn eigenvalues(&self) -> Vec<f64> {
        self.entries.iter().map(|e| e.eigenvalue).collect()
    }

    /// Eigenvalues repeated by multiplicity, descending.
    pub fn eigenvalue_multiset(&self) -> Vec<f64> {
        self.entries
            .iter()
            .flat_map(|e| std::iter::repeat_n(e.eigenvalue, e.multiplicity))
            .collect()
    }

    pub fn largest_eigenvalue(&self) -> f64 {
        self.entries[0].eigenvalue
    }

    pub fn spectral_radius(&self) -> f64 {
        self.entries.iter().fold(0.0, |m, e| m.max(e.eigenvalue.abs()))
    }

    /// Index of the entry whose eigenvalue lies within `tol` of `value`.
    pub fn find(&self, value: f64, tol: f64) -> Option<usize> {
        self.entries.iter().position(|e| (e.eigenvalue - value).abs() <= tol)
    }

    pub fn check_vertex(&self, v: usize) -> Result<()> {
        if v >= self.n() {
            return Err(Error::VertexOutOfRange { vertex: v, n: self.n() });
        }
        Ok(())
    }

    /// `‖f_λ e_v‖` for entry `j`.
    pub fn column_norm(&self, j: usize, v: usize) -> f64 {
        let p = &self.entries[j].projector;
        (0..p.n()).map(|i| p[(i, v)] * p[(i, v)]).sum::<f64>().sqrt()
    }

    /// `‖Σ P − I‖`, `max ‖P² − P‖`, `max ‖P_j P_k‖` and `‖Σ λP − A‖` in max
    /// norm.
    pub fn identity_defects(&self, adjacency: &Matrix) -> ProjectorDefects {
        let n = self.n();
        let mut sum = Matrix::zeros(n);
        let mut recon = Matrix::zeros(n);
        let mut idempotence: f64 = 0.0;
        let mut orthogonality: f64 = 0.0;
        for (j, e) in self.entries.iter().enumerate() {
            sum.add_scaled(&e.projector, 1.0);
            recon.add_scaled(&e.projector, e.eigenvalue);
            let sq = e.projector.matmul(&e.projector);
            idempotence = idempotence.max(sq.max_abs_diff(&e.projector));
            for other in &self.entries[j + 1..] {
                orthogonality = orthogonality.max(e.projector.matmul(&other.projector).max_abs());
            }
        }
        ProjectorDefects {
            completeness: sum.max_abs_diff(&Matrix::identity(n)),
            idempotence,
            orthogonality,
            reconstruction: recon.max_abs_diff(adjacency),
            multiplicity_total: self.entries.iter().map(|e| e.multiplicity).sum(),
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct ProjectorDefects {
    pub completeness: f64,
    pub idempotence: f64,
    pub orthogonality: f64,
    pub reconstruction: f64,
    pub multiplicity_total: usize,
}

impl ProjectorDefects {
    pub fn max_defect(&self) -> f64 {
        self.completeness.max(self.idempotence).max(self.orthogonality).max(self.reconstruction)
    }
}

/// Numeric eigendecomposition of `A(g)`; eigenvalues closer than
/// `cluster_tol · max(1, ρ(A))` are merged into one entry.
pub fn eigendecompose(g: &Graph, cluster_tol: f64) -> Result<SpectralDecomposition> {
    decompose_matrix(&g.adjacency_matrix(), cluster_tol)
}

pub fn decompose_matrix(a: &Matrix, cluster_tol: f64) -> Result<SpectralDecomposition> {
    if !(cluster_tol > 0.0) {
        return Err(Error::InvalidArgument(format!("cluster_tol must be positive, got {cluster_tol}")));
    }
    let eig = symmetric_eigen(a)?;
    let n = a.n();
    let scale = eig.values.iter().fold(1.0f64, |m, v| m.max(v.abs()));
    let tol = cluster_tol * scale;

    let mut entries = Vec::new();
    let mut start = 0;
    while start < n {
        let mut end = start + 1;
        while end < n && eig.values[end - 1] - eig.values[end] <= tol {
            end += 1;
        }
        let cluster = start..end;
        let mean = eig.values[cluster.clone()].iter().sum::<f64>() / (end - start) as f64;
        let projector = Matrix::from_fn(n, |i, j| {
            cluster.clone().map(|c| eig.vectors[(i, c)] * eig.vectors[(j, c)]).sum()
        });
        entries.push(SpectralEntry {
            eigenvalue: mean,
            multiplicity: end - start,
            projector,
            exact: None,
        });
        start = end;
    }
    Ok(SpectralDecomposition::new(entries, Source::Numeric))
}

/// Raw eigenvalues of `A(g)` with multiplicity, descending.
pub fn eigenvalues(g: &Graph) -> Result<Vec<f64>> {
    Ok(symmetric_eigen(&g.adjacency_matrix())?.values)
}

/// Eigenvalues `λ` with `f_λ e_v ≠ 0` (by the decomposition's support
/// tolerance), as indices into the decomposition and as values.
#[derive(Clone, Debug, PartialEq)]
pub struct SupportSet {
    pub vertex: usize,
    pub indices: Vec<usize>,
    pub eigenvalues: Vec<f64>,
}

impl SupportSet {
    pub fn len(&self) -> usize {
        self.indices.len()
    }

    pub fn is_empty(&self) -> bool {
        self.indices.is_empty()
    }

    pub fn contains(&self, index: usize) -> bool {
        self.indices.contains(&index)
    }

    pub fn is_subset_of(&self, other: &SupportSet) -> bool {
        self.indices.iter().all(|i| other.indices.contains(i))
    }
}

pub fn eigenvalue_support(d: &SpectralDecomposition, v: usize) -> Result<SupportSet> {
    d.check_vertex(v)?;
    let indices: Vec<usize> =
        (0..d.entries.len()).filter(|&j| d.column_norm(j, v) > d.support_tol).collect();
    let eigenvalues = indices.iter().map(|&j| d.entries[j].eigenvalue).collect();
    Ok(SupportSet { vertex: v, indices, eigenvalues })
}

#[derive(Clone, Debug, PartialEq)]
pub struct CospectralityReport {
    pub u: usize,
    pub v: usize,
    pub strongly_cospectral: bool,
    /// Entries with `f_λ e_u = f_λ e_v ≠ 0`.
    pub s_plus: Vec<usize>,
    /// Entries with `f_λ e_u = −f_λ e_v ≠ 0`.
    pub s_minus: Vec<usize>,
    /// Support entries of `u` or `v` that are in neither class.
    pub neither: Vec<usize>,
}

impl CospectralityReport {
    pub fn s_plus_values(&self, d: &SpectralDecomposition) -> Vec<f64> {
        self.s_plus.iter().map(|&j| d.entries[j].eigenvalue).collect()
    }

    pub fn s_minus_values(&self, d: &SpectralDecomposition) -> Vec<f64> {
        self.s_minus.iter().map(|&j| d.entries[j].eigenvalue).collect()
    }
}

pub fn strong_cospectrality(d: &SpectralDecomposition, u: usize, v: usize) -> Result<CospectralityReport> {
    d.check_vertex(u)?;
    d.check_vertex(v)?;
    let mut report = CospectralityReport {
        u,
        v,
        strongly_cospectral: true,
        s_plus: Vec::new(),
        s_minus: Vec::new(),
        neither: Vec::new(),
    };
    for (j, e) in d.entries.iter().enumerate() {
        let in_u = d.column_norm(j, u) > d.support_tol;
        let in_v = d.column_norm(j, v) > d.support_tol;
        if !in_u && !in_v {
            continue;
        }
        let p = &e.projector;
        let (mut plus, mut minus) = (0.0f64, 0.0f64);
        for i in 0..p.n() {
            plus = plus.max((p[(i, u)] - p[(i, v)]).abs());
            minus = minus.max((p[(i, u)] + p[(i, v)]).abs());
        }
        if in_u && in_v && plus <= d.sign_tol {
            report.s_plus.push(j);
        } else if in_u && in_v && minus <= d.sign_tol {
            report.s_minus.push(j);
        } else {
            report.neither.push(j);
            report.strongly_cospectral = false;
        }
    }
    Ok(report)
}
