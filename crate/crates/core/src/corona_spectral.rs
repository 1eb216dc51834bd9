//! Closed-form spectrum, eigenprojectors and apex amplitudes of the
//! neighborhood corona `G1 ★ G2` for a `k`-regular `G2`.
//!
//! Every eigenvalue `λ ≠ 0` of `G1` splits into
//! `λ± = (λ + k ± Δ_λ)/2` with `Δ_λ = √((λ−k)² + 4n2λ²)`; `λ = 0` yields `k`
//! and `0`; every eigenvalue `η` of `G2` survives with multiplicity
//! `n1·l'(η)`, less one `n1`-dimensional slice for `η = k`.

use std::collections::BTreeMap;
use std::fmt;

use num_bigint::BigInt;
use num_complex::Complex64;
use num_traits::{One, Zero};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::exact_arith::{product_is_zero, QuadMatrix, QuadraticNumber, RatMatrix, Rational};
use crate::graphs::{regularity_degree, Graph};
use crate::linalg::Matrix;
use crate::spectral_core::{
    annotate_exact, eigendecompose, exact_projectors, integral_spectrum, Source,
    SpectralDecomposition, SpectralEntry, DEFAULT_CLUSTER_TOL,
};

/// Where a corona eigenvalue comes from.
#[derive(Clone, Debug, PartialEq)]
pub enum Origin {
    PlusBranch(f64),
    MinusBranch(f64),
    G2Eigenvalue(f64),
    SpecialK,
    SpecialZero,
}

impl fmt::Display for Origin {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Origin::PlusBranch(l) => write!(f, "plus({l})"),
            Origin::MinusBranch(l) => write!(f, "minus({l})"),
            Origin::G2Eigenvalue(e) => write!(f, "g2({e})"),
            Origin::SpecialK => f.write_str("special-k"),
            Origin::SpecialZero => f.write_str("special-zero"),
        }
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct CoronaEigenvalue {
    pub origin: Origin,
    pub value: f64,
    pub exact: Option<QuadraticNumber>,
    pub multiplicity: usize,
}

impl CoronaEigenvalue {
    /// Canonical exact string when known, else the float.
    pub fn value_string(&self) -> String {
        match &self.exact {
            Some(x) => x.to_string(),
            None => format!("{:.16e}", self.value),
        }
    }

    pub fn record(&self) -> EigenvalueRecord {
        EigenvalueRecord {
            origin: self.origin.to_string(),
            value: self.value_string(),
            multiplicity: self.multiplicity,
        }
    }
}

/// JSON form of one [`CoronaEigenvalue`].
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct EigenvalueRecord {
    pub origin: String,
    pub value: String,
    pub multiplicity: usize,
}

/// `Δ_λ = √((λ−k)² + 4n2λ²)`.
#[derive(Clone, Debug, PartialEq)]
pub struct DeltaLambda {
    pub lambda: f64,
    pub exact: Option<QuadraticNumber>,
    pub value: f64,
}

pub fn delta_lambda(lambda: f64, k: u64, n2: u64) -> DeltaLambda {
    let value = ((lambda - k as f64).powi(2) + 4.0 * n2 as f64 * lambda * lambda).sqrt();
    DeltaLambda { lambda, exact: None, value }
}

/// Exact `Δ_λ` for integer `λ`.
pub fn delta_lambda_int(lambda: i64, k: u64, n2: u64) -> Result<DeltaLambda> {
    let l = BigInt::from(lambda);
    let radicand = (&l - BigInt::from(k)).pow(2) + BigInt::from(4 * n2) * &l * &l;
    let exact = QuadraticNumber::sqrt_int(&radicand)?;
    Ok(DeltaLambda { lambda: lambda as f64, value: exact.to_f64(), exact: Some(exact) })
}

/// Exact `(λ+, λ−)` for integer `λ`.
pub fn exact_branches(lambda: i64, k: u64, n2: u64) -> Result<(QuadraticNumber, QuadraticNumber)> {
    let delta = delta_lambda_int(lambda, k, n2)?.exact.expect("integer lambda");
    let s = QuadraticNumber::integer(lambda + k as i64);
    let half = Rational::new(BigInt::one(), BigInt::from(2));
    Ok((s.checked_add(&delta)?.scale(&half), s.checked_sub(&delta)?.scale(&half)))
}

fn float_branches(lambda: f64, k: u64, n2: u64) -> (f64, f64) {
    let d = delta_lambda(lambda, k, n2).value;
    let s = lambda + k as f64;
    ((s + d) / 2.0, (s - d) / 2.0)
}

fn entry_is_zero(e: &SpectralEntry, tol: f64) -> bool {
    match &e.exact {
        Some(x) => x.is_zero(),
        None => e.eigenvalue.abs() <= tol,
    }
}

fn zero_tol(d: &SpectralDecomposition) -> f64 {
    DEFAULT_CLUSTER_TOL * d.spectral_radius().max(1.0)
}

/// Index in `d2` of the eigenvalue `k`.
fn find_k(d2: &SpectralDecomposition, k: u64) -> Result<usize> {
    d2.find(k as f64, zero_tol(d2)).ok_or_else(|| {
        Error::InvalidGraph(format!("G2 is not {k}-regular: {k} is not an eigenvalue"))
    })
}

/// Eigenvalues of `G1 ★ G2` from the spectra of `G1` and the `k`-regular
/// `G2` on `n2` vertices.
pub fn corona_eigenvalues(
    sp1: &SpectralDecomposition,
    sp2: &SpectralDecomposition,
    k: u64,
    n2: u64,
) -> Result<Vec<CoronaEigenvalue>> {
    if n2 == 0 || sp2.n() as u64 != n2 {
        return Err(Error::InvalidArgument(format!(
            "n2 = {n2} does not match G2 spectrum on {} vertices",
            sp2.n()
        )));
    }
    let n1 = sp1.n();
    let tol = zero_tol(sp1);
    let mut out = Vec::new();
    for e in &sp1.entries {
        let l = e.multiplicity;
        if entry_is_zero(e, tol) {
            out.push(CoronaEigenvalue {
                origin: Origin::SpecialK,
                value: k as f64,
                exact: Some(QuadraticNumber::integer(k as i64)),
                multiplicity: l,
            });
            out.push(CoronaEigenvalue {
                origin: Origin::SpecialZero,
                value: 0.0,
                exact: Some(QuadraticNumber::integer(0)),
                multiplicity: l,
            });
            continue;
        }
        let (plus, minus) = float_branches(e.eigenvalue, k, n2);
        let (ep, em) = match e.exact.as_ref().and_then(|x| x.as_integer()) {
            Some(i) => {
                let i = i64::try_from(i).map_err(|_| Error::InvalidArgument("eigenvalue too large".into()))?;
                let (p, m) = exact_branches(i, k, n2)?;
                (Some(p), Some(m))
            }
            None => (None, None),
        };
        out.push(CoronaEigenvalue {
            origin: Origin::PlusBranch(e.eigenvalue),
            value: ep.as_ref().map_or(plus, |x| x.to_f64()),
            exact: ep,
            multiplicity: l,
        });
        out.push(CoronaEigenvalue {
            origin: Origin::MinusBranch(e.eigenvalue),
            value: em.as_ref().map_or(minus, |x| x.to_f64()),
            exact: em,
            multiplicity: l,
        });
    }
    let jk = find_k(sp2, k)?;
    for (j, e) in sp2.entries.iter().enumerate() {
        let l = if j == jk { e.multiplicity - 1 } else { e.multiplicity };
        if l == 0 {
            continue;
        }
        out.push(CoronaEigenvalue {
            origin: Origin::G2Eigenvalue(e.eigenvalue),
            value: e.eigenvalue,
            exact: e.exact.clone(),
            multiplicity: n1 * l,
        });
    }
    let total: usize = out.iter().map(|c| c.multiplicity).sum();
    let expected = n1 * (1 + n2 as usize);
    if total != expected {
        return Err(Error::MultiplicityMismatch { expected, got: total });
    }
    Ok(out)
}

/// Closed-form spectral data of a corona: one projector per origin, plus the
/// decomposition obtained by merging coinciding eigenvalues.
#[derive(Clone, Debug)]
pub struct CoronaDecomposition {
    pub eigen: Vec<CoronaEigenvalue>,
    pub projectors: Vec<Matrix>,
    pub n1: usize,
    pub n2: usize,
    pub k: u64,
    pub merged: SpectralDecomposition,
}

impl CoronaDecomposition {
    pub fn n(&self) -> usize {
        self.n1 * (1 + self.n2)
    }

    pub fn records(&self) -> Vec<EigenvalueRecord> {
        self.eigen.iter().map(CoronaEigenvalue::record).collect()
    }

    /// Projector of the `λ− = 0` branch, present iff `0 ∈ Sp(G1)`.
    pub fn special_zero(&self) -> Option<&Matrix> {
        self.eigen
            .iter()
            .position(|e| e.origin == Origin::SpecialZero)
            .map(|i| &self.projectors[i])
    }
}

/// Maps a corona index to `(x, None)` for apexes, `(x, Some(y))` otherwise.
fn split(i: usize, n1: usize, n2: usize) -> (usize, Option<usize>) {
    if i < n1 {
        (i, None)
    } else {
        ((i - n1) / n2, Some((i - n1) % n2))
    }
}

fn lift(n1: usize, n2: usize, f: impl Fn((usize, Option<usize>), (usize, Option<usize>)) -> f64) -> Matrix {
    Matrix::from_fn(n1 * (1 + n2), |i, j| f(split(i, n1, n2), split(j, n1, n2)))
}

/// Builds the per-origin projectors of `G1 ★ G2` from decompositions of `G1`
/// and the `k`-regular `G2`.
pub fn corona_projectors(
    d1: &SpectralDecomposition,
    d2: &SpectralDecomposition,
    n2: usize,
    k: u64,
) -> Result<CoronaDecomposition> {
    let jk = find_k(d2, k)?;
    let fk = &d2.entries[jk].projector;
    // G2 is k-regular iff the all-ones vector lies in the k-eigenspace.
    let row_defect = (0..n2)
        .map(|i| ((0..n2).map(|j| fk[(i, j)]).sum::<f64>() - 1.0).abs())
        .fold(0.0f64, f64::max);
    if row_defect > 1e-8 {
        return Err(Error::InvalidGraph(format!("G2 is not {k}-regular")));
    }
    let eigen = corona_eigenvalues(d1, d2, k, n2 as u64)?;
    let n1 = d1.n();
    let kf = k as f64;
    let n2f = n2 as f64;
    let tol = zero_tol(d1);
    let mut projectors = Vec::with_capacity(eigen.len());
    for ce in &eigen {
        let p = match &ce.origin {
            Origin::PlusBranch(_) | Origin::MinusBranch(_) => {
                let e = d1
                    .entries
                    .iter()
                    .find(|e| match &ce.origin {
                        Origin::PlusBranch(l) | Origin::MinusBranch(l) => e.eigenvalue == *l,
                        _ => false,
                    })
                    .expect("origin taken from d1");
                let lambda = e.eigenvalue;
                let mu = ce.value;
                let r = (mu - kf) / lambda;
                let c = lambda * lambda / ((mu - kf).powi(2) + n2f * lambda * lambda);
                let f = &e.projector;
                lift(n1, n2, |(x, a), (x2, b)| {
                    let s = match (a, b) {
                        (None, None) => r * r,
                        (Some(_), Some(_)) => 1.0,
                        _ => r,
                    };
                    c * s * f[(x, x2)]
                })
            }
            Origin::G2Eigenvalue(eta) => {
                let e = d2.entries.iter().find(|e| e.eigenvalue == *eta).expect("origin taken from d2");
                let shift = if (eta - kf).abs() <= zero_tol(d2) { 1.0 / n2f } else { 0.0 };
                let f = &e.projector;
                lift(n1, n2, |(x, a), (x2, b)| match (a, b) {
                    (Some(y), Some(y2)) if x == x2 => f[(y, y2)] - shift,
                    _ => 0.0,
                })
            }
            Origin::SpecialK | Origin::SpecialZero => {
                let f0 = &d1.entries.iter().find(|e| entry_is_zero(e, tol)).expect("zero entry").projector;
                let special_k = ce.origin == Origin::SpecialK;
                lift(n1, n2, |(x, a), (x2, b)| match (a, b) {
                    (Some(_), Some(_)) if special_k => f0[(x, x2)] / n2f,
                    (None, None) if !special_k => f0[(x, x2)],
                    _ => 0.0,
                })
            }
        };
        projectors.push(p);
    }
    let merged = merge(&eigen, &projectors);
    Ok(CoronaDecomposition { eigen, projectors, n1, n2, k, merged })
}

/// Groups coinciding eigenvalues into one closed-form spectral entry.
fn merge(eigen: &[CoronaEigenvalue], projectors: &[Matrix]) -> SpectralDecomposition {
    let mut order: Vec<usize> = (0..eigen.len()).collect();
    order.sort_by(|&a, &b| eigen[b].value.total_cmp(&eigen[a].value));
    let scale = eigen.iter().fold(1.0f64, |m, e| m.max(e.value.abs()));
    let tol = DEFAULT_CLUSTER_TOL * scale;
    let mut entries: Vec<SpectralEntry> = Vec::new();
    let mut last = f64::INFINITY;
    for i in order {
        let e = &eigen[i];
        match entries.last_mut() {
            Some(entry) if last - e.value <= tol => {
                entry.multiplicity += e.multiplicity;
                entry.projector.add_scaled(&projectors[i], 1.0);
                if entry.exact.is_none() {
                    entry.exact = e.exact.clone();
                }
            }
            _ => entries.push(SpectralEntry {
                eigenvalue: e.value,
                multiplicity: e.multiplicity,
                projector: projectors[i].clone(),
                exact: e.exact.clone(),
            }),
        }
        last = e.value;
    }
    SpectralDecomposition::new(entries, Source::ClosedForm)
}

/// Decomposes both factors numerically (annotating exact values) and builds
/// the closed-form corona decomposition.
pub fn corona_decomposition(g1: &Graph, g2: &Graph, cluster_tol: f64) -> Result<CoronaDecomposition> {
    let k = regularity_degree(g2).ok_or_else(|| Error::InvalidGraph("G2 is not regular".into()))?;
    let (d1, d2) = factor_decompositions(g1, g2, cluster_tol)?;
    corona_projectors(&d1, &d2, g2.n(), k as u64)
}

pub fn factor_decompositions(
    g1: &Graph,
    g2: &Graph,
    cluster_tol: f64,
) -> Result<(SpectralDecomposition, SpectralDecomposition)> {
    let mut d1 = eigendecompose(g1, cluster_tol)?;
    annotate_exact(g1, &mut d1);
    let mut d2 = eigendecompose(g2, cluster_tol)?;
    annotate_exact(g2, &mut d2);
    Ok((d1, d2))
}

/// `e_(u,0)ᵀ exp(−itA) e_(v,0)` between apexes from the spectrum of `G1`
/// alone.
pub fn apex_amplitude(d1: &SpectralDecomposition, k: u64, n2: u64, u: usize, v: usize, t: f64) -> Result<Complex64> {
    d1.check_vertex(u)?;
    d1.check_vertex(v)?;
    if !t.is_finite() {
        return Err(Error::InvalidArgument(format!("time must be finite, got {t}")));
    }
    let kf = k as f64;
    let tol = zero_tol(d1);
    let mut sum = Complex64::new(0.0, 0.0);
    for e in &d1.entries {
        let c = e.projector[(u, v)];
        if entry_is_zero(e, tol) {
            sum += c;
            continue;
        }
        let lambda = e.eigenvalue;
        let delta = delta_lambda(lambda, k, n2).value;
        if delta == 0.0 {
            return Err(Error::DivisionByZero);
        }
        let half = delta * t / 2.0;
        let inner = Complex64::new(half.cos(), (kf - lambda) / delta * half.sin());
        sum += Complex64::from_polar(c, -t * (lambda + kf) / 2.0) * inner;
    }
    Ok(sum)
}

/// Outcome of checking the projector identities in exact arithmetic.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct ExactIdentityReport {
    pub completeness: bool,
    pub idempotence: bool,
    pub orthogonality: bool,
    pub reconstruction: bool,
}

impl ExactIdentityReport {
    pub fn all_hold(&self) -> bool {
        self.completeness && self.idempotence && self.orthogonality && self.reconstruction
    }
}

fn exact_lift(
    n1: usize,
    n2: usize,
    d: u64,
    cell: impl Fn((usize, Option<usize>), (usize, Option<usize>)) -> (Rational, Rational),
) -> QuadMatrix {
    let n = n1 * (1 + n2);
    let mut rational = RatMatrix::zeros(n);
    let mut surd = RatMatrix::zeros(n);
    for i in 0..n {
        for j in 0..n {
            let (p, q) = cell(split(i, n1, n2), split(j, n1, n2));
            rational[(i, j)] = p;
            surd[(i, j)] = q;
        }
    }
    QuadMatrix { d, rational, surd }
}

fn quad_eq(a: &QuadMatrix, b: &QuadMatrix) -> bool {
    a.rational == b.rational && a.surd == b.surd && (a.surd.is_zero() || a.d == b.d)
}

/// `c · M` for a quadratic scalar sharing `M`'s radicand.
fn scalar_mul(c: &QuadraticNumber, m: &QuadMatrix) -> Result<QuadMatrix> {
    QuadMatrix::scaled(c, &RatMatrix::identity(m.n())).matmul(m)
}

/// `Σ M` split over the basis `1, √d1, √d2, …`: the rational total and the
/// surd total for each radicand.
fn sum_over_basis<'a>(ms: impl IntoIterator<Item = &'a QuadMatrix>, n: usize) -> (RatMatrix, BTreeMap<u64, RatMatrix>) {
    let mut rational = RatMatrix::zeros(n);
    let mut surds: BTreeMap<u64, RatMatrix> = BTreeMap::new();
    for m in ms {
        rational = rational.add(&m.rational);
        if !m.surd.is_zero() {
            let slot = surds.entry(m.d).or_insert_with(|| RatMatrix::zeros(n));
            *slot = slot.add(&m.surd);
        }
    }
    (rational, surds)
}

/// Checks completeness, idempotence, orthogonality and reconstruction of the
/// corona projectors exactly. Requires integral `G1` and `G2` and a regular
/// `G2`.
pub fn exact_identities(g1: &Graph, g2: &Graph) -> Result<ExactIdentityReport> {
    let k = regularity_degree(g2).ok_or_else(|| Error::InvalidGraph("G2 is not regular".into()))?;
    let (d1, d2) = factor_decompositions(g1, g2, DEFAULT_CLUSTER_TOL)?;
    let sp1 = integral_spectrum(g1, &d1)
        .ok_or_else(|| Error::HypothesisNotMet("G1 is not integral".into()))?;
    let sp2 = integral_spectrum(g2, &d2)
        .ok_or_else(|| Error::HypothesisNotMet("G2 is not integral".into()))?;
    let f1 = exact_projectors(g1, &sp1);
    let f2 = exact_projectors(g2, &sp2);
    let (n1, n2) = (g1.n(), g2.n());
    let n = n1 * (1 + n2);
    let kb = BigInt::from(k);
    let inv_n2 = Rational::new(BigInt::one(), BigInt::from(n2));
    let zero = Rational::zero;

    let mut pieces: Vec<(QuadraticNumber, QuadMatrix)> = Vec::new();
    for (lambda, f) in sp1.iter().zip(&f1) {
        if lambda.is_zero() {
            let special_k = exact_lift(n1, n2, 1, |(x, a), (x2, b)| match (a, b) {
                (Some(_), Some(_)) => (&f[(x, x2)] * &inv_n2, zero()),
                _ => (zero(), zero()),
            });
            let special_zero = exact_lift(n1, n2, 1, |(x, a), (x2, b)| match (a, b) {
                (None, None) => (f[(x, x2)].clone(), zero()),
                _ => (zero(), zero()),
            });
            pieces.push((QuadraticNumber::from_bigint(kb.clone()), special_k));
            pieces.push((QuadraticNumber::integer(0), special_zero));
            continue;
        }
        let l = i64::try_from(lambda.clone()).map_err(|_| Error::InvalidArgument("eigenvalue too large".into()))?;
        let (plus, minus) = exact_branches(l, k as u64, n2 as u64)?;
        let lq = QuadraticNumber::from_bigint(lambda.clone());
        let l2 = lq.square();
        let n2l2 = l2.scale(&Rational::from_integer(BigInt::from(n2)));
        for mu in [plus, minus] {
            let shifted = mu.checked_sub(&QuadraticNumber::from_bigint(kb.clone()))?;
            let r = shifted.checked_div(&lq)?;
            let c = l2.checked_div(&shifted.square().checked_add(&n2l2)?)?;
            let (tl, off) = (c.checked_mul(&r.square())?, c.checked_mul(&r)?);
            let d = mu.d();
            let m = exact_lift(n1, n2, d, |(x, a), (x2, b)| {
                let s = match (a, b) {
                    (None, None) => &tl,
                    (Some(_), Some(_)) => &c,
                    _ => &off,
                };
                let v = &f[(x, x2)];
                (s.p() * v, s.q() * v)
            });
            pieces.push((mu, m));
        }
    }
    for (eta, f) in sp2.iter().zip(&f2) {
        let shift = if *eta == kb { inv_n2.clone() } else { zero() };
        let m = exact_lift(n1, n2, 1, |(x, a), (x2, b)| match (a, b) {
            (Some(y), Some(y2)) if x == x2 => (&f[(y, y2)] - &shift, zero()),
            _ => (zero(), zero()),
        });
        if !m.is_zero() {
            pieces.push((QuadraticNumber::from_bigint(eta.clone()), m));
        }
    }

    let (sum, surds) = sum_over_basis(pieces.iter().map(|(_, m)| m), n);
    let completeness = sum == RatMatrix::identity(n) && surds.values().all(RatMatrix::is_zero);
    let idempotence = pieces.iter().all(|(_, m)| m.matmul(m).is_ok_and(|sq| quad_eq(&sq, m)));
    let orthogonality = pieces
        .iter()
        .enumerate()
        .all(|(i, (_, a))| pieces[i + 1..].iter().all(|(_, b)| product_is_zero(a, b)));
    let weighted: Vec<QuadMatrix> =
        pieces.iter().map(|(mu, m)| scalar_mul(mu, m)).collect::<Result<_>>()?;
    let (recon, surds) = sum_over_basis(&weighted, n);
    let adjacency = RatMatrix::from_integers(n, &crate::graphs::neighborhood_corona(g1, g2).adjacency_entries());
    let reconstruction = recon == adjacency && surds.values().all(RatMatrix::is_zero);
    Ok(ExactIdentityReport { completeness, idempotence, orthogonality, reconstruction })
}
