//! Pretty good state transfer witnesses: simultaneous approximation of
//! `α√b_j` to prescribed targets, the two corona constructions built on it,
//! and a plain numerical time search.

use std::f64::consts::PI;

use num_bigint::BigInt;
use num_integer::Roots;
use num_rational::BigRational;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::corona_spectral::{apex_amplitude, delta_lambda_int, factor_decompositions};
use crate::error::{Error, Result};
use crate::exact_arith::{is_square_free, square_free_decompose};
use crate::graphs::{build_family, neighborhood_corona, regularity_degree, Family, Graph};
use crate::spectral_core::{
    eigendecompose, eigenvalue_support, integral_spectrum, AmplitudeKernel, DEFAULT_CLUSTER_TOL,
};
use crate::transfer_pst::certify_pst;

pub const DEFAULT_ALPHA_MAX: u64 = 1_000_000;

/// `α` with `|α√b_j − c_j − target_j| < ε` for every `j`.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct ApproximationWitness {
    pub alpha: u64,
    pub radicands: Vec<u64>,
    pub targets: Vec<f64>,
    pub c_values: Vec<i64>,
    pub residuals: Vec<f64>,
    pub epsilon: f64,
}

fn residual(alpha: u64, b: u64, target: f64) -> (i64, f64) {
    let x = alpha as f64 * (b as f64).sqrt() - target;
    let c = x.round();
    (c as i64, (x - c).abs())
}

/// Smallest `α` in `(n_min, alpha_max]` approximating every target within
/// `eps`. Repeated radicands must carry the same target and share one `c`.
pub fn simultaneous_approx(
    radicands: &[u64],
    targets: &[f64],
    eps: f64,
    n_min: u64,
    alpha_max: u64,
) -> Result<ApproximationWitness> {
    if radicands.len() != targets.len() || radicands.is_empty() {
        return Err(Error::InvalidArgument("need one target per radicand".into()));
    }
    if !(eps > 0.0) {
        return Err(Error::InvalidArgument(format!("epsilon must be positive, got {eps}")));
    }
    let mut unique: Vec<(u64, f64)> = Vec::new();
    for (&b, &t) in radicands.iter().zip(targets) {
        if b < 2 || !is_square_free(b) {
            return Err(Error::InvalidArgument(format!("radicand {b} is not a square-free integer > 1")));
        }
        if !t.is_finite() {
            return Err(Error::InvalidArgument(format!("target {t} is not finite")));
        }
        match unique.iter().find(|(b2, _)| *b2 == b) {
            Some(&(_, t2)) if (t2 - t).abs() > 1e-12 => {
                return Err(Error::InvalidArgument(format!(
                    "radicand {b} appears with different targets {t2} and {t}"
                )))
            }
            Some(_) => {}
            None => unique.push((b, t)),
        }
    }
    let alpha = (n_min.saturating_add(1)..=alpha_max)
        .into_par_iter()
        .find_first(|&a| unique.iter().all(|&(b, t)| residual(a, b, t).1 < eps))
        .ok_or(Error::BudgetExceeded { n_min, alpha_max })?;
    let (c_values, residuals): (Vec<i64>, Vec<f64>) =
        radicands.iter().zip(targets).map(|(&b, &t)| residual(alpha, b, t)).unzip();
    if residuals.iter().any(|&r| r >= eps) {
        return Err(Error::Consistency(format!("alpha = {alpha} fails its own residual bound")));
    }
    Ok(ApproximationWitness {
        alpha,
        radicands: radicands.to_vec(),
        targets: targets.to_vec(),
        c_values,
        residuals,
        epsilon: eps,
    })
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub enum Construction {
    Theorem51,
    Theorem53,
    GenericScan,
}

/// A time, as an exact rational multiple of π when known.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct WitnessTime {
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub coeff_of_pi: Option<String>,
    pub float: f64,
}

impl WitnessTime {
    fn pi_multiple(coeff: BigRational) -> Self {
        let float = crate::exact_arith::rational_to_f64(&coeff) * PI;
        Self { coeff_of_pi: Some(coeff.to_string()), float }
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct PGSTWitness {
    pub u: usize,
    pub v: usize,
    pub t0: WitnessTime,
    pub fidelity: f64,
    pub epsilon: f64,
    /// Whether `fidelity > 1 − ε`.
    pub success: bool,
    pub construction: Construction,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub alpha: Option<u64>,
    #[serde(default)]
    pub radicands: Vec<u64>,
    #[serde(default)]
    pub c_values: Vec<i64>,
    #[serde(default)]
    pub residuals: Vec<f64>,
}

impl PGSTWitness {
    pub fn to_json(&self) -> String {
        serde_json::to_string(self).expect("witness serializes")
    }

    pub fn from_json(s: &str) -> Result<Self> {
        serde_json::from_str(s).map_err(|e| Error::Parse(e.to_string()))
    }
}

/// Residual budget handed to the approximation engine for `m` support
/// eigenvalues whose gaps are `a_j√b_j`.
pub fn residual_budget(eps: f64, m: usize, a_max: u64) -> f64 {
    eps / (4.0 * m as f64 * a_max as f64)
}

/// `G1 ★ K̄n2` with `G1` integral and PST between `x` and `y` at `π/g`:
/// approximate `α√b_j ≈ c_j − √b_j/(2g)` and take `t0 = (4α + 2/g)π`.
pub fn pgst_witness_theorem51(
    g1: &Graph,
    x: usize,
    y: usize,
    n2: usize,
    eps: f64,
    alpha_max: u64,
) -> Result<PGSTWitness> {
    if n2 == 0 {
        return Err(Error::InvalidArgument("n2 must be at least 1".into()));
    }
    let cert = certify_pst(g1, x, y)?;
    if !cert.is_pst() || cert.delta != Some(1) {
        return Err(Error::HypothesisNotMet(format!(
            "G1 needs PST between {x} and {y} with integral support (got {:?}, delta {:?})",
            cert.verdict, cert.delta
        )));
    }
    let g = cert.g.expect("PST certificate carries g");
    let m = 4 * n2 as u64 + 1;
    let (s, b) = square_free_decompose(m as i64)?;
    if b == 1 {
        return Err(Error::HypothesisNotMet(format!("sqrt(4*{n2}+1) = {s} is an integer")));
    }
    let empty = build_family(Family::Empty, n2)?;
    let (d1, _) = factor_decompositions(g1, &empty, DEFAULT_CLUSTER_TOL)?;
    let spectrum = integral_spectrum(g1, &d1).ok_or_else(|| Error::HypothesisNotMet("G1 is not integral".into()))?;
    let supp = eigenvalue_support(&d1, y)?;
    // Δ_λ = |λ|·√(4n2+1) = |λ|·s·√b over the nonzero support
    let a_values: Vec<u64> = supp
        .indices
        .iter()
        .map(|&j| &spectrum[j])
        .filter(|l| **l != BigInt::from(0))
        .map(|l| u64::try_from(l.magnitude().clone()).expect("small eigenvalue") * s)
        .collect();
    if a_values.is_empty() {
        return Err(Error::HypothesisNotMet(format!("supp({y}) has no nonzero eigenvalue")));
    }
    let a_max = *a_values.iter().max().expect("nonempty");
    let budget = residual_budget(eps, a_values.len(), a_max);
    let target = -(b as f64).sqrt() / (2.0 * g as f64);
    let radicands = vec![b; a_values.len()];
    let approx = simultaneous_approx(&radicands, &vec![target; a_values.len()], budget, 0, alpha_max)?;
    let coeff = BigRational::new(BigInt::from(4 * approx.alpha * g + 2), BigInt::from(g));
    let t0 = WitnessTime::pi_multiple(coeff);
    let fidelity = apex_amplitude(&d1, 0, n2 as u64, x, y, t0.float)?.norm_sqr();
    Ok(PGSTWitness {
        u: x,
        v: y,
        t0,
        fidelity,
        epsilon: eps,
        success: fidelity > 1.0 - eps,
        construction: Construction::Theorem51,
        alpha: Some(approx.alpha),
        radicands,
        c_values: approx.c_values,
        residuals: approx.residuals,
    })
}

fn non_square(m: u64) -> bool {
    m.sqrt().pow(2) != m
}

/// `C4 ★ G2` for `G2` connected and `k`-regular with `k ≡ 0 (mod 4)` and
/// both gaps `√((2∓k)² + 16n2)` irrational: approximate
/// `α√b_j ≈ c_j − √b_j/4` and take `t0 = (4α + 1)π` between the antipodal
/// apexes `x` and `y` of `C4`.
pub fn pgst_witness_theorem53(g2: &Graph, x: usize, y: usize, eps: f64, alpha_max: u64) -> Result<PGSTWitness> {
    if x >= 4 || y >= 4 || x.abs_diff(y) != 2 {
        return Err(Error::HypothesisNotMet(format!("apexes {x} and {y} are not antipodal in C4")));
    }
    let k = regularity_degree(g2).ok_or_else(|| Error::HypothesisNotMet("G2 is not regular".into()))? as u64;
    if !g2.is_connected() {
        return Err(Error::HypothesisNotMet("G2 is not connected".into()));
    }
    if !k.is_multiple_of(4) {
        return Err(Error::HypothesisNotMet(format!("k = {k} is not divisible by 4")));
    }
    let n2 = g2.n() as u64;
    let r1 = (2 - k as i64).pow(2) as u64 + 16 * n2;
    let r3 = (2 + k).pow(2) + 16 * n2;
    for r in [r1, r3] {
        if !non_square(r) {
            return Err(Error::HypothesisNotMet(format!("sqrt({r}) is an integer")));
        }
    }
    let c4 = build_family(Family::Cycle, 4)?;
    let (d1, _) = factor_decompositions(&c4, g2, DEFAULT_CLUSTER_TOL)?;
    let mut a_values = Vec::new();
    let mut radicands = Vec::new();
    for lambda in [2i64, -2] {
        let delta = delta_lambda_int(lambda, k, n2)?.exact.expect("integer lambda");
        let a = delta.q().to_integer();
        a_values.push(u64::try_from(a).expect("positive coefficient"));
        radicands.push(delta.d());
    }
    let a_max = *a_values.iter().max().expect("two gaps");
    let budget = residual_budget(eps, a_values.len(), a_max);
    let targets: Vec<f64> = radicands.iter().map(|&b| -(b as f64).sqrt() / 4.0).collect();
    let approx = simultaneous_approx(&radicands, &targets, budget, 0, alpha_max)?;
    let t0 = WitnessTime::pi_multiple(BigRational::from_integer(BigInt::from(4 * approx.alpha + 1)));
    let fidelity = apex_amplitude(&d1, k, n2, x, y, t0.float)?.norm_sqr();
    Ok(PGSTWitness {
        u: x,
        v: y,
        t0,
        fidelity,
        epsilon: eps,
        success: fidelity > 1.0 - eps,
        construction: Construction::Theorem53,
        alpha: Some(approx.alpha),
        radicands,
        c_values: approx.c_values,
        residuals: approx.residuals,
    })
}

/// The corona `C4 ★ G2` the C4-based construction runs on.
pub fn theorem53_corona(g2: &Graph) -> Result<Graph> {
    Ok(neighborhood_corona(&build_family(Family::Cycle, 4)?, g2))
}

/// Grid-plus-refinement search for a time with fidelity above `1 − eps` on
/// `[t_min, t_max]`. For `u = v` the walk must first leave `u`; the first
/// return is reported.
pub fn pgst_search_generic(
    g: &Graph,
    u: usize,
    v: usize,
    eps: f64,
    t_min: f64,
    t_max: f64,
    steps: usize,
) -> Result<PGSTWitness> {
    if !(eps > 0.0) {
        return Err(Error::InvalidArgument(format!("epsilon must be positive, got {eps}")));
    }
    if !(t_max > t_min) || !t_min.is_finite() || !t_max.is_finite() || t_min < 0.0 {
        return Err(Error::InvalidArgument(format!("need 0 <= t_min < t_max, got [{t_min}, {t_max}]")));
    }
    if steps < 2 {
        return Err(Error::InvalidArgument(format!("need at least 2 steps, got {steps}")));
    }
    let d = eigendecompose(g, DEFAULT_CLUSTER_TOL)?;
    let kernel = AmplitudeKernel::new(&d, u, v)?;
    let time = |i: usize| t_min + (t_max - t_min) * i as f64 / (steps - 1) as f64;
    let threshold = 1.0 - eps;
    let (t, fidelity) = if u == v {
        let samples: Vec<f64> = (0..steps).into_par_iter().map(|i| kernel.fidelity(time(i))).collect();
        match samples.iter().position(|&f| f <= threshold) {
            None => (time(steps - 1), samples[steps - 1]),
            Some(i0) => first_revival(&kernel, &samples, i0, threshold, &time)
                .unwrap_or_else(|| crate::spectral_core::scan_kernel(&kernel, t_min, t_max, steps, i0)),
        }
    } else {
        crate::spectral_core::scan_kernel(&kernel, t_min, t_max, steps, 0)
    };
    Ok(PGSTWitness {
        u,
        v,
        t0: WitnessTime { coeff_of_pi: None, float: t },
        fidelity,
        epsilon: eps,
        success: fidelity > threshold,
        construction: Construction::GenericScan,
        alpha: None,
        radicands: Vec::new(),
        c_values: Vec::new(),
        residuals: Vec::new(),
    })
}

/// First local maximum after `i0` whose refined fidelity clears `threshold`.
fn first_revival(
    kernel: &AmplitudeKernel,
    samples: &[f64],
    i0: usize,
    threshold: f64,
    time: &impl Fn(usize) -> f64,
) -> Option<(f64, f64)> {
    let last = samples.len() - 1;
    (i0 + 1..=last).find_map(|i| {
        let left = samples[i - 1];
        let right = if i < last { samples[i + 1] } else { f64::NEG_INFINITY };
        if samples[i] < left || samples[i] < right {
            return None;
        }
        let (tr, fr) = crate::spectral_core::golden_section_max(
            |t| kernel.fidelity(t),
            time(i - 1),
            time((i + 1).min(last)),
            80,
        );
        let best = if fr > samples[i] { (tr, fr) } else { (time(i), samples[i]) };
        (best.1 > threshold).then_some(best)
    })
}
