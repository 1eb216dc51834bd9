//! Periodicity and perfect state transfer: exact certificates from the
//! eigenvalue support, and the no-PST criteria for coronas.

use std::f64::consts::PI;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{Signed, ToPrimitive, Zero};
use serde::{Deserialize, Serialize};

use crate::corona_spectral::CoronaDecomposition;
use crate::error::{Error, Result};
use crate::exact_arith::{classify_periodicity_form, QuadraticNumber};
use crate::graphs::{regularity_degree, Graph};
use crate::spectral_core::{
    annotate_exact, eigendecompose, eigenvalue_support, integral_spectrum, strong_cospectrality,
    transition_amplitude, SpectralDecomposition, SupportSet, Tolerances, DEFAULT_CLUSTER_TOL,
};

/// Fidelity a claimed PST must reach when replayed numerically.
pub const PST_VALIDATION_TOL: f64 = 1e-9;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub enum Verdict {
    #[serde(rename = "PST")]
    Pst,
    #[serde(rename = "NoPST")]
    NoPst,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub enum FailedCondition {
    NotStronglyCospectral,
    SupportNotQuadratic,
    ParityViolation,
}

#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct Phase {
    pub re: f64,
    pub im: f64,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub enum NoPstTheorem {
    T44,
    T45,
    T46,
}

/// A no-PST / no-periodicity conclusion together with the data it rests on.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct NoPSTReport {
    pub theorem: NoPstTheorem,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub r: Option<i64>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub k: Option<u64>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub n2: Option<u64>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub vertex: Option<usize>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub lambda: Option<String>,
    pub conclusion: String,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct PSTCertificate {
    pub verdict: Verdict,
    pub u: usize,
    pub v: usize,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub delta: Option<u64>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub g: Option<u64>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub tau0: Option<f64>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub phase: Option<Phase>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub failed_condition: Option<FailedCondition>,
    #[serde(default)]
    pub theorem_reports: Vec<NoPSTReport>,
}

impl PSTCertificate {
    fn negative(u: usize, v: usize, failed: FailedCondition) -> Self {
        Self {
            verdict: Verdict::NoPst,
            u,
            v,
            delta: None,
            g: None,
            tau0: None,
            phase: None,
            failed_condition: Some(failed),
            theorem_reports: Vec::new(),
        }
    }

    pub fn is_pst(&self) -> bool {
        self.verdict == Verdict::Pst
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string(self).expect("certificate serializes")
    }

    pub fn from_json(s: &str) -> Result<Self> {
        serde_json::from_str(s).map_err(|e| Error::Parse(e.to_string()))
    }
}

/// Numeric decomposition of `g` with exact values attached where they exist.
pub fn exact_decomposition(g: &Graph) -> Result<SpectralDecomposition> {
    exact_decomposition_with(g, &Tolerances::default())
}

pub fn exact_decomposition_with(g: &Graph, tol: &Tolerances) -> Result<SpectralDecomposition> {
    let mut d = tol.decompose(g)?;
    annotate_exact(g, &mut d);
    Ok(d)
}

/// Exact values of `supp(v)`; fails if one of them is neither an integer nor
/// a quadratic irrational.
pub fn exact_support(d: &SpectralDecomposition, v: usize) -> Result<Vec<QuadraticNumber>> {
    let supp = eigenvalue_support(d, v)?;
    supp.indices
        .iter()
        .map(|&j| {
            d.entries[j].exact.clone().ok_or_else(|| {
                Error::Undecidable(format!(
                    "eigenvalue {} in the support of vertex {v} is not quadratic",
                    d.entries[j].eigenvalue
                ))
            })
        })
        .collect()
}

/// Periodicity from exact support values: all integers, or a shared form
/// `(a + b√Δ)/2`.
pub fn is_periodic_vertex(support: &[QuadraticNumber]) -> bool {
    classify_periodicity_form(support).is_periodic()
}

pub fn vertex_is_periodic(g: &Graph, v: usize) -> Result<bool> {
    let d = exact_decomposition(g)?;
    Ok(is_periodic_vertex(&exact_support(&d, v)?))
}

/// Decides PST between distinct vertices `u` and `v` exactly and replays a
/// positive verdict numerically.
pub fn certify_pst(g: &Graph, u: usize, v: usize) -> Result<PSTCertificate> {
    certify_pst_with(g, u, v, &Tolerances::default())
}

pub fn certify_pst_with(g: &Graph, u: usize, v: usize, tol: &Tolerances) -> Result<PSTCertificate> {
    g.check_vertex(u)?;
    g.check_vertex(v)?;
    if u == v {
        return Err(Error::InvalidArgument("PST needs two distinct vertices; u = v is periodicity".into()));
    }
    let d = exact_decomposition_with(g, tol)?;
    let mut cert = certify_with(&d, u, v)?;
    if let Some((g1, g2)) = g.corona_factors() {
        cert.theorem_reports = corona_no_pst_reports(&g1, &g2)?;
    }
    Ok(cert)
}

fn certify_with(d: &SpectralDecomposition, u: usize, v: usize) -> Result<PSTCertificate> {
    let cosp = strong_cospectrality(d, u, v)?;
    if !cosp.strongly_cospectral {
        return Ok(PSTCertificate::negative(u, v, FailedCondition::NotStronglyCospectral));
    }
    let supp = eigenvalue_support(d, u)?;
    let Some(values) = supp.indices.iter().map(|&j| d.entries[j].exact.clone()).collect::<Option<Vec<_>>>() else {
        return Ok(PSTCertificate::negative(u, v, FailedCondition::SupportNotQuadratic));
    };
    let form = classify_periodicity_form(&values);
    if !form.is_periodic() {
        return Ok(PSTCertificate::negative(u, v, FailedCondition::SupportNotQuadratic));
    }
    // (λ0 − λ)/√Δ = (b0 − b)/2 with λ0 the largest support eigenvalue.
    let top = (0..values.len()).max_by(|&a, &b| values[a].cmp(&values[b])).expect("nonempty support");
    let b0 = &form.b_values[top];
    let mut diffs = Vec::with_capacity(values.len());
    for b in &form.b_values {
        let twice = b0 - b;
        if twice.is_odd() {
            return Ok(PSTCertificate::negative(u, v, FailedCondition::SupportNotQuadratic));
        }
        diffs.push(twice / 2);
    }
    let g = diffs.iter().fold(BigInt::zero(), |acc, x| acc.gcd(x));
    if g.is_zero() {
        // a single support eigenvalue: u is fixed by the walk up to phase
        return Ok(PSTCertificate::negative(u, v, FailedCondition::ParityViolation));
    }
    for (i, &j) in supp.indices.iter().enumerate() {
        let odd = (&diffs[i] / &g).is_odd();
        let ok = if odd { cosp.s_minus.contains(&j) } else { cosp.s_plus.contains(&j) };
        if !ok {
            return Ok(PSTCertificate::negative(u, v, FailedCondition::ParityViolation));
        }
    }
    let g = g.to_u64().ok_or_else(|| Error::InvalidArgument("gcd exceeds 64 bits".into()))?;
    let tau0 = PI / (g as f64 * (form.delta as f64).sqrt());
    let lambda0 = values[top].to_f64();
    let phase = Phase { re: (tau0 * lambda0).cos(), im: -(tau0 * lambda0).sin() };
    let fidelity = transition_amplitude(d, u, v, tau0)?.norm_sqr();
    if fidelity < 1.0 - PST_VALIDATION_TOL {
        return Err(Error::Consistency(format!(
            "certified PST at tau0 = {tau0} but numeric fidelity is {fidelity}"
        )));
    }
    Ok(PSTCertificate {
        verdict: Verdict::Pst,
        u,
        v,
        delta: Some(form.delta),
        g: Some(g),
        tau0: Some(tau0),
        phase: Some(phase),
        failed_condition: None,
        theorem_reports: Vec::new(),
    })
}

fn is_perfect_square(m: &BigInt) -> bool {
    !m.is_negative() && m.sqrt().pow(2) == *m
}

/// Fires iff `√((r−k)² + 4n2r²)` is irrational, for `G1` `r`-regular,
/// connected and integral with distinct eigenvalues `sp1`.
pub fn no_pst_theorem44(sp1: &[BigInt], r: i64, k: u64, n2: u64) -> Result<Option<NoPSTReport>> {
    let rb = BigInt::from(r);
    if sp1.iter().max() != Some(&rb) {
        return Err(Error::HypothesisNotMet(format!("{r} is not the largest eigenvalue of G1")));
    }
    let radicand = (&rb - BigInt::from(k)).pow(2) + BigInt::from(4 * n2) * &rb * &rb;
    if is_perfect_square(&radicand) {
        return Ok(None);
    }
    Ok(Some(NoPSTReport {
        theorem: NoPstTheorem::T44,
        r: Some(r),
        k: Some(k),
        n2: Some(n2),
        vertex: None,
        lambda: None,
        conclusion: format!(
            "sqrt({radicand}) is irrational: no vertex of the corona is periodic and the corona has no PST"
        ),
    }))
}

/// Graph-level form of [`no_pst_theorem44`] that checks the hypotheses.
pub fn theorem44_for(g1: &Graph, g2: &Graph) -> Result<Option<NoPSTReport>> {
    let r = regularity_degree(g1).ok_or_else(|| Error::HypothesisNotMet("G1 is not regular".into()))?;
    if !g1.is_connected() {
        return Err(Error::HypothesisNotMet("G1 is not connected".into()));
    }
    let k = regularity_degree(g2).ok_or_else(|| Error::HypothesisNotMet("G2 is not regular".into()))?;
    let d1 = eigendecompose(g1, DEFAULT_CLUSTER_TOL)?;
    let sp1 = integral_spectrum(g1, &d1).ok_or_else(|| Error::HypothesisNotMet("G1 is not integral".into()))?;
    no_pst_theorem44(&sp1, r as i64, k as u64, g2.n() as u64)
}

/// Fires iff some support value of `vertex` is a nonzero integer multiple of
/// `√Δ'` with square-free `Δ' > 1`.
pub fn no_periodicity_theorem45(support: &[QuadraticNumber], vertex: usize) -> Option<NoPSTReport> {
    let hit = support
        .iter()
        .find(|x| x.p().is_zero() && x.d() > 1 && x.q().is_integer() && !x.q().is_zero())?;
    Some(NoPSTReport {
        theorem: NoPstTheorem::T45,
        r: None,
        k: None,
        n2: None,
        vertex: Some(vertex),
        lambda: Some(hit.to_string()),
        conclusion: format!(
            "{hit} lies in Z*sqrt({}): no corona vertex ({vertex},w) is periodic, so none of them is involved in PST",
            hit.d()
        ),
    })
}

fn is_path3(g: &Graph) -> bool {
    g.n() == 3 && g.edge_count() == 2 && g.is_connected()
}

/// Every no-PST criterion that applies to `G1 ★ G2`.
pub fn corona_no_pst_reports(g1: &Graph, g2: &Graph) -> Result<Vec<NoPSTReport>> {
    let mut out = Vec::new();
    let g2_regular_connected = regularity_degree(g2).is_some() && g2.is_connected();
    if let Ok(Some(r)) = theorem44_for(g1, g2) {
        out.push(r);
    }
    if g1.is_connected() && g2_regular_connected {
        let d1 = exact_decomposition(g1)?;
        for v in 0..g1.n() {
            let supp = eigenvalue_support(&d1, v)?;
            let values: Vec<QuadraticNumber> =
                supp.indices.iter().filter_map(|&j| d1.entries[j].exact.clone()).collect();
            out.extend(no_periodicity_theorem45(&values, v));
        }
        if is_path3(g1) {
            out.push(NoPSTReport {
                theorem: NoPstTheorem::T46,
                r: None,
                k: regularity_degree(g2).map(|k| k as u64),
                n2: Some(g2.n() as u64),
                vertex: None,
                lambda: None,
                conclusion: "P3 with a connected regular graph: the corona has no PST".into(),
            });
        }
    }
    Ok(out)
}

/// Which support relation between `(v,0)` and `(v,w)` was verified.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub enum SupportRelation {
    /// `0 ∉ supp(v)` in `G1`: `supp(v,0) ⊆ supp(v,w)`.
    FullInclusion,
    /// `0 ∈ supp(v)` in `G1`: `supp(v,0) \ {0} ⊆ supp(v,w)`, and the zero
    /// branch reaches `(v,0)` but not `(v,w)`.
    InclusionExceptZero,
}

pub fn corona_support_relation(
    d1: &SpectralDecomposition,
    corona: &CoronaDecomposition,
    v: usize,
    w: usize,
) -> Result<SupportRelation> {
    d1.check_vertex(v)?;
    if w >= corona.n2 {
        return Err(Error::VertexOutOfRange { vertex: w, n: corona.n2 });
    }
    let merged = &corona.merged;
    let apex = v;
    let copy = corona.n1 + v * corona.n2 + w;
    let s_apex = eigenvalue_support(merged, apex)?;
    let s_copy = eigenvalue_support(merged, copy)?;
    let tol = d1.support_tol;
    let zero_in_g1 = d1
        .entries
        .iter()
        .position(|e| e.exact.as_ref().map_or(e.eigenvalue.abs() <= DEFAULT_CLUSTER_TOL, |x| x.is_zero()))
        .is_some_and(|j| d1.column_norm(j, v) > tol);
    let describe = |s: &SupportSet| format!("{:?}", s.eigenvalues);
    if !zero_in_g1 {
        if !s_apex.is_subset_of(&s_copy) {
            return Err(Error::SupportInclusion(format!(
                "supp({v},0) = {} not inside supp({v},{w}) = {}",
                describe(&s_apex),
                describe(&s_copy)
            )));
        }
        return Ok(SupportRelation::FullInclusion);
    }
    let zero_entry = merged.find(0.0, DEFAULT_CLUSTER_TOL * merged.spectral_radius().max(1.0));
    let missing: Vec<usize> = s_apex
        .indices
        .iter()
        .copied()
        .filter(|&j| Some(j) != zero_entry && !s_copy.contains(j))
        .collect();
    if !missing.is_empty() {
        return Err(Error::SupportInclusion(format!(
            "supp({v},0) minus 0 = {} not inside supp({v},{w}) = {}",
            describe(&s_apex),
            describe(&s_copy)
        )));
    }
    let f0 = corona
        .special_zero()
        .ok_or_else(|| Error::Consistency("0 in Sp(G1) but no zero branch in the corona".into()))?;
    let col = |i: usize| (0..f0.n()).map(|r| f0[(r, i)].powi(2)).sum::<f64>().sqrt();
    if !(col(apex) > tol && col(copy) <= tol) {
        return Err(Error::SupportInclusion(format!(
            "zero branch: |F0 e({v},0)| = {}, |F0 e({v},{w})| = {}",
            col(apex),
            col(copy)
        )));
    }
    Ok(SupportRelation::InclusionExceptZero)
}

#[cfg(test)]
mod tests {
    use std::f64::consts::{FRAC_PI_2, SQRT_2};

    use super::*;
    use crate::corona_spectral::{corona_decomposition, factor_decompositions};
    use crate::graphs::{build_family, neighborhood_corona, Family};

    fn fam(f: Family, n: usize) -> Graph {
        build_family(f, n).unwrap()
    }

    fn q(s: &str) -> QuadraticNumber {
        s.parse().unwrap()
    }

    #[test]
    fn periodicity_examples() {
        assert!(vertex_is_periodic(&fam(Family::Cycle, 4), 0).unwrap());
        assert!(vertex_is_periodic(&fam(Family::Path, 3), 0).unwrap());
        let c4k3 = neighborhood_corona(&fam(Family::Cycle, 4), &fam(Family::Complete, 3));
        for v in 0..4 {
            assert!(!vertex_is_periodic(&c4k3, v).unwrap());
        }
        // P6 has cubic eigenvalues
        assert!(matches!(vertex_is_periodic(&fam(Family::Path, 6), 0), Err(Error::Undecidable(_))));
    }

    #[test]
    fn c4_antipodal() {
        let c = certify_pst(&fam(Family::Cycle, 4), 0, 2).unwrap();
        assert!(c.is_pst());
        assert_eq!((c.delta, c.g), (Some(1), Some(2)));
        assert!((c.tau0.unwrap() - FRAC_PI_2).abs() < 1e-15);
        let p = c.phase.unwrap();
        assert!((p.re + 1.0).abs() < 1e-12 && p.im.abs() < 1e-12);
    }

    #[test]
    fn k2_phase() {
        let c = certify_pst(&fam(Family::Complete, 2), 0, 1).unwrap();
        assert_eq!((c.delta, c.g), (Some(1), Some(2)));
        let p = c.phase.unwrap();
        assert!(p.re.abs() < 1e-12 && (p.im + 1.0).abs() < 1e-12);
        let d = exact_decomposition(&fam(Family::Complete, 2)).unwrap();
        let a = transition_amplitude(&d, 0, 1, c.tau0.unwrap()).unwrap();
        assert!((a.re - p.re).abs() < 1e-12 && (a.im - p.im).abs() < 1e-12);
    }

    #[test]
    fn p3_endpoints_have_pst() {
        let c = certify_pst(&fam(Family::Path, 3), 0, 2).unwrap();
        assert!(c.is_pst());
        assert_eq!((c.delta, c.g), (Some(2), Some(1)));
        assert!((c.tau0.unwrap() - PI / SQRT_2).abs() < 1e-15);
        let c = certify_pst(&fam(Family::Path, 3), 0, 1).unwrap();
        assert_eq!(c.failed_condition, Some(FailedCondition::NotStronglyCospectral));
    }

    #[test]
    fn negative_verdicts() {
        let c = certify_pst(&fam(Family::Cycle, 4), 0, 1).unwrap();
        assert_eq!(c.verdict, Verdict::NoPst);
        let c = certify_pst(&fam(Family::Complete, 3), 0, 1).unwrap();
        assert_eq!(c.failed_condition, Some(FailedCondition::NotStronglyCospectral));
        // C6 antipodal: strongly cospectral, but −1 ∈ S+ at odd distance from 2
        let c = certify_pst(&fam(Family::Cycle, 6), 0, 3).unwrap();
        assert_eq!(c.failed_condition, Some(FailedCondition::ParityViolation));
        // P4 end vertices: strongly cospectral, eigenvalues (±1±√5)/2 need two radicands
        let c = certify_pst(&fam(Family::Path, 4), 0, 3).unwrap();
        assert_eq!(c.failed_condition, Some(FailedCondition::SupportNotQuadratic));
        assert!(certify_pst(&fam(Family::Cycle, 4), 1, 1).is_err());
        assert!(certify_pst(&fam(Family::Cycle, 4), 1, 7).is_err());
    }

    #[test]
    fn symmetric_and_revives() {
        for (g, u, v) in [(fam(Family::Cycle, 4), 1, 3), (fam(Family::Path, 3), 0, 2), (fam(Family::Path, 2), 0, 1)] {
            let a = certify_pst(&g, u, v).unwrap();
            let b = certify_pst(&g, v, u).unwrap();
            assert_eq!((a.verdict, a.delta, a.g, a.tau0), (b.verdict, b.delta, b.g, b.tau0));
            let d = exact_decomposition(&g).unwrap();
            let back = transition_amplitude(&d, u, u, 2.0 * a.tau0.unwrap()).unwrap();
            assert!(back.norm() >= 1.0 - 1e-9);
        }
    }

    #[test]
    fn certificate_json_roundtrip() {
        let g = neighborhood_corona(&fam(Family::Cycle, 4), &fam(Family::Complete, 3));
        for c in [certify_pst(&fam(Family::Cycle, 4), 0, 2).unwrap(), certify_pst(&g, 0, 2).unwrap()] {
            let s = c.to_json();
            let back = PSTCertificate::from_json(&s).unwrap();
            assert_eq!(back, c);
            assert_eq!(back.to_json(), s);
        }
        let c = certify_pst(&g, 0, 2).unwrap();
        assert!(c.theorem_reports.iter().any(|r| r.theorem == NoPstTheorem::T44));
        assert!(c.to_json().contains("\"verdict\":\"NoPST\""));
    }

    #[test]
    fn theorem44_examples() {
        let (c4, k3, e2, k2) = (fam(Family::Cycle, 4), fam(Family::Complete, 3), fam(Family::Empty, 2), fam(Family::Complete, 2));
        assert!(theorem44_for(&c4, &k3).unwrap().is_some());
        assert!(theorem44_for(&c4, &e2).unwrap().is_none());
        assert!(theorem44_for(&k2, &e2).unwrap().is_none());
        assert!(matches!(theorem44_for(&fam(Family::Path, 3), &k3), Err(Error::HypothesisNotMet(_))));
    }

    #[test]
    fn theorem44_implies_no_periodic_apex() {
        for (g1, g2) in [(fam(Family::Cycle, 4), fam(Family::Complete, 3)), (fam(Family::Complete, 3), fam(Family::Cycle, 4))] {
            if theorem44_for(&g1, &g2).unwrap().is_some() {
                let g = neighborhood_corona(&g1, &g2);
                for v in 0..g1.n() {
                    assert!(!vertex_is_periodic(&g, v).unwrap());
                }
            }
        }
    }

    #[test]
    fn theorem45_examples() {
        let p3 = exact_decomposition(&fam(Family::Path, 3)).unwrap();
        assert!(no_periodicity_theorem45(&exact_support(&p3, 0).unwrap(), 0).is_some());
        assert!(no_periodicity_theorem45(&exact_support(&p3, 1).unwrap(), 1).is_some());
        let c4 = exact_decomposition(&fam(Family::Cycle, 4)).unwrap();
        assert!(no_periodicity_theorem45(&exact_support(&c4, 0).unwrap(), 0).is_none());
        let r = no_periodicity_theorem45(&[q("1*sqrt(5)"), q("-1*sqrt(5)")], 3).unwrap();
        assert_eq!(r.lambda.as_deref(), Some("1*sqrt(5)"));
        assert!(no_periodicity_theorem45(&[q("1/2*sqrt(5)")], 0).is_none());
        let reports = corona_no_pst_reports(&fam(Family::Path, 3), &fam(Family::Cycle, 3)).unwrap();
        assert!(reports.iter().any(|r| r.theorem == NoPstTheorem::T46));
    }

    #[test]
    fn support_sizes_of_regular_graphs() {
        for (g, complete) in [
            (fam(Family::Complete, 5), true),
            (fam(Family::Complete, 2), true),
            (fam(Family::Cycle, 4), false),
            (fam(Family::Cycle, 5), false),
            (fam(Family::Cycle, 6), false),
            (neighborhood_corona(&fam(Family::Cycle, 4), &fam(Family::Empty, 2)), false),
        ] {
            if regularity_degree(&g).is_none() {
                continue;
            }
            let d = exact_decomposition(&g).unwrap();
            for v in 0..g.n() {
                let s = eigenvalue_support(&d, v).unwrap().len();
                if complete {
                    assert_eq!(s, 2);
                } else {
                    assert!(s >= 3);
                }
            }
        }
    }

    #[test]
    fn support_relations() {
        let cases = [
            (fam(Family::Cycle, 4), fam(Family::Complete, 5), SupportRelation::InclusionExceptZero),
            (fam(Family::Complete, 2), fam(Family::Empty, 1), SupportRelation::FullInclusion),
        ];
        for (g1, g2, want) in cases {
            let (d1, _) = factor_decompositions(&g1, &g2, DEFAULT_CLUSTER_TOL).unwrap();
            let c = corona_decomposition(&g1, &g2, DEFAULT_CLUSTER_TOL).unwrap();
            for w in 0..g2.n() {
                assert_eq!(corona_support_relation(&d1, &c, 0, w).unwrap(), want);
            }
        }
        let (p3, c3) = (fam(Family::Path, 3), fam(Family::Cycle, 3));
        let (d1, _) = factor_decompositions(&p3, &c3, DEFAULT_CLUSTER_TOL).unwrap();
        let c = corona_decomposition(&p3, &c3, DEFAULT_CLUSTER_TOL).unwrap();
        assert_eq!(corona_support_relation(&d1, &c, 1, 2).unwrap(), SupportRelation::FullInclusion);
        assert_eq!(corona_support_relation(&d1, &c, 0, 2).unwrap(), SupportRelation::InclusionExceptZero);
    }
}
