use std::fmt::Write as _;

use num_complex::Complex64;
use rayon::prelude::*;

use super::SpectralDecomposition;
use crate::error::{Error, Result};

/// `(λ_j, e_uᵀ f_λj e_v)` for the entries with a nonzero coefficient, so that
/// repeated time evaluations skip the projectors.
#[derive(Clone, Debug)]
pub struct AmplitudeKernel {
    terms: Vec<(f64, f64)>,
}

impl AmplitudeKernel {
    pub fn new(d: &SpectralDecomposition, u: usize, v: usize) -> Result<Self> {
        d.check_vertex(u)?;
        d.check_vertex(v)?;
        let terms = d
            .entries
            .iter()
            .map(|e| (e.eigenvalue, e.projector[(u, v)]))
            .filter(|&(_, c)| c != 0.0)
            .collect();
        Ok(Self { terms })
    }

    pub fn amplitude(&self, t: f64) -> Complex64 {
        self.terms
            .iter()
            .map(|&(lambda, c)| Complex64::from_polar(c, -t * lambda))
            .sum()
    }

    pub fn fidelity(&self, t: f64) -> f64 {
        self.amplitude(t).norm_sqr()
    }
}

/// `Σ_j e^{−itλ_j} (f_λj)_{uv}`.
pub fn transition_amplitude(d: &SpectralDecomposition, u: usize, v: usize, t: f64) -> Result<Complex64> {
    if !t.is_finite() {
        return Err(Error::InvalidArgument(format!("time must be finite, got {t}")));
    }
    Ok(AmplitudeKernel::new(d, u, v)?.amplitude(t))
}

/// Full `exp(−itA)`, row-major.
pub fn transition_matrix(d: &SpectralDecomposition, t: f64) -> Vec<Complex64> {
    let n = d.n();
    let mut out = vec![Complex64::new(0.0, 0.0); n * n];
    for e in &d.entries {
        let phase = Complex64::from_polar(1.0, -t * e.eigenvalue);
        for i in 0..n {
            for j in 0..n {
                out[i * n + j] += phase * e.projector[(i, j)];
            }
        }
    }
    out
}

/// Fidelity samples `|amplitude|²` on a uniform grid.
#[derive(Clone, Debug, PartialEq)]
pub struct FidelitySeries {
    pub times: Vec<f64>,
    pub fidelities: Vec<f64>,
}

impl FidelitySeries {
    /// `t,fidelity` with 17 significant digits per value.
    pub fn to_csv(&self) -> String {
        let mut out = String::from("t,fidelity\n");
        for (t, f) in self.times.iter().zip(&self.fidelities) {
            let _ = writeln!(out, "{t:.16e},{f:.16e}");
        }
        out
    }
}

fn check_grid(t_min: f64, t_max: f64, steps: usize) -> Result<()> {
    if !(t_max > t_min) || !t_min.is_finite() || !t_max.is_finite() {
        return Err(Error::InvalidArgument(format!("need t_min < t_max, got [{t_min}, {t_max}]")));
    }
    if steps < 2 {
        return Err(Error::InvalidArgument(format!("need at least 2 steps, got {steps}")));
    }
    Ok(())
}

fn grid_time(t_min: f64, t_max: f64, steps: usize, i: usize) -> f64 {
    if i + 1 == steps {
        t_max
    } else {
        t_min + (t_max - t_min) * i as f64 / (steps - 1) as f64
    }
}

pub fn fidelity_series(
    d: &SpectralDecomposition,
    u: usize,
    v: usize,
    t_max: f64,
    steps: usize,
) -> Result<FidelitySeries> {
    check_grid(0.0, t_max, steps)?;
    let kernel = AmplitudeKernel::new(d, u, v)?;
    let times: Vec<f64> = (0..steps).map(|i| grid_time(0.0, t_max, steps, i)).collect();
    let fidelities = times.par_iter().map(|&t| kernel.fidelity(t)).collect();
    Ok(FidelitySeries { times, fidelities })
}

/// Grid argmax over `[0, t_max]` followed by one golden-section pass on the
/// two cells around the best sample.
pub fn max_fidelity_scan(
    d: &SpectralDecomposition,
    u: usize,
    v: usize,
    t_max: f64,
    steps: usize,
) -> Result<(f64, f64)> {
    max_fidelity_scan_window(d, u, v, 0.0, t_max, steps)
}

pub fn max_fidelity_scan_window(
    d: &SpectralDecomposition,
    u: usize,
    v: usize,
    t_min: f64,
    t_max: f64,
    steps: usize,
) -> Result<(f64, f64)> {
    check_grid(t_min, t_max, steps)?;
    let kernel = AmplitudeKernel::new(d, u, v)?;
    Ok(scan_kernel(&kernel, t_min, t_max, steps, 0))
}

/// Best `(t, fidelity)` over grid points `first..steps`, refined.
pub(crate) fn scan_kernel(
    kernel: &AmplitudeKernel,
    t_min: f64,
    t_max: f64,
    steps: usize,
    first: usize,
) -> (f64, f64) {
    let (best_i, best_f) = (first..steps)
        .into_par_iter()
        .map(|i| (i, kernel.fidelity(grid_time(t_min, t_max, steps, i))))
        .reduce(
            || (usize::MAX, f64::NEG_INFINITY),
            |a, b| if b.1 > a.1 || (b.1 == a.1 && b.0 < a.0) { b } else { a },
        );
    let lo = grid_time(t_min, t_max, steps, best_i.saturating_sub(1).max(first));
    let hi = grid_time(t_min, t_max, steps, (best_i + 1).min(steps - 1));
    let (t_ref, f_ref) = golden_section_max(|t| kernel.fidelity(t), lo, hi, 80);
    let t_best = grid_time(t_min, t_max, steps, best_i);
    if f_ref > best_f {
        (t_ref, f_ref)
    } else {
        (t_best, best_f)
    }
}

pub(crate) fn golden_section_max(f: impl Fn(f64) -> f64, mut a: f64, mut b: f64, iters: usize) -> (f64, f64) {
    const INV_PHI: f64 = 0.618_033_988_749_894_8;
    let mut c = b - INV_PHI * (b - a);
    let mut d = a + INV_PHI * (b - a);
    let (mut fc, mut fd) = (f(c), f(d));
    for _ in 0..iters {
        if b - a <= f64::EPSILON * b.abs().max(1.0) {
            break;
        }
        if fc > fd {
            b = d;
            d = c;
            fd = fc;
            c = b - INV_PHI * (b - a);
            fc = f(c);
        } else {
            a = c;
            c = d;
            fc = fd;
            d = a + INV_PHI * (b - a);
            fd = f(d);
        }
    }
    if fc > fd {
        (c, fc)
    } else {
        (d, fd)
    }
}

#[cfg(test)]
mod tests {
    use std::f64::consts::{FRAC_PI_2, FRAC_PI_4, PI};

    use super::*;
    use crate::graphs::{build_family, Family};
    use crate::spectral_core::{eigendecompose, DEFAULT_CLUSTER_TOL};

    fn decomp(f: Family, n: usize) -> SpectralDecomposition {
        eigendecompose(&build_family(f, n).unwrap(), DEFAULT_CLUSTER_TOL).unwrap()
    }

    #[test]
    fn time_zero_is_identity() {
        let d = decomp(Family::Path, 4);
        for u in 0..4 {
            for v in 0..4 {
                let a = transition_amplitude(&d, u, v, 0.0).unwrap();
                let want = if u == v { 1.0 } else { 0.0 };
                assert!((a - Complex64::new(want, 0.0)).norm() < 1e-12);
            }
        }
    }

    #[test]
    fn c4_antipodal_pst() {
        let d = decomp(Family::Cycle, 4);
        let a = transition_amplitude(&d, 0, 2, FRAC_PI_2).unwrap();
        assert!((a.norm() - 1.0).abs() < 1e-12);
    }

    #[test]
    fn k2_quarter_period() {
        // exp(-itA) for K2 is [[cos t, -i sin t], [-i sin t, cos t]]
        let d = decomp(Family::Complete, 2);
        let a = transition_amplitude(&d, 0, 1, FRAC_PI_4).unwrap();
        assert!((a - Complex64::new(0.0, -FRAC_PI_4.sin())).norm() < 1e-12);
        assert!((a.norm() - 2f64.sqrt() / 2.0).abs() < 1e-12);
    }

    #[test]
    fn series_first_sample_and_c4_grid() {
        let d = decomp(Family::Cycle, 4);
        let s = fidelity_series(&d, 1, 1, 1.0, 11).unwrap();
        assert_eq!(s.times.len(), 11);
        assert!((s.fidelities[0] - 1.0).abs() < 1e-12);
        let s = fidelity_series(&d, 0, 2, PI, 3).unwrap();
        assert!((s.times[1] - FRAC_PI_2).abs() < 1e-15);
        assert!((s.fidelities[1] - 1.0).abs() < 1e-12);
    }

    #[test]
    fn k2_scan_max_at_half_pi() {
        let d = decomp(Family::Complete, 2);
        let s = fidelity_series(&d, 0, 1, PI, 1001).unwrap();
        let (i, f) = s
            .fidelities
            .iter()
            .enumerate()
            .fold((0, 0.0), |acc, (i, &f)| if f > acc.1 { (i, f) } else { acc });
        assert!((s.times[i] - FRAC_PI_2).abs() < 1e-9);
        assert!((f - 1.0).abs() < 1e-12);
    }

    #[test]
    fn scan_examples() {
        let d = decomp(Family::Cycle, 4);
        let (t, f) = max_fidelity_scan(&d, 3, 3, 5.0, 100).unwrap();
        assert_eq!((t, f), (0.0, 1.0));
        let (t, f) = max_fidelity_scan(&d, 0, 2, 2.0 * PI, 1000).unwrap();
        assert!((t - FRAC_PI_2).abs() < 1e-4, "t = {t}");
        assert!(f >= 1.0 - 1e-9);
    }

    #[test]
    fn csv_format() {
        let s = FidelitySeries { times: vec![0.0, 0.5], fidelities: vec![1.0, 0.25] };
        let csv = s.to_csv();
        let mut lines = csv.lines();
        assert_eq!(lines.next(), Some("t,fidelity"));
        assert_eq!(lines.next(), Some("0.0000000000000000e0,1.0000000000000000e0"));
        let row: Vec<f64> = lines.next().unwrap().split(',').map(|x| x.parse().unwrap()).collect();
        assert_eq!(row, vec![0.5, 0.25]);
    }

    #[test]
    fn grid_errors() {
        let d = decomp(Family::Cycle, 4);
        assert!(fidelity_series(&d, 0, 1, 0.0, 10).is_err());
        assert!(fidelity_series(&d, 0, 1, 1.0, 1).is_err());
        assert!(transition_amplitude(&d, 0, 1, f64::NAN).is_err());
    }
}
