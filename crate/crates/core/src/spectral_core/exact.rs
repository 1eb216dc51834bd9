//! Exact identification of eigenvalues that are integers or quadratic
//! irrationals.
//!
//! A numeric eigenvalue `μ` is certified as the integer `r` when
//! `det(A − rI) = 0`, and as a root of `x² − sx + P` when its conjugate `ν`
//! also appears in the spectrum, `s = μ + ν` and `P = μν` round to integers,
//! and `det(A² − sA + PI) = 0`. Eigenvalues of an integer symmetric matrix are
//! algebraic integers whose conjugates are eigenvalues too, so an eigenvalue
//! that passes neither test is not an integer or quadratic integer.

use std::collections::HashMap;

use num_bigint::BigInt;
use num_integer::Roots;
use num_traits::{One, Zero};

use super::SpectralDecomposition;
use crate::exact_arith::{bareiss_determinant, QuadraticNumber, RatMatrix, Rational};
use crate::graphs::Graph;

const NEAR_INTEGER: f64 = 1e-6;

struct ExactContext {
    n: usize,
    a: Vec<i64>,
    a2: Vec<i64>,
    linear: HashMap<i64, bool>,
    quadratic: HashMap<(i64, i64), bool>,
}

impl ExactContext {
    fn new(g: &Graph) -> Self {
        let n = g.n();
        let a = g.adjacency_entries();
        let mut a2 = vec![0i64; n * n];
        for i in 0..n {
            for k in 0..n {
                if a[i * n + k] != 0 {
                    for j in 0..n {
                        a2[i * n + j] += a[k * n + j];
                    }
                }
            }
        }
        Self { n, a, a2, linear: HashMap::new(), quadratic: HashMap::new() }
    }

    fn singular(&self, entries: impl Fn(usize, usize) -> i64) -> bool {
        let n = self.n;
        let m: Vec<BigInt> =
            (0..n * n).map(|idx| BigInt::from(entries(idx / n, idx % n))).collect();
        bareiss_determinant(n, &m).is_zero()
    }

    fn is_integer_root(&mut self, r: i64) -> bool {
        if let Some(&hit) = self.linear.get(&r) {
            return hit;
        }
        let n = self.n;
        let hit = self.singular(|i, j| self.a[i * n + j] - if i == j { r } else { 0 });
        self.linear.insert(r, hit);
        hit
    }

    fn is_quadratic_root(&mut self, s: i64, p: i64) -> bool {
        if let Some(&hit) = self.quadratic.get(&(s, p)) {
            return hit;
        }
        let n = self.n;
        let hit = self.singular(|i, j| {
            self.a2[i * n + j] - s * self.a[i * n + j] + if i == j { p } else { 0 }
        });
        self.quadratic.insert((s, p), hit);
        hit
    }

    fn recognize(&mut self, values: &[f64], j: usize) -> Option<QuadraticNumber> {
        let mu = values[j];
        let r = mu.round();
        if (mu - r).abs() < NEAR_INTEGER && self.is_integer_root(r as i64) {
            return Some(QuadraticNumber::integer(r as i64));
        }
        for (k, &nu) in values.iter().enumerate() {
            if k == j {
                continue;
            }
            let (s, p) = (mu + nu, mu * nu);
            let (sr, pr) = (s.round(), p.round());
            if (s - sr).abs() >= NEAR_INTEGER || (p - pr).abs() >= NEAR_INTEGER * p.abs().max(1.0) {
                continue;
            }
            let (s, p) = (sr as i64, pr as i64);
            let disc = s * s - 4 * p;
            if disc <= 0 || (disc as u64).sqrt().pow(2) == disc as u64 {
                continue;
            }
            if !self.is_quadratic_root(s, p) {
                continue;
            }
            let sign = if mu > nu { 1 } else { -1 };
            let value =
                QuadraticNumber::half_form(&BigInt::from(s), &BigInt::from(sign), disc as u64).ok()?;
            if (value.to_f64() - mu).abs() < NEAR_INTEGER {
                return Some(value);
            }
        }
        None
    }
}

/// Exact value of entry `j`, if it is an integer or a quadratic irrational.
pub fn recognize_eigenvalue(g: &Graph, d: &SpectralDecomposition, j: usize) -> Option<QuadraticNumber> {
    ExactContext::new(g).recognize(&d.eigenvalues(), j)
}

/// Fills `exact` on every entry that can be certified and replaces its float
/// eigenvalue by the float of the exact value, which keeps phases `e^{−itλ}`
/// accurate at large `t`.
pub fn annotate_exact(g: &Graph, d: &mut SpectralDecomposition) {
    let mut ctx = ExactContext::new(g);
    let values = d.eigenvalues();
    for (j, e) in d.entries.iter_mut().enumerate() {
        if e.exact.is_none() {
            e.exact = ctx.recognize(&values, j);
        }
        if let Some(x) = &e.exact {
            e.eigenvalue = x.to_f64();
        }
    }
}

/// Distinct eigenvalues as integers, if every one of them is an integer.
pub fn integral_spectrum(g: &Graph, d: &SpectralDecomposition) -> Option<Vec<BigInt>> {
    let mut ctx = ExactContext::new(g);
    let values = d.eigenvalues();
    (0..values.len())
        .map(|j| match &d.entries[j].exact {
            Some(x) => x.as_integer(),
            None => {
                let r = values[j].round();
                ((values[j] - r).abs() < NEAR_INTEGER && ctx.is_integer_root(r as i64))
                    .then(|| BigInt::from(r as i64))
            }
        })
        .collect()
}

/// Rational eigenprojectors of an integral graph by interpolation:
/// `f_λ = Π_{μ ≠ λ} (A − μI) / (λ − μ)` over the distinct eigenvalues.
pub fn exact_projectors(g: &Graph, distinct: &[BigInt]) -> Vec<RatMatrix> {
    let n = g.n();
    let a: Vec<BigInt> = g.adjacency_entries().into_iter().map(BigInt::from).collect();
    distinct
        .iter()
        .map(|lambda| {
            let mut prod: Vec<BigInt> = (0..n * n)
                .map(|idx| if idx / n == idx % n { BigInt::one() } else { BigInt::zero() })
                .collect();
            let mut denom = BigInt::one();
            for mu in distinct.iter().filter(|mu| *mu != lambda) {
                let factor: Vec<BigInt> = (0..n * n)
                    .map(|idx| if idx / n == idx % n { &a[idx] - mu } else { a[idx].clone() })
                    .collect();
                prod = int_matmul(n, &prod, &factor);
                denom *= lambda - mu;
            }
            RatMatrix::from_fn(n, |i, j| Rational::new(prod[i * n + j].clone(), denom.clone()))
        })
        .collect()
}

fn int_matmul(n: usize, x: &[BigInt], y: &[BigInt]) -> Vec<BigInt> {
    let mut out = vec![BigInt::zero(); n * n];
    for i in 0..n {
        for k in 0..n {
            let a = &x[i * n + k];
            if a.is_zero() {
                continue;
            }
            for j in 0..n {
                let b = &y[k * n + j];
                if !b.is_zero() {
                    out[i * n + j] += a * b;
                }
            }
        }
    }
    out
}
