use std::ops::{Index, IndexMut};

use num_bigint::BigInt;
use num_traits::{One, Zero};

use super::{QuadraticNumber, Rational};
use crate::error::{Error, Result};

/// Dense square matrix over the rationals.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RatMatrix {
    n: usize,
    data: Vec<Rational>,
}

impl RatMatrix {
    pub fn zeros(n: usize) -> Self {
        Self { n, data: vec![Rational::zero(); n * n] }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zeros(n);
        for i in 0..n {
            m[(i, i)] = Rational::one();
        }
        m
    }

    pub fn from_fn(n: usize, mut f: impl FnMut(usize, usize) -> Rational) -> Self {
        let mut data = Vec::with_capacity(n * n);
        for i in 0..n {
            for j in 0..n {
                data.push(f(i, j));
            }
        }
        Self { n, data }
    }

    pub fn from_integers(n: usize, entries: &[i64]) -> Self {
        Self::from_fn(n, |i, j| Rational::from_integer(BigInt::from(entries[i * n + j])))
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(Zero::is_zero)
    }

    pub fn matmul(&self, other: &RatMatrix) -> RatMatrix {
        let n = self.n;
        let mut out = RatMatrix::zeros(n);
        for i in 0..n {
            for k in 0..n {
                let a = &self.data[i * n + k];
                if a.is_zero() {
                    continue;
                }
                for j in 0..n {
                    let b = &other.data[k * n + j];
                    if !b.is_zero() {
                        out.data[i * n + j] += a * b;
                    }
                }
            }
        }
        out
    }

    pub fn add(&self, other: &RatMatrix) -> RatMatrix {
        RatMatrix {
            n: self.n,
            data: self.data.iter().zip(&other.data).map(|(a, b)| a + b).collect(),
        }
    }

    pub fn sub(&self, other: &RatMatrix) -> RatMatrix {
        RatMatrix {
            n: self.n,
            data: self.data.iter().zip(&other.data).map(|(a, b)| a - b).collect(),
        }
    }

    pub fn scale(&self, r: &Rational) -> RatMatrix {
        RatMatrix { n: self.n, data: self.data.iter().map(|a| a * r).collect() }
    }

    pub fn to_f64(&self) -> crate::linalg::Matrix {
        crate::linalg::Matrix::from_fn(self.n, |i, j| super::rational_to_f64(&self[(i, j)]))
    }
}

impl Index<(usize, usize)> for RatMatrix {
    type Output = Rational;

    fn index(&self, (i, j): (usize, usize)) -> &Rational {
        &self.data[i * self.n + j]
    }
}

impl IndexMut<(usize, usize)> for RatMatrix {
    fn index_mut(&mut self, (i, j): (usize, usize)) -> &mut Rational {
        &mut self.data[i * self.n + j]
    }
}

/// `R + S·√d` with rational matrices `R`, `S` and square-free `d`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct QuadMatrix {
    pub d: u64,
    pub rational: RatMatrix,
    pub surd: RatMatrix,
}

impl QuadMatrix {
    pub fn zeros(n: usize) -> Self {
        Self { d: 1, rational: RatMatrix::zeros(n), surd: RatMatrix::zeros(n) }
    }

    /// `c · M` for a quadratic scalar `c` and rational `M`.
    pub fn scaled(c: &QuadraticNumber, m: &RatMatrix) -> Self {
        Self { d: c.d(), rational: m.scale(c.p()), surd: m.scale(c.q()) }
    }

    pub fn n(&self) -> usize {
        self.rational.n()
    }

    fn radicand_with(&self, other: &QuadMatrix) -> Result<u64> {
        let d1 = if self.surd.is_zero() { 1 } else { self.d };
        let d2 = if other.surd.is_zero() { 1 } else { other.d };
        match (d1, d2) {
            (1, d) | (d, 1) => Ok(d.max(1)),
            (a, b) if a == b => Ok(a),
            (a, b) => Err(Error::IncompatibleRadicands(a, b)),
        }
    }

    pub fn add(&self, other: &QuadMatrix) -> Result<QuadMatrix> {
        let d = self.radicand_with(other)?;
        Ok(QuadMatrix {
            d,
            rational: self.rational.add(&other.rational),
            surd: self.surd.add(&other.surd),
        })
    }

    pub fn matmul(&self, other: &QuadMatrix) -> Result<QuadMatrix> {
        let d = self.radicand_with(other)?;
        let dr = Rational::from_integer(BigInt::from(d));
        let rational = self
            .rational
            .matmul(&other.rational)
            .add(&self.surd.matmul(&other.surd).scale(&dr));
        let surd = self.rational.matmul(&other.surd).add(&self.surd.matmul(&other.rational));
        Ok(QuadMatrix { d, rational, surd })
    }

    pub fn is_zero(&self) -> bool {
        self.rational.is_zero() && self.surd.is_zero()
    }

    pub fn is_rational(&self) -> bool {
        self.surd.is_zero()
    }

    pub fn to_f64(&self) -> crate::linalg::Matrix {
        let mut m = self.rational.to_f64();
        m.add_scaled(&self.surd.to_f64(), (self.d as f64).sqrt());
        m
    }
}

/// `X·Y = 0` decided exactly. For distinct radicands `d1 ≠ d2` the product
/// splits over the independent basis `1, √d1, √d2, √(d1 d2)`, so every
/// component must vanish on its own.
pub fn product_is_zero(x: &QuadMatrix, y: &QuadMatrix) -> bool {
    match x.matmul(y) {
        Ok(p) => p.is_zero(),
        Err(_) => {
            x.rational.matmul(&y.rational).is_zero()
                && x.surd.matmul(&y.rational).is_zero()
                && x.rational.matmul(&y.surd).is_zero()
                && x.surd.matmul(&y.surd).is_zero()
        }
    }
}

/// Fraction-free Gaussian elimination (Bareiss) over the integers.
pub fn bareiss_determinant(n: usize, entries: &[BigInt]) -> BigInt {
    let mut m: Vec<BigInt> = entries.to_vec();
    let mut sign = BigInt::one();
    let mut prev = BigInt::one();
    for k in 0..n {
        if m[k * n + k].is_zero() {
            let Some(swap) = (k + 1..n).find(|&r| !m[r * n + k].is_zero()) else {
                return BigInt::zero();
            };
            for c in 0..n {
                m.swap(k * n + c, swap * n + c);
            }
            sign = -sign;
        }
        let pivot = m[k * n + k].clone();
        for i in k + 1..n {
            for j in k + 1..n {
                let v = (&pivot * &m[i * n + j] - &m[i * n + k] * &m[k * n + j]) / &prev;
                m[i * n + j] = v;
            }
        }
        prev = pivot;
    }
    sign * &m[n * n - 1]
}
