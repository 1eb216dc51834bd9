use std::cmp::Ordering;
use std::fmt;
use std::ops::Neg;
use std::str::FromStr;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};

use super::squarefree::square_free_decompose;
use super::{rational_to_f64, Rational};
use crate::error::{Error, Result};

/// Exact `p + q·√d` with rational `p`, `q` and square-free `d ≥ 1`.
///
/// Canonical form: `d = 1` whenever `q = 0`, and `q = 0` whenever `d = 1`,
/// so structural equality is numeric equality.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct QuadraticNumber {
    p: Rational,
    q: Rational,
    d: u64,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum QuadOp {
    Add,
    Sub,
    Mul,
}

impl QuadraticNumber {
    /// `p + q·√m` for any `m ≥ 0`; square factors of `m` are pulled out.
    pub fn new(p: Rational, q: Rational, m: u64) -> Result<Self> {
        if m == 0 || q.is_zero() {
            return Ok(Self::rational(p));
        }
        let (a, b) = square_free_decompose(m as i64)?;
        let q = q * Rational::from_integer(BigInt::from(a));
        if b == 1 {
            Ok(Self::rational(p + q))
        } else {
            Ok(Self { p, q, d: b })
        }
    }

    pub fn rational(p: Rational) -> Self {
        Self { p, q: Rational::zero(), d: 1 }
    }

    pub fn integer(n: i64) -> Self {
        Self::rational(Rational::from_integer(BigInt::from(n)))
    }

    pub fn from_bigint(n: BigInt) -> Self {
        Self::rational(Rational::from_integer(n))
    }

    /// `√m` for an integer `m ≥ 0`.
    pub fn sqrt_int(m: &BigInt) -> Result<Self> {
        if m.is_negative() {
            return Err(Error::InvalidArgument(format!("square root of negative integer {m}")));
        }
        let m = m
            .to_u64()
            .ok_or_else(|| Error::InvalidArgument(format!("radicand {m} exceeds 64 bits")))?;
        Self::new(Rational::zero(), Rational::one(), m)
    }

    /// `(a + b·√d) / 2`.
    pub fn half_form(a: &BigInt, b: &BigInt, d: u64) -> Result<Self> {
        let two = BigInt::from(2);
        Self::new(
            BigRational::new(a.clone(), two.clone()),
            BigRational::new(b.clone(), two),
            d,
        )
    }

    pub fn p(&self) -> &Rational {
        &self.p
    }

    pub fn q(&self) -> &Rational {
        &self.q
    }

    pub fn d(&self) -> u64 {
        self.d
    }

    pub fn is_rational(&self) -> bool {
        self.q.is_zero()
    }

    pub fn is_integer(&self) -> bool {
        self.is_rational() && self.p.is_integer()
    }

    pub fn is_zero(&self) -> bool {
        self.is_rational() && self.p.is_zero()
    }

    pub fn as_integer(&self) -> Option<BigInt> {
        self.is_integer().then(|| self.p.to_integer())
    }

    pub fn to_f64(&self) -> f64 {
        rational_to_f64(&self.p) + rational_to_f64(&self.q) * (self.d as f64).sqrt()
    }

    /// The Galois conjugate `p − q·√d`.
    pub fn conjugate(&self) -> Self {
        Self { p: self.p.clone(), q: -self.q.clone(), d: self.d }
    }

    /// Exact sign of `p + q·√d`.
    pub fn signum(&self) -> Ordering {
        let ps = self.p.cmp(&Rational::zero());
        let qs = self.q.cmp(&Rational::zero());
        if qs == Ordering::Equal {
            return ps;
        }
        if ps == Ordering::Equal || ps == qs {
            return qs;
        }
        // opposite signs: compare p² with q²·d
        let d = Rational::from_integer(BigInt::from(self.d));
        let p2 = &self.p * &self.p;
        let q2d = &self.q * &self.q * d;
        match p2.cmp(&q2d) {
            Ordering::Greater => ps,
            Ordering::Less => qs,
            Ordering::Equal => Ordering::Equal,
        }
    }

    fn common_radicand(&self, other: &Self) -> Result<u64> {
        match (self.d, other.d) {
            (1, d) | (d, 1) => Ok(d),
            (a, b) if a == b => Ok(a),
            (a, b) => Err(Error::IncompatibleRadicands(a, b)),
        }
    }

    pub fn checked_add(&self, other: &Self) -> Result<Self> {
        let d = self.common_radicand(other)?;
        Self::new(&self.p + &other.p, &self.q + &other.q, d)
    }

    pub fn checked_sub(&self, other: &Self) -> Result<Self> {
        self.checked_add(&-other.clone())
    }

    pub fn checked_mul(&self, other: &Self) -> Result<Self> {
        let d = self.common_radicand(other)?;
        let dr = Rational::from_integer(BigInt::from(d));
        let p = &self.p * &other.p + &self.q * &other.q * dr;
        let q = &self.p * &other.q + &self.q * &other.p;
        Self::new(p, q, d)
    }

    /// Multiplicative inverse via the conjugate: `1/x = x̄ / (p² − q²d)`.
    pub fn inverse(&self) -> Result<Self> {
        if self.is_zero() {
            return Err(Error::DivisionByZero);
        }
        let dr = Rational::from_integer(BigInt::from(self.d));
        let norm = &self.p * &self.p - &self.q * &self.q * dr;
        let c = self.conjugate();
        Self::new(c.p / &norm, c.q / norm, self.d)
    }

    pub fn checked_div(&self, other: &Self) -> Result<Self> {
        self.checked_mul(&other.inverse()?)
    }

    pub fn scale(&self, r: &Rational) -> Self {
        if r.is_zero() {
            return Self::rational(Rational::zero());
        }
        Self { p: &self.p * r, q: &self.q * r, d: self.d }
    }

    pub fn square(&self) -> Self {
        self.checked_mul(self).expect("same radicand")
    }
}

/// Applies `op` exactly; fails when both operands carry distinct
/// irrational radicands.
pub fn quad_arithmetic(x: &QuadraticNumber, y: &QuadraticNumber, op: QuadOp) -> Result<QuadraticNumber> {
    match op {
        QuadOp::Add => x.checked_add(y),
        QuadOp::Sub => x.checked_sub(y),
        QuadOp::Mul => x.checked_mul(y),
    }
}

impl Neg for QuadraticNumber {
    type Output = QuadraticNumber;

    fn neg(self) -> QuadraticNumber {
        QuadraticNumber { p: -self.p, q: -self.q, d: self.d }
    }
}

impl PartialOrd for QuadraticNumber {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

/// Total order by real value. Values with distinct irrational radicands are
/// compared through their difference's sign, computed on a common
/// representation `(p1 − p2) + q1√d1 − q2√d2`.
impl Ord for QuadraticNumber {
    fn cmp(&self, other: &Self) -> Ordering {
        if let Ok(diff) = self.checked_sub(other) {
            return diff.signum();
        }
        // sign of (x + y) where x = (p1 - p2) + q1√d1, y = -q2√d2
        let x = QuadraticNumber { p: &self.p - &other.p, q: self.q.clone(), d: self.d };
        let y = QuadraticNumber::rational(Rational::zero()).checked_sub(&QuadraticNumber {
            p: Rational::zero(),
            q: other.q.clone(),
            d: other.d,
        });
        let y = y.expect("rational minus surd");
        let (sx, sy) = (x.signum(), y.signum());
        if sx == sy || sy == Ordering::Equal {
            return sx;
        }
        if sx == Ordering::Equal {
            return sy;
        }
        // opposite signs: compare x² and y²; y² = q2² d2 is rational
        let x2 = x.square();
        let y2 = y.square();
        let cmp = x2.checked_sub(&y2).expect("y² is rational").signum();
        match cmp {
            Ordering::Greater => sx,
            Ordering::Less => sy,
            Ordering::Equal => Ordering::Equal,
        }
    }
}

fn fmt_rational(r: &Rational, f: &mut fmt::Formatter<'_>) -> fmt::Result {
    if r.is_integer() {
        write!(f, "{}", r.numer())
    } else {
        write!(f, "{}/{}", r.numer(), r.denom())
    }
}

/// Renders `p + q*sqrt(d)`; rationals render as `p` and a zero `p` is
/// omitted.
impl fmt::Display for QuadraticNumber {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_rational() {
            return fmt_rational(&self.p, f);
        }
        if self.p.is_zero() {
            fmt_rational(&self.q, f)?;
        } else {
            fmt_rational(&self.p, f)?;
            f.write_str(if self.q.is_negative() { " - " } else { " + " })?;
            fmt_rational(&self.q.abs(), f)?;
        }
        write!(f, "*sqrt({})", self.d)
    }
}

fn parse_rational(s: &str) -> Result<Rational> {
    let bad = || Error::Parse(format!("bad rational `{s}`"));
    let s = s.trim();
    match s.split_once('/') {
        Some((n, d)) => {
            let n: BigInt = n.trim().parse().map_err(|_| bad())?;
            let d: BigInt = d.trim().parse().map_err(|_| bad())?;
            if d.is_zero() {
                return Err(bad());
            }
            Ok(BigRational::new(n, d))
        }
        None => Ok(Rational::from_integer(s.parse().map_err(|_| bad())?)),
    }
}

fn parse_surd(s: &str) -> Result<(Rational, u64)> {
    let bad = || Error::Parse(format!("bad surd term `{s}`"));
    let (coeff, rest) = s.split_once("*sqrt(").ok_or_else(bad)?;
    let d = rest.strip_suffix(')').ok_or_else(bad)?.trim().parse().map_err(|_| bad())?;
    Ok((parse_rational(coeff)?, d))
}

impl FromStr for QuadraticNumber {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let s = s.trim();
        if !s.contains("sqrt(") {
            return Ok(Self::rational(parse_rational(s)?));
        }
        // the separator is the last " + " / " - " before the surd term
        let split = s.rfind(" + ").map(|i| (i, 1)).into_iter().chain(s.rfind(" - ").map(|i| (i, -1))).max_by_key(|(i, _)| *i);
        let (p, q, d) = match split {
            Some((i, sign)) => {
                let p = parse_rational(&s[..i])?;
                let (q, d) = parse_surd(&s[i + 3..])?;
                (p, if sign < 0 { -q } else { q }, d)
            }
            None => {
                let (q, d) = parse_surd(s)?;
                (Rational::zero(), q, d)
            }
        };
        Self::new(p, q, d)
    }
}

/// Membership in the ring of integers of `Q(√d)`: `a + b√d` with integer
/// `a, b` when `d ≡ 2, 3 (mod 4)`, or `(a + b√d)/2` with `a ≡ b (mod 2)`
/// when `d ≡ 1 (mod 4)`.
pub fn is_quadratic_integer(x: &QuadraticNumber) -> bool {
    if x.is_rational() {
        return x.p.is_integer();
    }
    match x.d % 4 {
        2 | 3 => x.p.is_integer() && x.q.is_integer(),
        1 => {
            let two = Rational::from_integer(BigInt::from(2));
            let a = &x.p * &two;
            let b = &x.q * &two;
            a.is_integer() && b.is_integer() && a.to_integer().is_even() == b.to_integer().is_even()
        }
        _ => false,
    }
}
