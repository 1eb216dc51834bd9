use num_bigint::BigInt;
use num_traits::Zero;
use serde::{Deserialize, Serialize};

use super::{QuadraticNumber, Rational};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub enum PeriodicityKind {
    AllIntegers,
    SharedQuadraticForm,
    None,
}

/// Witnesses `(a, Δ, b_λ)` with every value equal to `(a + b_λ·√Δ) / 2`.
/// For `AllIntegers` the witnesses are `a = 0`, `Δ = 1`, `b_λ = 2λ`; for
/// `None` they are empty.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PeriodicityForm {
    pub kind: PeriodicityKind,
    pub a: BigInt,
    pub delta: u64,
    pub b_values: Vec<BigInt>,
}

impl PeriodicityForm {
    fn none() -> Self {
        Self { kind: PeriodicityKind::None, a: BigInt::zero(), delta: 1, b_values: Vec::new() }
    }

    pub fn is_periodic(&self) -> bool {
        self.kind != PeriodicityKind::None
    }

    /// `(a + b_i √Δ) / 2` for witness `i`.
    pub fn reconstruct(&self, i: usize) -> QuadraticNumber {
        QuadraticNumber::half_form(&self.a, &self.b_values[i], self.delta).expect("valid witness")
    }
}

fn doubled_integer(r: &Rational) -> Option<BigInt> {
    let twice = r * Rational::from_integer(BigInt::from(2));
    twice.is_integer().then(|| twice.to_integer())
}

/// Decides whether one pair `(a, Δ)` writes every value as
/// `(a + b_λ √Δ) / 2` with integer `b_λ`. Distinct irrational radicands are
/// rationally independent, so at most one `Δ > 1` can work and it must be the
/// radicand shared by all irrational inputs.
pub fn classify_periodicity_form(values: &[QuadraticNumber]) -> PeriodicityForm {
    if values.is_empty() {
        return PeriodicityForm::none();
    }
    if values.iter().all(QuadraticNumber::is_integer) {
        let b_values = values.iter().map(|v| v.p().to_integer() * 2).collect();
        return PeriodicityForm {
            kind: PeriodicityKind::AllIntegers,
            a: BigInt::zero(),
            delta: 1,
            b_values,
        };
    }

    let mut radicands = values.iter().filter(|v| !v.is_rational()).map(QuadraticNumber::d);
    let delta = match radicands.next() {
        Some(d) => {
            if radicands.any(|other| other != d) {
                return PeriodicityForm::none();
            }
            d
        }
        None => {
            // rational but not all integers: only Δ = 1 remains, with a = 0
            let b: Option<Vec<BigInt>> = values.iter().map(|v| doubled_integer(v.p())).collect();
            return match b {
                Some(b_values) => PeriodicityForm {
                    kind: PeriodicityKind::SharedQuadraticForm,
                    a: BigInt::zero(),
                    delta: 1,
                    b_values,
                },
                None => PeriodicityForm::none(),
            };
        }
    };

    let mut shared_a: Option<BigInt> = None;
    let mut b_values = Vec::with_capacity(values.len());
    for v in values {
        let (Some(a), Some(b)) = (doubled_integer(v.p()), doubled_integer(v.q())) else {
            return PeriodicityForm::none();
        };
        match &shared_a {
            Some(prev) if *prev != a => return PeriodicityForm::none(),
            Some(_) => {}
            None => shared_a = Some(a),
        }
        b_values.push(b);
    }
    PeriodicityForm {
        kind: PeriodicityKind::SharedQuadraticForm,
        a: shared_a.expect("non-empty input"),
        delta,
        b_values,
    }
}
