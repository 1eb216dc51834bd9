//! Exact rational and quadratic-field arithmetic.

mod matrix;
mod periodicity;
mod quadratic;
mod squarefree;

use num_rational::BigRational;
use num_traits::ToPrimitive;

pub use matrix::{bareiss_determinant, product_is_zero, QuadMatrix, RatMatrix};
pub use periodicity::{classify_periodicity_form, PeriodicityForm, PeriodicityKind};
pub use quadratic::{is_quadratic_integer, quad_arithmetic, QuadOp, QuadraticNumber};
pub use squarefree::{is_square_free, square_free_decompose};

pub type Rational = BigRational;

pub fn rational_to_f64(r: &Rational) -> f64 {
    r.to_f64().unwrap_or(f64::NAN)
}

pub fn rational_from_i64(n: i64) -> Rational {
    Rational::from_integer(n.into())
}
