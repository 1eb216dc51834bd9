use crate::error::{Error, Result};

/// Writes `m = a² · b` with `b` square-free, by trial division up to `√m`.
pub fn square_free_decompose(m: i64) -> Result<(u64, u64)> {
    if m <= 0 {
        return Err(Error::InvalidArgument(format!(
            "square-free decomposition needs a positive integer, got {m}"
        )));
    }
    let mut rest = m as u64;
    let mut a = 1u64;
    let mut b = 1u64;
    let mut p = 2u64;
    while p * p <= rest {
        let mut e = 0;
        while rest.is_multiple_of(p) {
            rest /= p;
            e += 1;
        }
        a *= p.pow(e / 2);
        if e % 2 == 1 {
            b *= p;
        }
        p += if p == 2 { 1 } else { 2 };
    }
    // leftover is 1 or a prime with exponent one
    b *= rest;
    Ok((a, b))
}

pub fn is_square_free(m: u64) -> bool {
    m >= 1 && square_free_decompose(m as i64).map(|(a, _)| a == 1).unwrap_or(false)
}
