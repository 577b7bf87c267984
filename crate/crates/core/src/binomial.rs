//! Exact binomial coefficients with the boundary convention used throughout
//! the crate: `C(x, y) = 0` whenever `x < 0`, `y < 0` or `y > x`, and
//! `C(x, 0) = 1` for `x >= 0`.

use crate::error::{Error, Result};

/// Binomial coefficient in exact 128-bit arithmetic with overflow detection.
/// Detection is conservative: an intermediate product past `u128::MAX` is
/// reported even if the final value would fit.
pub fn binomial(x: i64, y: i64) -> Result<u128> {
    if x < 0 || y < 0 || y > x {
        return Ok(0);
    }
    let x = x as u128;
    let mut y = y as u128;
    if y > x - y {
        y = x - y;
    }
    let mut acc: u128 = 1;
    for t in 0..y {
        // acc holds C(x, t), so the division is exact.
        acc = acc
            .checked_mul(x - t)
            .ok_or(Error::Overflow("binomial coefficient"))?
            / (t + 1);
    }
    Ok(acc)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn small_values() {
        assert_eq!(binomial(5, 2).unwrap(), 10);
        assert_eq!(binomial(10, 5).unwrap(), 252);
        assert_eq!(binomial(28, 10).unwrap(), 13123110);
        assert_eq!(binomial(19, 9).unwrap(), 92378);
    }

    #[test]
    fn boundary_convention() {
        assert_eq!(binomial(0, 0).unwrap(), 1);
        assert_eq!(binomial(7, 0).unwrap(), 1);
        assert_eq!(binomial(-1, 0).unwrap(), 0);
        assert_eq!(binomial(3, -2).unwrap(), 0);
        assert_eq!(binomial(2, 5).unwrap(), 0);
    }

    #[test]
    fn large_values_and_overflow() {
        assert_eq!(
            binomial(63, 31).unwrap(),
            916312070471295267,
        );
        // C(100, 50) ~ 1e29 fits in u128 with room for the intermediates.
        assert_eq!(
            binomial(100, 50).unwrap(),
            100891344545564193334812497256,
        );
        assert!(matches!(binomial(200, 100), Err(Error::Overflow(_))));
    }
}
