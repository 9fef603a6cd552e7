//! Small exact combinatorial helpers.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};

/// Binomial coefficient `C(n, k)`, zero when `k > n`.
pub fn binom(n: u64, k: u64) -> u128 {
    if k > n {
        return 0;
    }
    let k = k.min(n - k);
    let mut acc: u128 = 1;
    for i in 0..k {
        acc = acc * (n - i) as u128 / (i + 1) as u128;
    }
    acc
}

/// `C(n, k)` for signed arguments; zero if `n < 0`, `k < 0` or `k > n`.
pub fn binom_i(n: i64, k: i64) -> i128 {
    if n < 0 || k < 0 || k > n {
        0
    } else {
        binom(n as u64, k as u64) as i128
    }
}

pub fn rat(n: i128) -> BigRational {
    BigRational::from_integer(BigInt::from(n))
}

pub fn rat_frac(n: i128, d: i128) -> BigRational {
    BigRational::new(BigInt::from(n), BigInt::from(d))
}

/// Renders a rational as `p/q` (always with a slash).
pub fn rat_string(r: &BigRational) -> String {
    format!("{}/{}", r.numer(), r.denom())
}

pub fn is_integral(r: &BigRational) -> bool {
    r.denom().is_one()
}

pub fn floor_rat(r: &BigRational) -> BigInt {
    r.floor().to_integer()
}

pub fn rat_is_zero(r: &BigRational) -> bool {
    r.numer().is_zero()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn binomials() {
        assert_eq!(binom(5, 2), 10);
        assert_eq!(binom(5, 0), 1);
        assert_eq!(binom(3, 5), 0);
        assert_eq!(binom(64, 32), 1_832_624_140_942_590_534);
        assert_eq!(binom_i(-1, 0), 0);
        assert_eq!(binom_i(4, -1), 0);
    }

    #[test]
    fn rational_rendering() {
        assert_eq!(rat_string(&rat_frac(10, 3)), "10/3");
        assert_eq!(rat_string(&rat(2)), "2/1");
        assert_eq!(floor_rat(&rat_frac(10, 3)), BigInt::from(3));
    }
}
