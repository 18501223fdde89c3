//! Exact integer combinatorics.

use num_bigint::BigUint;
use num_traits::{One, Zero};

pub fn factorial(n: u64) -> BigUint {
    (2..=n).fold(BigUint::one(), |acc, i| acc * i)
}

/// `C(n, k)`, zero outside `0 <= k <= n`.
pub fn binomial(n: u64, k: i64) -> BigUint {
    if k < 0 || k as u64 > n {
        return BigUint::zero();
    }
    let k = (k as u64).min(n - k as u64);
    let mut c = BigUint::one();
    for i in 0..k {
        c = c * (n - i) / (i + 1);
    }
    c
}

/// Multinomial coefficient `(sum parts)! / prod(parts!)` in `u128`, or `None` on overflow.
pub fn multinomial_u128(parts: &[u32]) -> Option<u128> {
    let mut total: u128 = 0;
    let mut acc: u128 = 1;
    for &p in parts {
        for i in 1..=u128::from(p) {
            total += 1;
            // acc * total / i stays integral at every step.
            acc = acc.checked_mul(total)? / i;
        }
    }
    Some(acc)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn small_values() {
        assert_eq!(factorial(0), BigUint::one());
        assert_eq!(factorial(5), BigUint::from(120u32));
        assert_eq!(binomial(4, 2), BigUint::from(6u32));
        assert_eq!(binomial(4, -1), BigUint::zero());
        assert_eq!(binomial(4, 5), BigUint::zero());
        assert_eq!(binomial(0, 0), BigUint::one());
        assert_eq!(binomial(70, 35).to_string(), "112186277816662845432");
    }

    #[test]
    fn multinomials() {
        assert_eq!(multinomial_u128(&[2, 1, 1]), Some(12));
        assert_eq!(multinomial_u128(&[]), Some(1));
        assert_eq!(multinomial_u128(&[0, 3]), Some(1));
        assert_eq!(multinomial_u128(&[32, 32]), Some(1_832_624_140_942_590_534));
    }
}
