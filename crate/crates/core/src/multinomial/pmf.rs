use num_bigint::{BigInt, BigUint};
use num_traits::{One, Pow, Zero};

use super::{CountVector, ProportionVector};
use crate::rational::Rational;
use crate::{Error, Result};

fn factorial(n: u64) -> BigUint {
    (1..=n).fold(BigUint::one(), |acc, i| acc * i)
}

/// `k! / (n_1! ... n_m!)` where `k` is the sum of the counts.
pub fn multinomial_coefficient(counts: &[u64]) -> BigUint {
    let k: u64 = counts.iter().sum();
    counts
        .iter()
        .fold(factorial(k), |acc, &n| acc / factorial(n))
}

/// Exact multinomial probability of the count vector `n` after `k` trials.
///
/// Uses `0^0 = 1`, so a null category with a zero count contributes a
/// factor of one.
pub fn multinomial_pmf(n: &CountVector, k: u64, theta: &ProportionVector) -> Result<Rational> {
    let sum = n.total();
    if sum != k {
        return Err(Error::CountMismatch { sum, k });
    }
    if n.counts.len() != theta.categories() {
        return Err(Error::InvalidTheta(alloc::format!(
            "{} categories in theta, {} in the count vector",
            theta.categories(),
            n.counts.len()
        )));
    }
    let mut p = Rational::from_integer(BigInt::from(multinomial_coefficient(&n.counts)));
    for (t, &c) in theta.components().iter().zip(&n.counts) {
        if c == 0 {
            continue;
        }
        if t.is_zero() {
            return Ok(Rational::zero());
        }
        p *= Pow::pow(t, c);
    }
    Ok(p)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::{int, ratio};

    fn theta(t: &[(i64, i64)]) -> ProportionVector {
        ProportionVector::new(t.iter().map(|&(a, b)| ratio(a, b)).collect()).unwrap()
    }

    fn counts(c: &[u64]) -> CountVector {
        CountVector { counts: c.to_vec() }
    }

    #[test]
    fn fair_coin_two_tosses() {
        let p = multinomial_pmf(&counts(&[1, 1]), 2, &theta(&[(1, 2), (1, 2)])).unwrap();
        assert_eq!(p, ratio(1, 2));
    }

    #[test]
    fn degenerate_theta() {
        let t = theta(&[(1, 1), (0, 1)]);
        assert_eq!(multinomial_pmf(&counts(&[5, 0]), 5, &t).unwrap(), int(1));
        assert_eq!(multinomial_pmf(&counts(&[4, 1]), 5, &t).unwrap(), int(0));
    }

    #[test]
    fn count_mismatch() {
        let t = theta(&[(1, 2), (1, 2)]);
        assert_eq!(
            multinomial_pmf(&counts(&[1, 1]), 3, &t),
            Err(Error::CountMismatch { sum: 2, k: 3 })
        );
        assert!(multinomial_pmf(&counts(&[1, 1, 1]), 3, &t).is_err());
    }

    #[test]
    fn coefficients() {
        assert_eq!(multinomial_coefficient(&[2, 1]), BigUint::from(3u8));
        assert_eq!(multinomial_coefficient(&[2, 2, 2]), BigUint::from(90u8));
        assert_eq!(multinomial_coefficient(&[]), BigUint::one());
    }
}
