use alloc::format;
use alloc::vec;
use alloc::vec::Vec;

use num_traits::{One, Signed, Zero};

use crate::rational::{self, Rational};
use crate::{Error, Result};

/// A finite prefix `x_1..x_k` of a trial sequence over categories `1..=m`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TrialSequence {
    m: usize,
    values: Vec<usize>,
}

impl TrialSequence {
    /// Validates that every value lies in `1..=m`; the error carries the
    /// 1-based position of the first bad value.
    pub fn new(m: usize, values: Vec<usize>) -> Result<Self> {
        if let Some((i, &value)) = values.iter().enumerate().find(|(_, &v)| v == 0 || v > m) {
            return Err(Error::ValueOutOfRange {
                position: i + 1,
                value,
                m,
            });
        }
        Ok(Self { m, values })
    }

    /// Number of categories.
    pub fn categories(&self) -> usize {
        self.m
    }

    /// Values in trial order.
    pub fn values(&self) -> &[usize] {
        &self.values
    }

    /// Number of trials `k`.
    pub fn len(&self) -> usize {
        self.values.len()
    }

    /// No trials.
    pub fn is_empty(&self) -> bool {
        self.values.is_empty()
    }

    /// Per-category tallies `n_{k,a}`.
    pub fn count_vector(&self) -> CountVector {
        let mut counts = vec![0u64; self.m];
        for &v in &self.values {
            counts[v - 1] += 1;
        }
        CountVector { counts }
    }

    /// The prefix average `n_k / k`. This is an estimate at `k`, not a limit.
    pub fn proportion_estimate(&self) -> Result<ProportionEstimate> {
        if self.values.is_empty() {
            return Err(Error::EmptySequence);
        }
        let k = self.values.len() as u64;
        let theta = self
            .count_vector()
            .counts
            .iter()
            .map(|&n| rational::ratio(n as i64, k as i64))
            .collect();
        Ok(ProportionEstimate { k, theta })
    }
}

/// Category counts of a sequence prefix.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CountVector {
    /// `counts[a - 1]` is the number of trials equal to `a`.
    pub counts: Vec<u64>,
}

impl CountVector {
    /// Total number of trials counted.
    pub fn total(&self) -> u64 {
        self.counts.iter().sum()
    }
}

/// Proportions estimated from the first `k` trials.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ProportionEstimate {
    /// Prefix length.
    pub k: u64,
    /// `n_{k,a} / k` per category.
    pub theta: Vec<Rational>,
}

/// A probability vector over the categories: non-negative, summing to one.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ProportionVector {
    theta: Vec<Rational>,
}

impl ProportionVector {
    /// Validates non-negativity and norming.
    pub fn new(theta: Vec<Rational>) -> Result<Self> {
        if theta.is_empty() {
            return Err(Error::InvalidTheta("no categories".into()));
        }
        if let Some((i, t)) = theta.iter().enumerate().find(|(_, t)| t.is_negative()) {
            return Err(Error::InvalidTheta(format!(
                "theta_{} = {} is negative",
                i + 1,
                rational::format(t)
            )));
        }
        let sum: Rational = theta.iter().sum();
        if !sum.is_one() {
            return Err(Error::InvalidTheta(format!(
                "components sum to {}",
                rational::format(&sum)
            )));
        }
        Ok(Self { theta })
    }

    /// Components in category order.
    pub fn components(&self) -> &[Rational] {
        &self.theta
    }

    /// Number of categories.
    pub fn categories(&self) -> usize {
        self.theta.len()
    }

    /// Categories with `theta_a = 0` (1-based).
    pub fn null_categories(&self) -> impl Iterator<Item = usize> + '_ {
        self.theta
            .iter()
            .enumerate()
            .filter(|(_, t)| t.is_zero())
            .map(|(i, _)| i + 1)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::{int, ratio};

    #[test]
    fn counts() {
        let x = TrialSequence::new(2, vec![1, 2, 1]).unwrap();
        assert_eq!(x.count_vector().counts, vec![2, 1]);
        let empty = TrialSequence::new(3, vec![]).unwrap();
        assert_eq!(empty.count_vector().counts, vec![0, 0, 0]);
        let constant = TrialSequence::new(3, vec![2; 5]).unwrap();
        assert_eq!(constant.count_vector().counts, vec![0, 5, 0]);
        assert_eq!(constant.count_vector().total(), 5);
    }

    #[test]
    fn out_of_range_reports_position() {
        assert_eq!(
            TrialSequence::new(2, vec![1, 2, 3]).unwrap_err(),
            Error::ValueOutOfRange {
                position: 3,
                value: 3,
                m: 2
            }
        );
        assert!(TrialSequence::new(2, vec![0]).is_err());
    }

    #[test]
    fn estimates() {
        let est = |m, v: Vec<usize>| {
            TrialSequence::new(m, v)
                .unwrap()
                .proportion_estimate()
                .unwrap()
        };
        assert_eq!(est(2, vec![2, 2, 2]).theta, vec![int(0), int(1)]);
        let alt = est(2, vec![1, 2, 1, 2]);
        assert_eq!((alt.k, alt.theta), (4, vec![ratio(1, 2), ratio(1, 2)]));
        assert_eq!(est(2, vec![1, 1, 2]).theta, vec![ratio(2, 3), ratio(1, 3)]);
        assert_eq!(
            TrialSequence::new(2, vec![]).unwrap().proportion_estimate(),
            Err(Error::EmptySequence)
        );
    }

    #[test]
    fn theta_validation() {
        assert!(ProportionVector::new(vec![ratio(1, 2), ratio(1, 2)]).is_ok());
        assert!(ProportionVector::new(vec![ratio(1, 2), ratio(1, 3)]).is_err());
        assert!(ProportionVector::new(vec![ratio(-1, 2), ratio(3, 2)]).is_err());
        assert!(ProportionVector::new(vec![]).is_err());
        let t = ProportionVector::new(vec![int(1), int(0), int(0)]).unwrap();
        assert_eq!(t.null_categories().collect::<Vec<_>>(), vec![2, 3]);
    }
}
