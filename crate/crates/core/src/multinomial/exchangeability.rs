use alloc::vec::Vec;

use num_traits::{One, Signed};

use super::ProportionVector;
use crate::event::EnumerationCap;
use crate::rational::{self, Rational};
use crate::{Error, Result};

/// An explicit joint pmf over all `m^k` sequences of length `k`.
///
/// Sequences are indexed lexicographically: index 0 is `(1,..,1)`, the last
/// index is `(m,..,m)`, and the last trial varies fastest.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct JointPmf {
    m: usize,
    k: usize,
    probs: Vec<Rational>,
}

impl JointPmf {
    /// Checks shape, non-negativity and norming. The number of sequences must
    /// stay within `2^cap`.
    pub fn new(m: usize, k: usize, probs: Vec<Rational>, cap: EnumerationCap) -> Result<Self> {
        let expected = sequence_count(m, k, cap)?;
        if probs.len() != expected {
            return Err(Error::InvalidJoint(alloc::format!(
                "expected {expected} probabilities, got {}",
                probs.len()
            )));
        }
        if let Some(p) = probs.iter().find(|p| p.is_negative()) {
            return Err(Error::InvalidJoint(alloc::format!(
                "negative probability {}",
                rational::format(p)
            )));
        }
        let sum: Rational = probs.iter().sum();
        if !sum.is_one() {
            return Err(Error::InvalidJoint(alloc::format!(
                "probabilities sum to {}",
                rational::format(&sum)
            )));
        }
        Ok(Self { m, k, probs })
    }

    /// The iid product pmf `prod_i theta_{x_i}`.
    pub fn iid(theta: &ProportionVector, k: usize, cap: EnumerationCap) -> Result<Self> {
        let m = theta.categories();
        let total = sequence_count(m, k, cap)?;
        let probs = (0..total)
            .map(|i| {
                decode(m, k, i)
                    .iter()
                    .map(|&v| &theta.components()[v - 1])
                    .product()
            })
            .collect();
        Self::new(m, k, probs, cap)
    }

    /// Number of categories.
    pub fn categories(&self) -> usize {
        self.m
    }

    /// Sequence length.
    pub fn length(&self) -> usize {
        self.k
    }

    /// Probability of a sequence of 1-based values.
    pub fn prob(&self, sequence: &[usize]) -> Option<&Rational> {
        if sequence.len() != self.k || sequence.iter().any(|&v| v == 0 || v > self.m) {
            return None;
        }
        self.probs.get(encode(self.m, sequence))
    }

    /// All sequences with their probabilities, in index order.
    pub fn iter(&self) -> impl Iterator<Item = (Vec<usize>, &Rational)> + '_ {
        self.probs
            .iter()
            .enumerate()
            .map(|(i, p)| (decode(self.m, self.k, i), p))
    }
}

fn sequence_count(m: usize, k: usize, cap: EnumerationCap) -> Result<usize> {
    if m == 0 {
        return Err(Error::InvalidJoint("no categories".into()));
    }
    let limit = 1u128 << cap.get();
    let mut total: u128 = 1;
    for _ in 0..k {
        total *= m as u128;
        if total > limit {
            return Err(Error::InvalidJoint(alloc::format!(
                "{m}^{k} sequences exceed the enumeration cap of 2^{}",
                cap.get()
            )));
        }
    }
    Ok(total as usize)
}

fn decode(m: usize, k: usize, mut index: usize) -> Vec<usize> {
    let mut seq = alloc::vec![0; k];
    for slot in seq.iter_mut().rev() {
        *slot = index % m + 1;
        index /= m;
    }
    seq
}

fn encode(m: usize, seq: &[usize]) -> usize {
    seq.iter().fold(0, |acc, &v| acc * m + (v - 1))
}

/// Outcome of an exchangeability check.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Exchangeability {
    /// Every permutation of every sequence has the same probability.
    Exchangeable,
    /// Two sequences that are permutations of each other with different probabilities.
    Counterexample {
        /// The sorted rearrangement.
        sorted: Vec<usize>,
        /// A permutation of it with a different probability.
        permuted: Vec<usize>,
    },
}

/// Verifies permutation invariance of a joint pmf.
///
/// A pmf is exchangeable iff every sequence has the probability of its sorted
/// rearrangement, so each sequence is compared with that one representative.
/// The first mismatch in index order is returned.
pub fn exchangeability_check(joint: &JointPmf) -> Exchangeability {
    for (seq, p) in joint.iter() {
        let mut sorted = seq.clone();
        sorted.sort_unstable();
        if joint.probs[encode(joint.m, &sorted)] != *p {
            return Exchangeability::Counterexample {
                sorted,
                permuted: seq,
            };
        }
    }
    Exchangeability::Exchangeable
}
