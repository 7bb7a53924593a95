use alloc::string::String;
use alloc::vec::Vec;
use core::fmt::Write;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use super::{ProportionVector, TrialSequence};
use crate::rational;
use crate::{Error, Result};

/// Proportion estimates at each checkpoint of a simulated sequence.
#[derive(Debug, Clone, PartialEq)]
pub struct ConvergenceTable {
    /// `(k, n_k / k)` rows in increasing `k`.
    pub rows: Vec<(u64, Vec<f64>)>,
}

impl ConvergenceTable {
    /// Delimiter-separated text: a `k,theta_1,..,theta_m` header, then one row
    /// per checkpoint with six decimals.
    pub fn to_delimited(&self, sep: char) -> String {
        let m = self.rows.first().map_or(0, |(_, r)| r.len());
        let mut out = String::from("k");
        for a in 1..=m {
            let _ = write!(out, "{sep}theta_{a}");
        }
        out.push('\n');
        for (k, est) in &self.rows {
            let _ = write!(out, "{k}");
            for e in est {
                let _ = write!(out, "{sep}{e:.6}");
            }
            out.push('\n');
        }
        out
    }

    /// Estimates at the last checkpoint.
    pub fn last(&self) -> Option<&[f64]> {
        self.rows.last().map(|(_, r)| r.as_slice())
    }
}

/// A seeded simulation run.
#[derive(Debug, Clone, PartialEq)]
pub struct Simulation {
    /// Seed used; echoed in every report.
    pub seed: u64,
    /// The generated sequence.
    pub sequence: TrialSequence,
    /// Estimates at powers of two and at `k`.
    pub table: ConvergenceTable,
}

/// Draws `k` iid trials from `theta` with a ChaCha8 generator seeded by `seed`.
///
/// Each trial takes one `f64` in `[0, 1)` and picks the first category whose
/// cumulative proportion exceeds it, so null categories never occur.
pub fn simulate(theta: &ProportionVector, k: u64, seed: u64) -> Result<Simulation> {
    if k == 0 {
        return Err(Error::EmptySequence);
    }
    let m = theta.categories();
    let mut cumulative: Vec<f64> = theta
        .components()
        .iter()
        .scan(0.0, |acc, t| {
            *acc += rational::to_f64(t);
            Some(*acc)
        })
        .collect();
    // The last non-null category closes the interval at exactly 1.
    if let Some(last) = theta
        .components()
        .iter()
        .rposition(|t| !num_traits::Zero::is_zero(t))
    {
        for c in &mut cumulative[last..] {
            *c = 1.0;
        }
    }

    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut values = Vec::with_capacity(k as usize);
    let mut counts = alloc::vec![0u64; m];
    let mut rows = Vec::new();
    let mut next_checkpoint = 1u64;
    for i in 1..=k {
        let u: f64 = rng.random();
        let a = cumulative.iter().position(|&c| u < c).unwrap_or(m - 1);
        counts[a] += 1;
        values.push(a + 1);
        if i == next_checkpoint || i == k {
            rows.push((i, counts.iter().map(|&n| n as f64 / i as f64).collect()));
            if i == next_checkpoint {
                next_checkpoint = next_checkpoint.saturating_mul(2);
            }
        }
    }
    Ok(Simulation {
        seed,
        sequence: TrialSequence::new(m, values)?,
        table: ConvergenceTable { rows },
    })
}
