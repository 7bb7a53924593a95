//! Repeated categorical trials.
//!
//! Outcomes of each trial are the categories `1..=m`. A finite prefix of the
//! trial sequence gives a count vector and a proportion estimate; the
//! long-run proportion vector itself is only ever approached through such
//! prefix estimates. Under exchangeability the trials are conditionally iid
//! given the proportions, which yields the multinomial pmf.

mod beliefs;
mod exchangeability;
mod pmf;
mod sequence;
mod simulate;

pub use beliefs::{belief_closure, BeliefState, Closure, Derivation, Proposition, Rule};
pub use exchangeability::{exchangeability_check, Exchangeability, JointPmf};
pub use pmf::{multinomial_coefficient, multinomial_pmf};
pub use sequence::{CountVector, ProportionEstimate, ProportionVector, TrialSequence};
pub use simulate::{simulate, ConvergenceTable, Simulation};
