//! Probability measures on finite sigma-fields.
//!
//! A measure assigns an exact rational weight to each atom; the probability
//! of a measurable event is the sum over its atoms, so additivity holds by
//! construction and only non-negativity and norming need checking.
//!
//! Significance thresholds are exact comparisons with 0 and 1.

use alloc::string::String;
use alloc::vec::Vec;
use core::fmt;

use num_traits::{One, Signed, Zero};

use crate::event::{EnumerationCap, EventSet, OutcomeSpace, SigmaField};
use crate::rational::{self, Rational};
use crate::{Error, Result};

/// A probability axiom that a weight vector fails.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Violation {
    /// Atom `atom` (0-based) has a negative weight.
    NonNegativity {
        /// Atom index.
        atom: usize,
        /// The negative weight.
        weight: Rational,
    },
    /// Weights do not sum to one.
    Norming {
        /// Actual total.
        sum: Rational,
    },
}

impl Violation {
    /// Name of the violated axiom.
    pub fn axiom(&self) -> &'static str {
        match self {
            Violation::NonNegativity { .. } => "Non-negativity",
            Violation::Norming { .. } => "Norming",
        }
    }
}

impl fmt::Display for Violation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Violation::NonNegativity { atom, weight } => write!(
                f,
                "Non-negativity at atom {}: weight {}",
                atom + 1,
                rational::format(weight)
            ),
            Violation::Norming { sum } => {
                write!(f, "Norming: weights sum to {}", rational::format(sum))
            }
        }
    }
}

/// Every axiom violation found in a weight vector, in atom order with norming last.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ViolationReport {
    /// Violations found.
    pub violations: Vec<Violation>,
}

impl fmt::Display for ViolationReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (i, v) in self.violations.iter().enumerate() {
            if i > 0 {
                f.write_str("; ")?;
            }
            write!(f, "{v}")?;
        }
        Ok(())
    }
}

/// Classification of an event by its probability.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum SignificanceClass {
    /// Probability zero.
    Insignificant,
    /// Probability strictly between zero and one.
    SignificantNotAlmostSure,
    /// Probability one (and so also significant).
    AlmostSure,
}

impl SignificanceClass {
    /// Classifies an exact probability.
    pub fn of(p: &Rational) -> Self {
        if p.is_zero() {
            Self::Insignificant
        } else if p.is_one() {
            Self::AlmostSure
        } else {
            Self::SignificantNotAlmostSure
        }
    }

    /// Probability greater than zero.
    pub fn is_significant(self) -> bool {
        self != Self::Insignificant
    }

    /// Probability zero.
    pub fn is_insignificant(self) -> bool {
        self == Self::Insignificant
    }

    /// Probability one.
    pub fn is_almost_sure(self) -> bool {
        self == Self::AlmostSure
    }
}

impl fmt::Display for SignificanceClass {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Self::Insignificant => "insignificant",
            Self::SignificantNotAlmostSure => "significant, not almost sure",
            Self::AlmostSure => "almost sure, significant",
        })
    }
}

/// A validated probability measure: one exact weight per atom.
#[derive(Debug, Clone, PartialEq)]
pub struct ProbabilityMeasure {
    field: SigmaField,
    weights: Vec<Rational>,
}

impl ProbabilityMeasure {
    /// Checks the probability axioms and returns the measure if they hold.
    ///
    /// Every violation is reported, not just the first.
    pub fn validate(field: SigmaField, weights: Vec<Rational>) -> Result<Self> {
        if weights.len() != field.atom_count() {
            return Err(Error::WeightCount {
                expected: field.atom_count(),
                found: weights.len(),
            });
        }
        let mut violations: Vec<Violation> = weights
            .iter()
            .enumerate()
            .filter(|(_, w)| w.is_negative())
            .map(|(atom, w)| Violation::NonNegativity {
                atom,
                weight: w.clone(),
            })
            .collect();
        let sum: Rational = weights.iter().sum();
        if !sum.is_one() {
            violations.push(Violation::Norming { sum });
        }
        if !violations.is_empty() {
            return Err(Error::AxiomViolation(ViolationReport { violations }));
        }
        Ok(Self { field, weights })
    }

    /// Discrete measure from per-outcome weights.
    pub fn discrete(space: &OutcomeSpace, weights: Vec<Rational>) -> Result<Self> {
        Self::validate(SigmaField::discrete(space), weights)
    }

    /// The sigma-field the measure lives on.
    pub fn field(&self) -> &SigmaField {
        &self.field
    }

    /// The sample space.
    pub fn space(&self) -> &OutcomeSpace {
        self.field.space()
    }

    /// Atom weights in atom order.
    pub fn weights(&self) -> &[Rational] {
        &self.weights
    }

    /// Weight of atom `a`.
    pub fn atom_weight(&self, a: usize) -> &Rational {
        &self.weights[a]
    }

    /// Probability of a measurable event.
    pub fn prob(&self, e: &EventSet) -> Result<Rational> {
        let atoms = self
            .field
            .decompose(e)
            .ok_or_else(|| self.not_measurable(e))?;
        Ok(atoms.into_iter().map(|a| &self.weights[a]).sum())
    }

    /// Probability of the union of the atoms selected by `mask`.
    pub fn prob_of_mask(&self, mask: u64) -> Rational {
        self.weights
            .iter()
            .enumerate()
            .take(64)
            .filter(|(a, _)| mask >> a & 1 == 1)
            .map(|(_, w)| w)
            .sum()
    }

    /// Significance class of a measurable event.
    pub fn classify(&self, e: &EventSet) -> Result<SignificanceClass> {
        Ok(SignificanceClass::of(&self.prob(e)?))
    }

    /// Mask of the atoms with positive weight (first 64 atoms).
    pub fn significant_atom_mask(&self) -> u64 {
        self.weights
            .iter()
            .enumerate()
            .take(64)
            .filter(|(_, w)| !w.is_zero())
            .fold(0, |m, (a, _)| m | 1 << a)
    }

    /// Conditional measure on the sub-field of events inside `s0`.
    ///
    /// The new sample space holds the outcomes of `s0` in their original
    /// order; its atoms are the original atoms contained in `s0`, with
    /// weights divided by `P(s0)`.
    pub fn condition(&self, s0: &EventSet) -> Result<Self> {
        let atoms = self
            .field
            .decompose(s0)
            .ok_or_else(|| self.not_measurable(s0))?;
        let p0: Rational = atoms.iter().map(|&a| &self.weights[a]).sum();
        if p0.is_zero() {
            return Err(Error::ConditioningOnNull {
                event: self.space().show(s0),
            });
        }
        let space = self.space();
        let sub_space = OutcomeSpace::new(s0.iter().map(|i| String::from(space.label(i))))?;
        let generators: Vec<EventSet> = atoms
            .iter()
            .map(|&a| {
                let labels = self.field.atoms()[a].iter().map(|i| space.label(i));
                sub_space.event(labels)
            })
            .collect::<Result<_>>()?;
        let field = SigmaField::generate(&sub_space, &generators)?;
        // Generated atoms come back ordered by first outcome, which matches the
        // order of `atoms` since both follow the original outcome order.
        let weights = atoms.iter().map(|&a| &self.weights[a] / &p0).collect();
        Self::validate(field, weights)
    }

    fn not_measurable(&self, e: &EventSet) -> Error {
        if e.universe() != self.space().len() {
            return Error::SpaceMismatch {
                expected: self.space().len(),
                found: e.universe(),
            };
        }
        Error::NotMeasurable(self.space().show(e))
    }
}

/// Why a candidate is not a reduction of a probability space.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum ReductionWitness {
    /// An outcome of the sub-space is missing from the full space.
    OutcomeNotInSpace(String),
    /// An event of the sub-field is not an event of the full field.
    EventNotInField(String),
    /// Probabilities disagree on a sub-field event.
    ProbabilityMismatch {
        /// The event, rendered with outcome labels.
        event: String,
        /// Probability in the sub-space.
        sub: Rational,
        /// Probability in the full space.
        full: Rational,
    },
}

impl fmt::Display for ReductionWitness {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Self::OutcomeNotInSpace(label) => write!(f, "outcome {label} is not in the full space"),
            Self::EventNotInField(e) => write!(f, "event {e} is not in the full field"),
            Self::ProbabilityMismatch { event, sub, full } => write!(
                f,
                "event {event}: reduced probability {} vs original {}",
                rational::format(sub),
                rational::format(full)
            ),
        }
    }
}

/// Outcome of a reduction check.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ReductionCheck {
    /// First failing condition, in enumeration order; `None` for a reduction.
    pub witness: Option<ReductionWitness>,
}

impl ReductionCheck {
    /// True when no failing event was found.
    pub fn is_reduction(&self) -> bool {
        self.witness.is_none()
    }
}

/// Checks whether `sub` is a reduction of `full`.
///
/// Outcomes are matched by label. Every event of the sub-field is visited in
/// enumeration order; the first one missing from the full field or carrying a
/// different probability is returned as the witness.
pub fn is_reduction(
    sub: &ProbabilityMeasure,
    full: &ProbabilityMeasure,
    cap: EnumerationCap,
) -> Result<ReductionCheck> {
    let fail = |w| Ok(ReductionCheck { witness: Some(w) });
    let full_space = full.space();
    let mut embed = Vec::with_capacity(sub.space().len());
    for label in sub.space().labels() {
        match full_space.index_of(label) {
            Some(i) => embed.push(i),
            None => return fail(ReductionWitness::OutcomeNotInSpace(label.clone())),
        }
    }
    for (mask, event) in sub.field().events(cap)? {
        let lifted = EventSet::from_indices(full_space.len(), event.iter().map(|i| embed[i]));
        let Ok(p_full) = full.prob(&lifted) else {
            return fail(ReductionWitness::EventNotInField(sub.space().show(&event)));
        };
        let p_sub = sub.prob_of_mask(mask);
        if p_sub != p_full {
            return fail(ReductionWitness::ProbabilityMismatch {
                event: sub.space().show(&event),
                sub: p_sub,
                full: p_full,
            });
        }
    }
    Ok(ReductionCheck { witness: None })
}

/// The three clauses relating reductions and almost sure events, evaluated
/// independently for one conditioning event.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ReductionClauses {
    /// `condition(full, s0)` is a reduction of `full`.
    pub reduction: bool,
    /// `P(s0) = 1`.
    pub almost_sure: bool,
    /// `P(S - s0) = 0`.
    pub complement_insignificant: bool,
    /// Witness from the reduction check, when it fails.
    pub witness: Option<ReductionWitness>,
}

impl ReductionClauses {
    /// All three clauses agree.
    pub fn consistent(&self) -> bool {
        self.reduction == self.almost_sure && self.almost_sure == self.complement_insignificant
    }
}

/// Evaluates the reduction / almost-sure / complement-insignificant clauses for `s0`.
pub fn theorem1_oracle(
    full: &ProbabilityMeasure,
    s0: &EventSet,
    cap: EnumerationCap,
) -> Result<ReductionClauses> {
    let conditioned = full.condition(s0)?;
    let check = is_reduction(&conditioned, full, cap)?;
    let almost_sure = full.classify(s0)?.is_almost_sure();
    let complement_insignificant = full.classify(&s0.complement())?.is_insignificant();
    Ok(ReductionClauses {
        reduction: check.is_reduction(),
        almost_sure,
        complement_insignificant,
        witness: check.witness,
    })
}
