//! All-or-nothing possibility over a sample space.
//!
//! `W` is the set of outcomes not known to be false. It need not be an event
//! of any sigma-field. An event is possible when it meets `W` and certain
//! when it contains `W`.

use core::fmt;

use num_traits::Zero;

use crate::event::{EnumerationCap, EventSet, OutcomeSpace};
use crate::measure::ProbabilityMeasure;
use crate::rational::Rational;
use crate::Result;

/// A sample space together with its possible outcomes.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PossibilitySpace {
    space: OutcomeSpace,
    possible: EventSet,
}

impl PossibilitySpace {
    /// `possible` must be an event over `space`. An empty `W` is accepted;
    /// see [`PossibilitySpace::is_degenerate`].
    pub fn new(space: OutcomeSpace, possible: EventSet) -> Result<Self> {
        space.check(&possible)?;
        Ok(Self { space, possible })
    }

    /// Every outcome possible.
    pub fn everything(space: OutcomeSpace) -> Self {
        let possible = space.full();
        Self { space, possible }
    }

    /// The sample space.
    pub fn space(&self) -> &OutcomeSpace {
        &self.space
    }

    /// The possible outcomes `W`.
    pub fn possible(&self) -> &EventSet {
        &self.possible
    }

    /// The impossible outcomes `S - W`.
    pub fn impossible(&self) -> EventSet {
        self.possible.complement()
    }

    /// `W` is empty: every event is impossible and vacuously certain.
    pub fn is_degenerate(&self) -> bool {
        self.possible.is_empty()
    }

    /// The possibility function: 1 iff `e` meets `W`.
    pub fn possibility(&self, e: &EventSet) -> u8 {
        u8::from(e.intersects(&self.possible))
    }

    /// Conditional possibility: 1 iff `e ∩ W ∩ c` is non-empty.
    pub fn conditional_possibility(&self, e: &EventSet, c: &EventSet) -> u8 {
        u8::from(e.intersection(c).intersects(&self.possible))
    }

    /// Modal flags of `e`, read off the possibility function of `e` and of its complement.
    pub fn classify_modal(&self, e: &EventSet) -> ModalClass {
        ModalClass {
            possible: self.possibility(e) == 1,
            certain: self.possibility(&e.complement()) == 0,
        }
    }

    /// Restriction to a sub-space: outcomes are matched by label and `W`
    /// becomes `W ∩ sub`.
    pub fn restrict(&self, sub: &OutcomeSpace) -> Self {
        let mut possible = sub.empty();
        for (i, label) in sub.labels().iter().enumerate() {
            if let Some(j) = self.space.index_of(label) {
                if self.possible.contains(j) {
                    possible.insert(i);
                }
            }
        }
        Self {
            space: sub.clone(),
            possible,
        }
    }
}

/// Possible/impossible and certain/uncertain flags for an event.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct ModalClass {
    /// The event meets `W`.
    pub possible: bool,
    /// The event contains `W`.
    pub certain: bool,
}

impl ModalClass {
    /// Not possible.
    pub fn impossible(self) -> bool {
        !self.possible
    }

    /// Not certain.
    pub fn uncertain(self) -> bool {
        !self.certain
    }
}

impl fmt::Display for ModalClass {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let p = if self.possible {
            "possible"
        } else {
            "impossible"
        };
        let c = if self.certain { "certain" } else { "uncertain" };
        write!(f, "{p}, {c}")
    }
}

/// Disjoint events inside `W` whose conditional possibility is zero while
/// the conditioned-on event still has positive probability.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct MismatchWitness {
    /// The significant event `E`.
    pub event: EventSet,
    /// The conditioning event `C`, disjoint from `E`.
    pub condition: EventSet,
    /// `P(E)`.
    pub prob: Rational,
}

/// Searches for measurable, non-empty, disjoint `E, C ⊆ W` with `P(E) > 0`.
///
/// Such a pair shows that possibility conditioned on someone else's
/// knowledge (`C`) can declare `E` impossible while the personal measure
/// still ranks it significant. `E` runs over measurable events in
/// enumeration order; for each, `C` is the first atom inside `W - E`, which
/// is also the first candidate in enumeration order.
pub fn hacking_mismatch(
    w: &PossibilitySpace,
    measure: &ProbabilityMeasure,
    cap: EnumerationCap,
) -> Result<Option<MismatchWitness>> {
    w.space().check(&measure.space().full())?;
    let field = measure.field();
    let events = field.events(cap)?;
    let inside: u64 = field
        .atoms()
        .iter()
        .enumerate()
        .filter(|(_, atom)| atom.is_subset(w.possible()))
        .fold(0, |m, (a, _)| m | 1 << a);
    for (mask, event) in events {
        if mask == 0 || mask & !inside != 0 {
            continue;
        }
        let prob = measure.prob_of_mask(mask);
        if prob.is_zero() {
            continue;
        }
        let rest = inside & !mask;
        if rest == 0 {
            continue;
        }
        let condition = field.atoms()[rest.trailing_zeros() as usize].clone();
        debug_assert_eq!(w.conditional_possibility(&event, &condition), 0);
        return Ok(Some(MismatchWitness {
            event,
            condition,
            prob,
        }));
    }
    Ok(None)
}
