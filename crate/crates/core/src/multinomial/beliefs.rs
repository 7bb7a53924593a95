//! Forward-chaining closure over possibility and probability beliefs about
//! one category `a`.
//!
//! Rules, applied to a fixed point:
//!
//! * R1: `impossible(a) => P(x_i=a)=0` (axiom of correspondence).
//! * R2: `Pr(theta_a=0)=1 <=> P(x_i=a)=0` (exchangeable only).
//! * R3: `Pr(theta_a>0)>0 <=> P(x_i=a)>0` (exchangeable only).
//! * R4: `P(x_i=a)=0 => impossible(a)` (exchangeable only).

use alloc::collections::BTreeSet;
use alloc::string::String;
use alloc::vec::Vec;
use core::fmt;

/// An atomic belief about category `a`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Proposition {
    /// `a` is a possible outcome.
    Possible,
    /// `a` is an impossible outcome.
    Impossible,
    /// `P(x_i = a) = 0`.
    ProbZero,
    /// `P(x_i = a) > 0`.
    ProbPositive,
    /// `Pr(theta_a = 0) = 1`.
    ThetaZeroAlmostSure,
    /// `Pr(theta_a > 0) > 0`.
    ThetaPositiveSignificant,
}

impl Proposition {
    /// All six propositions.
    pub const ALL: [Proposition; 6] = [
        Self::Possible,
        Self::Impossible,
        Self::ProbZero,
        Self::ProbPositive,
        Self::ThetaZeroAlmostSure,
        Self::ThetaPositiveSignificant,
    ];

    /// The incompatible proposition.
    pub fn opposite(self) -> Self {
        match self {
            Self::Possible => Self::Impossible,
            Self::Impossible => Self::Possible,
            Self::ProbZero => Self::ProbPositive,
            Self::ProbPositive => Self::ProbZero,
            Self::ThetaZeroAlmostSure => Self::ThetaPositiveSignificant,
            Self::ThetaPositiveSignificant => Self::ThetaZeroAlmostSure,
        }
    }

    /// Keyword used in spec files, e.g. `prob_zero`.
    pub fn keyword(self) -> &'static str {
        match self {
            Self::Possible => "possible",
            Self::Impossible => "impossible",
            Self::ProbZero => "prob_zero",
            Self::ProbPositive => "prob_positive",
            Self::ThetaZeroAlmostSure => "theta_zero",
            Self::ThetaPositiveSignificant => "theta_positive",
        }
    }

    /// Inverse of [`Proposition::keyword`].
    pub fn from_keyword(word: &str) -> Option<Self> {
        Self::ALL.into_iter().find(|p| p.keyword() == word)
    }

    /// Mathematical rendering for category `a`.
    pub fn render(self, a: &str) -> String {
        match self {
            Self::Possible => alloc::format!("possible({a})"),
            Self::Impossible => alloc::format!("impossible({a})"),
            Self::ProbZero => alloc::format!("P(x_i={a})=0"),
            Self::ProbPositive => alloc::format!("P(x_i={a})>0"),
            Self::ThetaZeroAlmostSure => alloc::format!("Pr(theta_{a}=0)=1"),
            Self::ThetaPositiveSignificant => alloc::format!("Pr(theta_{a}>0)>0"),
        }
    }
}

/// The rule that licensed a derivation.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Rule {
    /// Impossible outcomes are insignificant.
    R1,
    /// Null long-run proportion almost surely iff the outcome has probability zero.
    R2,
    /// Positive long-run proportion with positive probability iff the outcome has positive probability.
    R3,
    /// Under exchangeability, insignificant outcomes are impossible.
    R4,
}

impl fmt::Display for Rule {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Debug::fmt(self, f)
    }
}

struct Implication {
    rule: Rule,
    premise: Proposition,
    conclusion: Proposition,
    needs_exchangeable: bool,
}

const RULES: [Implication; 6] = {
    use Proposition::*;
    const fn imp(
        rule: Rule,
        premise: Proposition,
        conclusion: Proposition,
        needs_exchangeable: bool,
    ) -> Implication {
        Implication {
            rule,
            premise,
            conclusion,
            needs_exchangeable,
        }
    }
    [
        imp(Rule::R1, Impossible, ProbZero, false),
        imp(Rule::R2, ThetaZeroAlmostSure, ProbZero, true),
        imp(Rule::R2, ProbZero, ThetaZeroAlmostSure, true),
        imp(Rule::R3, ThetaPositiveSignificant, ProbPositive, true),
        imp(Rule::R3, ProbPositive, ThetaPositiveSignificant, true),
        imp(Rule::R4, ProbZero, Impossible, true),
    ]
};

/// A set of beliefs about one category and whether exchangeability is assumed.
#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct BeliefState {
    /// Held propositions.
    pub propositions: BTreeSet<Proposition>,
    /// The trial sequence is believed exchangeable.
    pub exchangeable: bool,
}

impl BeliefState {
    /// Builds a state from propositions.
    pub fn new(propositions: impl IntoIterator<Item = Proposition>, exchangeable: bool) -> Self {
        Self {
            propositions: propositions.into_iter().collect(),
            exchangeable,
        }
    }

    /// Pairs of opposite propositions both held, each pair listed once.
    pub fn contradictions(&self) -> Vec<(Proposition, Proposition)> {
        self.propositions
            .iter()
            .filter(|p| **p < p.opposite() && self.propositions.contains(&p.opposite()))
            .map(|&p| (p, p.opposite()))
            .collect()
    }
}

/// One rule application.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Derivation {
    /// Rule applied.
    pub rule: Rule,
    /// Proposition it fired on.
    pub premise: Proposition,
    /// Proposition it added.
    pub conclusion: Proposition,
}

/// A closed belief state.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Closure {
    /// The fixed point.
    pub state: BeliefState,
    /// Opposite pairs present after closure.
    pub contradictions: Vec<(Proposition, Proposition)>,
    /// Rule applications in the order they fired.
    pub trace: Vec<Derivation>,
}

impl Closure {
    /// True when some proposition and its opposite are both held.
    pub fn is_contradictory(&self) -> bool {
        !self.contradictions.is_empty()
    }
}

/// Applies R1–R4 until nothing new is derived.
pub fn belief_closure(beliefs: &BeliefState) -> Closure {
    let mut state = beliefs.clone();
    let mut trace = Vec::new();
    loop {
        let mut changed = false;
        for r in &RULES {
            if r.needs_exchangeable && !state.exchangeable {
                continue;
            }
            if state.propositions.contains(&r.premise) && state.propositions.insert(r.conclusion) {
                trace.push(Derivation {
                    rule: r.rule,
                    premise: r.premise,
                    conclusion: r.conclusion,
                });
                changed = true;
            }
        }
        if !changed {
            break;
        }
    }
    Closure {
        contradictions: state.contradictions(),
        state,
        trace,
    }
}
