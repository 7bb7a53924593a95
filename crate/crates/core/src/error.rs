//! Error type shared by all operations.

use alloc::string::String;

/// Errors raised by the core operations.
#[derive(Debug, Clone, PartialEq, thiserror::Error)]
pub enum Error {
    /// A sample space must contain at least one outcome.
    #[error("sample space is empty")]
    EmptySpace,
    /// Outcome labels must be unique.
    #[error("duplicate outcome label `{0}`")]
    DuplicateOutcome(String),
    /// A label that is not part of the sample space.
    #[error("unknown outcome `{0}`")]
    UnknownOutcome(String),
    /// An event was built for a different sample space.
    #[error("event belongs to a space of {found} outcomes, expected {expected}")]
    SpaceMismatch {
        /// Outcome count of the space the operation works on.
        expected: usize,
        /// Outcome count the event was built for.
        found: usize,
    },
    /// Exhaustive enumeration was requested over too many atoms.
    #[error("field has {atoms} atoms, above the enumeration cap of {cap}")]
    EnumerationCap {
        /// Atom count of the field.
        atoms: usize,
        /// Configured cap.
        cap: usize,
    },
    /// The event is not a union of atoms of the field.
    #[error("event {0} is not measurable in this field")]
    NotMeasurable(String),
    /// One weight per atom is required.
    #[error("expected {expected} atom weights, got {found}")]
    WeightCount {
        /// Number of atoms.
        expected: usize,
        /// Number of weights supplied.
        found: usize,
    },
    /// The weights break one or more probability axioms.
    #[error("probability axioms violated: {0}")]
    AxiomViolation(crate::measure::ViolationReport),
    /// Conditioning requires a significant event.
    #[error("cannot condition on {event}: probability is 0")]
    ConditioningOnNull {
        /// The offending conditioning event.
        event: String,
    },
    /// The given cells do not partition the sample space.
    #[error("not a partition: {0}")]
    NotAPartition(String),
    /// A bucket holds more cells than its index allows.
    #[error("bucket {k} holds {size} cells, more than {k}")]
    BucketOverflow {
        /// Bucket index.
        k: String,
        /// Number of cells in it.
        size: usize,
    },
    /// The axiom of correspondence fails, so the requested construction is undefined.
    #[error("axiom of correspondence fails (impossible but significant events: {count})")]
    CorrespondenceFails {
        /// Number of impossible-but-significant events.
        count: u64,
    },
    /// The possibility space is not a union of atoms.
    #[error("possibility space is not a union of atoms")]
    PossibilityNotMeasurable,
    /// A trial value outside `1..=m`.
    #[error("value {value} at position {position} is outside 1..={m}")]
    ValueOutOfRange {
        /// 1-based position in the sequence.
        position: usize,
        /// The value found.
        value: usize,
        /// Number of categories.
        m: usize,
    },
    /// A proportion estimate needs at least one trial.
    #[error("cannot estimate proportions from an empty sequence")]
    EmptySequence,
    /// Invalid proportion vector.
    #[error("invalid proportion vector: {0}")]
    InvalidTheta(String),
    /// Count vector total differs from the number of trials.
    #[error("counts sum to {sum}, expected {k}")]
    CountMismatch {
        /// Sum of the counts.
        sum: u64,
        /// Expected number of trials.
        k: u64,
    },
    /// A joint pmf over sequences does not sum to one or has the wrong shape.
    #[error("joint pmf is invalid: {0}")]
    InvalidJoint(String),
}
