//! Relating possibility and probability.
//!
//! The axiom of correspondence says every impossible event is insignificant.
//! When `W` is a union of atoms this is the same as `P(W) = 1`; otherwise it
//! has to be checked over every measurable event. Under the axiom, certain
//! events are almost sure and significant events are possible, but not
//! conversely: a possible outcome may carry zero weight. The refinement in
//! [`refine_to_correspondence`] removes those outcomes by conditioning on the
//! union of the significant atoms.
//!
//! [`bucket_decomposition`] sorts the cells of a partition into the
//! intervals `(1/(k+1), 1/k]`. Additivity caps bucket `k` at `k` cells, which
//! in a finite space is the whole content of the countability argument: only
//! countably many cells of any partition can be significant.

use alloc::collections::BTreeMap;
use alloc::vec::Vec;
use core::fmt;

use num_bigint::BigUint;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use crate::event::{EnumerationCap, EventSet, OutcomeSpace};
use crate::measure::{is_reduction, ProbabilityMeasure, ReductionWitness, SignificanceClass};
use crate::possibility::PossibilitySpace;
use crate::rational::Rational;
use crate::{Error, Result};

/// Longest witness list kept in a report; the total is always counted.
pub const WITNESS_LIMIT: usize = 10;

/// Which statement of the axiom decided the report.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum AxiomForm {
    /// `W` is measurable and the axiom reads `P(W) = 1`.
    MeasurableW,
    /// `W` is not a union of atoms; every impossible event was checked.
    Universal,
}

impl fmt::Display for AxiomForm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Self::MeasurableW => "measurable-W (P(W) = 1)",
            Self::Universal => "universal (impossible => insignificant)",
        })
    }
}

/// Result of checking the axiom of correspondence.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CorrespondenceReport {
    /// The axiom holds.
    pub holds: bool,
    /// Statement used to decide `holds`.
    pub form_used: AxiomForm,
    /// First impossible-but-significant events in enumeration order.
    pub witnesses: Vec<EventSet>,
    /// Total number of impossible-but-significant events.
    pub witness_count: u64,
}

/// Impossible events with positive probability, in enumeration order.
///
/// Returns at most [`WITNESS_LIMIT`] events plus the full count.
pub fn impossible_significant_events(
    w: &PossibilitySpace,
    measure: &ProbabilityMeasure,
    cap: EnumerationCap,
) -> Result<(Vec<EventSet>, u64)> {
    check_same_space(w.space(), measure.space())?;
    let mut witnesses = Vec::new();
    let mut count = 0u64;
    for (mask, event) in measure.field().events(cap)? {
        if w.possibility(&event) == 0 && !measure.prob_of_mask(mask).is_zero() {
            count += 1;
            if witnesses.len() < WITNESS_LIMIT {
                witnesses.push(event);
            }
        }
    }
    Ok((witnesses, count))
}

/// `P(W) == 1`, or `None` when `W` is not a union of atoms.
pub fn possibility_space_almost_sure(
    w: &PossibilitySpace,
    measure: &ProbabilityMeasure,
) -> Option<bool> {
    measure.prob(w.possible()).ok().map(|p| p.is_one())
}

/// Checks the axiom of correspondence, preferring the `P(W) = 1` statement
/// when `W` is measurable. Witnesses are listed either way.
pub fn check_correspondence(
    w: &PossibilitySpace,
    measure: &ProbabilityMeasure,
    cap: EnumerationCap,
) -> Result<CorrespondenceReport> {
    let (witnesses, witness_count) = impossible_significant_events(w, measure, cap)?;
    let (holds, form_used) = match possibility_space_almost_sure(w, measure) {
        Some(sure) => (sure, AxiomForm::MeasurableW),
        None => (witness_count == 0, AxiomForm::Universal),
    };
    debug_assert_eq!(holds, witness_count == 0);
    Ok(CorrespondenceReport {
        holds,
        form_used,
        witnesses,
        witness_count,
    })
}

/// Pass/fail of one clause checked over every measurable event.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ClauseCheck {
    /// Events to which the clause applied.
    pub checked: u64,
    /// First counterexamples.
    pub failures: Vec<EventSet>,
    /// Number of counterexamples.
    pub failure_count: u64,
}

impl ClauseCheck {
    fn new() -> Self {
        Self {
            checked: 0,
            failures: Vec::new(),
            failure_count: 0,
        }
    }

    fn record(&mut self, applies: bool, ok: bool, event: &EventSet) {
        if !applies {
            return;
        }
        self.checked += 1;
        if !ok {
            self.failure_count += 1;
            if self.failures.len() < WITNESS_LIMIT {
                self.failures.push(event.clone());
            }
        }
    }

    /// No counterexample.
    pub fn passed(&self) -> bool {
        self.failure_count == 0
    }
}

/// Consequences of the axiom: certain events are almost sure, significant events possible.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ConsequenceReport {
    /// The axiom check the oracle is conditional on.
    pub axiom: CorrespondenceReport,
    /// Clauses (a) and (b), or `None` when the axiom fails.
    pub clauses: Option<(ClauseCheck, ClauseCheck)>,
}

impl ConsequenceReport {
    /// The axiom holds and both clauses pass.
    pub fn passed(&self) -> bool {
        matches!(&self.clauses, Some((a, b)) if a.passed() && b.passed())
    }
}

/// Exhaustively checks that certain events are almost sure and significant
/// events are possible, provided the axiom holds.
pub fn theorem3_oracle(
    w: &PossibilitySpace,
    measure: &ProbabilityMeasure,
    cap: EnumerationCap,
) -> Result<ConsequenceReport> {
    let axiom = check_correspondence(w, measure, cap)?;
    if !axiom.holds {
        return Ok(ConsequenceReport {
            axiom,
            clauses: None,
        });
    }
    let mut certain_sure = ClauseCheck::new();
    let mut significant_possible = ClauseCheck::new();
    for (mask, event) in measure.field().events(cap)? {
        let modal = w.classify_modal(&event);
        let class = SignificanceClass::of(&measure.prob_of_mask(mask));
        certain_sure.record(modal.certain, class.is_almost_sure(), &event);
        significant_possible.record(class.is_significant(), modal.possible, &event);
    }
    Ok(ConsequenceReport {
        axiom,
        clauses: Some((certain_sure, significant_possible)),
    })
}

/// Partition cells grouped by probability into the intervals `(1/(k+1), 1/k]`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BucketDecomposition {
    /// Bucket index `k` to the indices of the cells it holds, in input order.
    pub buckets: BTreeMap<BigUint, Vec<usize>>,
    /// Cells with probability zero.
    pub zero_cells: Vec<usize>,
    /// Probability of each cell, in input order.
    pub cell_probs: Vec<Rational>,
}

impl BucketDecomposition {
    /// The bucket holding `cell`, or `None` for a zero cell.
    pub fn bucket_of(&self, cell: usize) -> Option<&BigUint> {
        self.buckets
            .iter()
            .find(|(_, cells)| cells.contains(&cell))
            .map(|(k, _)| k)
    }

    /// Number of significant cells.
    pub fn significant_count(&self) -> usize {
        self.buckets.values().map(Vec::len).sum()
    }
}

/// The bucket index of a probability in `(0, 1]`: the `k` with
/// `1/(k+1) < p <= 1/k`, i.e. `floor(1/p)`.
pub fn bucket_index(p: &Rational) -> Option<BigUint> {
    if !p.is_positive() || *p > Rational::one() {
        return None;
    }
    p.denom().div_floor(p.numer()).to_biguint()
}

/// Sorts the cells of a measurable partition into probability buckets.
///
/// Fails if the cells are empty, overlap, miss an outcome or are not
/// measurable, and if any bucket `k` ends up with more than `k` cells (which
/// would contradict norming).
pub fn bucket_decomposition(
    measure: &ProbabilityMeasure,
    partition: &[EventSet],
) -> Result<BucketDecomposition> {
    let space = measure.space();
    let mut covered = space.empty();
    let mut cell_probs = Vec::with_capacity(partition.len());
    for (i, cell) in partition.iter().enumerate() {
        space.check(cell)?;
        if cell.is_empty() {
            return Err(Error::NotAPartition(alloc::format!(
                "cell {} is empty",
                i + 1
            )));
        }
        if cell.intersects(&covered) {
            return Err(Error::NotAPartition(alloc::format!(
                "cell {} overlaps an earlier cell",
                space.show(cell)
            )));
        }
        covered = covered.union(cell);
        cell_probs.push(measure.prob(cell)?);
    }
    if covered != space.full() {
        return Err(Error::NotAPartition(alloc::format!(
            "outcomes {} are not covered",
            space.show(&covered.complement())
        )));
    }
    let mut buckets: BTreeMap<BigUint, Vec<usize>> = BTreeMap::new();
    let mut zero_cells = Vec::new();
    for (i, p) in cell_probs.iter().enumerate() {
        match bucket_index(p) {
            Some(k) => buckets.entry(k).or_default().push(i),
            None => zero_cells.push(i),
        }
    }
    for (k, cells) in &buckets {
        if BigUint::from(cells.len()) > *k {
            return Err(Error::BucketOverflow {
                k: alloc::string::ToString::to_string(k),
                size: cells.len(),
            });
        }
    }
    Ok(BucketDecomposition {
        buckets,
        zero_cells,
        cell_probs,
    })
}

/// A reduced space in which possibility and significance coincide.
#[derive(Debug, Clone, PartialEq)]
pub struct RefinedSpace {
    /// Conditional measure on the union of the significant atoms.
    pub measure: ProbabilityMeasure,
    /// `W` restricted to the refined space.
    pub possibility: PossibilitySpace,
    /// Outcomes of the original space that were dropped.
    pub removed: EventSet,
}

/// Builds the reduction on the significant atoms.
///
/// Requires `W` to be a union of atoms and the axiom to hold. The refined
/// space is the union of the atoms with positive weight; since that union is
/// almost sure, conditioning on it leaves every retained probability
/// unchanged.
pub fn refine_to_correspondence(
    w: &PossibilitySpace,
    measure: &ProbabilityMeasure,
    cap: EnumerationCap,
) -> Result<RefinedSpace> {
    check_same_space(w.space(), measure.space())?;
    if !measure.field().contains(w.possible()) {
        return Err(Error::PossibilityNotMeasurable);
    }
    let axiom = check_correspondence(w, measure, cap)?;
    if !axiom.holds {
        return Err(Error::CorrespondenceFails {
            count: axiom.witness_count,
        });
    }
    let field = measure.field();
    let significant = (0..field.atom_count()).filter(|&a| !measure.atom_weight(a).is_zero());
    let support = field.union_of(significant);
    let refined = measure.condition(&support)?;
    let possibility = w.restrict(refined.space());
    Ok(RefinedSpace {
        measure: refined,
        possibility,
        removed: support.complement(),
    })
}

/// Result of comparing the modal and probabilistic dichotomies event by event.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct EquivalenceCheck {
    /// Events visited.
    pub events: u64,
    /// First event that is possible but insignificant, or significant but impossible.
    pub possible_vs_significant: Option<EventSet>,
    /// First event that is almost sure but uncertain, or certain but not almost sure.
    pub certain_vs_almost_sure: Option<EventSet>,
}

impl EquivalenceCheck {
    /// Both equivalences hold on every event.
    pub fn passed(&self) -> bool {
        self.possible_vs_significant.is_none() && self.certain_vs_almost_sure.is_none()
    }
}

/// Checks `possible ⇔ significant` and `certain ⇔ almost sure` over every
/// measurable event.
pub fn possibility_matches_significance(
    w: &PossibilitySpace,
    measure: &ProbabilityMeasure,
    cap: EnumerationCap,
) -> Result<EquivalenceCheck> {
    check_same_space(w.space(), measure.space())?;
    let mut check = EquivalenceCheck {
        events: 0,
        possible_vs_significant: None,
        certain_vs_almost_sure: None,
    };
    for (mask, event) in measure.field().events(cap)? {
        check.events += 1;
        let modal = w.classify_modal(&event);
        let class = SignificanceClass::of(&measure.prob_of_mask(mask));
        if modal.possible != class.is_significant() && check.possible_vs_significant.is_none() {
            check.possible_vs_significant = Some(event.clone());
        }
        if modal.certain != class.is_almost_sure() && check.certain_vs_almost_sure.is_none() {
            check.certain_vs_almost_sure = Some(event);
        }
    }
    Ok(check)
}

/// One attempted exclusion of outcomes from the sample space.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Exclusion {
    /// Outcomes removed.
    pub excluded: EventSet,
    /// The removed outcomes are all impossible.
    pub impossible: bool,
    /// Probability of the removed outcomes.
    pub prob: Rational,
    /// Conditioning on the rest gives a reduction.
    pub reduction: bool,
    /// Reduction witness when it is not one.
    pub witness: Option<ReductionWitness>,
}

/// Exclusion attempts showing impossible events can be dropped without
/// changing any retained probability.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ExclusionReport {
    /// Every measurable set of impossible outcomes, in enumeration order,
    /// followed by each single atom that contains a possible outcome.
    pub exclusions: Vec<Exclusion>,
}

impl ExclusionReport {
    /// Every impossible exclusion is a reduction.
    pub fn holds(&self) -> bool {
        self.exclusions
            .iter()
            .filter(|x| x.impossible)
            .all(|x| x.reduction)
    }
}

/// Tries excluding every measurable impossible set (conditioning on an
/// almost sure event containing `W`), plus each atom that meets `W` for
/// contrast, and checks which attempts are reductions.
pub fn desideratum1_demo(
    w: &PossibilitySpace,
    measure: &ProbabilityMeasure,
    cap: EnumerationCap,
) -> Result<ExclusionReport> {
    check_same_space(w.space(), measure.space())?;
    if !measure.field().contains(w.possible()) {
        return Err(Error::PossibilityNotMeasurable);
    }
    let axiom = check_correspondence(w, measure, cap)?;
    if !axiom.holds {
        return Err(Error::CorrespondenceFails {
            count: axiom.witness_count,
        });
    }
    let field = measure.field();
    field.check_cap(cap)?;
    let outside: u64 = (0..field.atom_count())
        .filter(|&a| field.atoms()[a].is_disjoint(w.possible()))
        .fold(0, |m, a| m | 1 << a);
    let mut exclusions = Vec::new();
    for (mask, excluded) in field.events(cap)? {
        if mask & !outside == 0 {
            exclusions.push(try_exclusion(w, measure, excluded, cap)?);
        }
    }
    for a in 0..field.atom_count() {
        if outside >> a & 1 == 0 {
            let excluded = field.atoms()[a].clone();
            if measure.prob(&excluded.complement())?.is_zero() {
                continue;
            }
            exclusions.push(try_exclusion(w, measure, excluded, cap)?);
        }
    }
    Ok(ExclusionReport { exclusions })
}

fn try_exclusion(
    w: &PossibilitySpace,
    measure: &ProbabilityMeasure,
    excluded: EventSet,
    cap: EnumerationCap,
) -> Result<Exclusion> {
    let kept = excluded.complement();
    let conditioned = measure.condition(&kept)?;
    let check = is_reduction(&conditioned, measure, cap)?;
    Ok(Exclusion {
        impossible: w.possibility(&excluded) == 0,
        prob: measure.prob(&excluded)?,
        reduction: check.is_reduction(),
        witness: check.witness,
        excluded,
    })
}

fn check_same_space(w: &OutcomeSpace, m: &OutcomeSpace) -> Result<()> {
    if w != m {
        return Err(Error::SpaceMismatch {
            expected: m.len(),
            found: w.len(),
        });
    }
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::event::SigmaField;
    use crate::rational::{int, ratio};
    use alloc::vec;
    use num_traits::ToPrimitive;

    const CAP: EnumerationCap = EnumerationCap::DEFAULT;

    fn space(n: usize) -> OutcomeSpace {
        OutcomeSpace::new((1..=n).map(|i| alloc::format!("s{i}"))).unwrap()
    }

    fn setup(weights: Vec<Rational>, possible: &[&str]) -> (PossibilitySpace, ProbabilityMeasure) {
        let s = space(weights.len());
        let m = ProbabilityMeasure::discrete(&s, weights).unwrap();
        let w = PossibilitySpace::new(s.clone(), s.event(possible).unwrap()).unwrap();
        (w, m)
    }

    #[test]
    fn full_w_satisfies_axiom() {
        let (w, m) = setup(vec![ratio(1, 3), ratio(2, 3)], &["s1", "s2"]);
        let r = check_correspondence(&w, &m, CAP).unwrap();
        assert!(r.holds);
        assert_eq!(r.form_used, AxiomForm::MeasurableW);
        assert!(r.witnesses.is_empty());
    }

    #[test]
    fn significant_impossible_outcome_is_witness() {
        let (w, m) = setup(vec![ratio(3, 4), ratio(1, 4)], &["s1"]);
        let r = check_correspondence(&w, &m, CAP).unwrap();
        assert!(!r.holds);
        assert_eq!(r.witnesses, vec![w.space().event(["s2"]).unwrap()]);
        assert_eq!(r.witness_count, 1);
    }

    #[test]
    fn null_impossible_outcome_is_fine() {
        let (w, m) = setup(vec![int(1), int(0)], &["s1"]);
        assert!(check_correspondence(&w, &m, CAP).unwrap().holds);
    }

    #[test]
    fn universal_form_for_non_measurable_w() {
        let s = space(3);
        let field = SigmaField::generate_from_labels(&s, &[vec!["s1", "s2"]]).unwrap();
        let m = ProbabilityMeasure::validate(field, vec![int(1), int(0)]).unwrap();
        // W = {s1} splits the atom {s1,s2}
        let w = PossibilitySpace::new(s.clone(), s.event(["s1"]).unwrap()).unwrap();
        let r = check_correspondence(&w, &m, CAP).unwrap();
        assert_eq!(r.form_used, AxiomForm::Universal);
        assert!(r.holds);

        let m = ProbabilityMeasure::validate(m.field().clone(), vec![ratio(1, 2), ratio(1, 2)])
            .unwrap();
        let r = check_correspondence(&w, &m, CAP).unwrap();
        assert!(!r.holds);
        assert_eq!(r.witnesses, vec![s.event(["s3"]).unwrap()]);
    }

    #[test]
    fn witness_list_is_capped() {
        // 12 impossible outcomes of weight 1/12: 4095 witnesses.
        let mut weights = vec![ratio(1, 12); 12];
        weights.push(int(0));
        let (w, m) = setup(weights, &["s13"]);
        let r = check_correspondence(&w, &m, CAP).unwrap();
        assert_eq!(r.witnesses.len(), WITNESS_LIMIT);
        assert_eq!(r.witness_count, 4095);
    }

    #[test]
    fn consequence_cases() {
        let (w, m) = setup(vec![ratio(1, 4), ratio(3, 4)], &["s1", "s2"]);
        assert!(theorem3_oracle(&w, &m, CAP).unwrap().passed());

        let (w, m) = setup(vec![ratio(1, 2), ratio(1, 2), int(0)], &["s1", "s2"]);
        let r = theorem3_oracle(&w, &m, CAP).unwrap();
        assert!(r.passed());
        let (a, b) = r.clauses.unwrap();
        assert_eq!(a.checked, 2); // {s1,s2} and S
        assert_eq!(b.checked, 6);

        let (w, m) = setup(vec![ratio(1, 2), ratio(1, 2)], &["s1"]);
        let r = theorem3_oracle(&w, &m, CAP).unwrap();
        assert!(r.clauses.is_none());
        assert!(!r.passed());
    }

    #[test]
    fn buckets_by_hand() {
        let (_, m) = setup(vec![ratio(1, 2), ratio(1, 3), ratio(1, 6)], &[]);
        let cells: Vec<EventSet> = m.field().atoms().to_vec();
        let d = bucket_decomposition(&m, &cells).unwrap();
        let keys: Vec<u64> = d.buckets.keys().map(|k| k.to_u64().unwrap()).collect();
        assert_eq!(keys, [2, 3, 6]);
        assert_eq!(d.bucket_of(0), Some(&BigUint::from(2u8)));
        assert!(d.zero_cells.is_empty());

        let (_, m) = setup(vec![int(1)], &[]);
        let d = bucket_decomposition(&m, m.field().atoms()).unwrap();
        assert_eq!(d.buckets[&BigUint::from(1u8)], vec![0]);

        let (_, m) = setup(vec![ratio(1, 4); 4], &[]);
        let d = bucket_decomposition(&m, m.field().atoms()).unwrap();
        assert_eq!(d.buckets[&BigUint::from(4u8)], vec![0, 1, 2, 3]);
    }

    #[test]
    fn zero_cells_are_separate() {
        let (_, m) = setup(vec![int(1), int(0)], &[]);
        let d = bucket_decomposition(&m, m.field().atoms()).unwrap();
        assert_eq!(d.zero_cells, vec![1]);
        assert_eq!(d.significant_count(), 1);
    }

    #[test]
    fn bucket_rejects_non_partitions() {
        let (_, m) = setup(vec![ratio(1, 2), ratio(1, 2), int(0)], &[]);
        let s = m.space().clone();
        let overlap = [
            s.event(["s1", "s2"]).unwrap(),
            s.event(["s2", "s3"]).unwrap(),
        ];
        assert!(matches!(
            bucket_decomposition(&m, &overlap),
            Err(Error::NotAPartition(_))
        ));
        let gap = [s.event(["s1"]).unwrap()];
        assert!(matches!(
            bucket_decomposition(&m, &gap),
            Err(Error::NotAPartition(_))
        ));
        let empty = [s.empty(), s.full()];
        assert!(matches!(
            bucket_decomposition(&m, &empty),
            Err(Error::NotAPartition(_))
        ));
    }

    #[test]
    fn bucket_index_matches_interval() {
        assert_eq!(bucket_index(&ratio(2, 5)), Some(BigUint::from(2u8)));
        assert_eq!(bucket_index(&ratio(1, 3)), Some(BigUint::from(3u8)));
        assert_eq!(bucket_index(&int(0)), None);
    }

    #[test]
    fn refinement_drops_null_atoms() {
        let (w, m) = setup(vec![ratio(1, 2), ratio(1, 2), int(0)], &["s1", "s2", "s3"]);
        let r = refine_to_correspondence(&w, &m, CAP).unwrap();
        assert_eq!(r.measure.space().labels(), ["s1", "s2"]);
        assert_eq!(r.measure.weights(), [ratio(1, 2), ratio(1, 2)]);
        assert_eq!(w.space().show(&r.removed), "{s3}");
        assert!(
            possibility_matches_significance(&r.possibility, &r.measure, CAP)
                .unwrap()
                .passed()
        );
        assert!(is_reduction(&r.measure, &m, CAP).unwrap().is_reduction());

        // the original space has a possible but insignificant event
        let before = possibility_matches_significance(&w, &m, CAP).unwrap();
        assert_eq!(
            before.possible_vs_significant,
            Some(w.space().event(["s3"]).unwrap())
        );
    }

    #[test]
    fn refinement_identity_and_point_mass() {
        let (w, m) = setup(vec![ratio(1, 3), ratio(2, 3)], &["s1", "s2"]);
        let r = refine_to_correspondence(&w, &m, CAP).unwrap();
        assert_eq!(r.measure, m);
        assert!(r.removed.is_empty());

        let (w, m) = setup(vec![int(1), int(0), int(0)], &["s1", "s2", "s3"]);
        let r = refine_to_correspondence(&w, &m, CAP).unwrap();
        assert_eq!(r.measure.field().atom_count(), 1);
        let full = r.measure.space().full();
        assert_eq!(r.measure.prob(&full).unwrap(), int(1));
        assert!(r.possibility.classify_modal(&full).certain);
    }

    #[test]
    fn refinement_refuses_without_axiom() {
        let (w, m) = setup(vec![ratio(1, 2), ratio(1, 2)], &["s1"]);
        assert_eq!(
            refine_to_correspondence(&w, &m, CAP).unwrap_err(),
            Error::CorrespondenceFails { count: 1 }
        );
        let s = space(2);
        let m = ProbabilityMeasure::validate(SigmaField::generate(&s, &[]).unwrap(), vec![int(1)])
            .unwrap();
        let w = PossibilitySpace::new(s.clone(), s.event(["s1"]).unwrap()).unwrap();
        assert_eq!(
            refine_to_correspondence(&w, &m, CAP).unwrap_err(),
            Error::PossibilityNotMeasurable
        );
    }

    #[test]
    fn exclusion_rows() {
        let (w, m) = setup(vec![ratio(1, 2), ratio(1, 2), int(0)], &["s1", "s2"]);
        let r = desideratum1_demo(&w, &m, CAP).unwrap();
        assert!(r.holds());
        let show: Vec<(alloc::string::String, bool, bool)> = r
            .exclusions
            .iter()
            .map(|x| (w.space().show(&x.excluded), x.impossible, x.reduction))
            .collect();
        assert_eq!(
            show,
            vec![
                ("{}".into(), true, true),
                ("{s3}".into(), true, true),
                ("{s1}".into(), false, false),
                ("{s2}".into(), false, false),
            ]
        );
        assert!(r.exclusions[2].witness.is_some());
    }
}
