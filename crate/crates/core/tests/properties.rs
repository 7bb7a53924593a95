//! Property tests for the invariants of each module.
//!
//! Events are also modelled as plain `u64` outcome masks here so closure and
//! partition checks do not go through the library's own set operations.

use std::collections::BTreeSet;

use modalprob_core::correspondence::{
    bucket_decomposition, check_correspondence, impossible_significant_events,
    possibility_matches_significance, possibility_space_almost_sure, refine_to_correspondence,
    theorem3_oracle,
};
use modalprob_core::measure::{is_reduction, theorem1_oracle};
use modalprob_core::multinomial::{
    belief_closure, exchangeability_check, multinomial_pmf, BeliefState, CountVector,
    Exchangeability, JointPmf, ProportionVector, Proposition,
};
use modalprob_core::rational::{ratio, Rational};
use modalprob_core::{
    EnumerationCap, EventSet, OutcomeSpace, PossibilitySpace, ProbabilityMeasure, SigmaField,
};
use num_traits::{One, Zero};
use proptest::prelude::*;

const CAP: EnumerationCap = EnumerationCap::DEFAULT;

fn space(n: usize) -> OutcomeSpace {
    OutcomeSpace::new((1..=n).map(|i| format!("o{i}"))).unwrap()
}

fn mask_of(e: &EventSet) -> u64 {
    e.iter().fold(0, |m, i| m | 1 << i)
}

/// `(outcomes, generator masks)`
fn field_inputs() -> impl Strategy<Value = (usize, Vec<u64>)> {
    (1usize..=6).prop_flat_map(|n| (Just(n), prop::collection::vec(0u64..(1 << n), 0..4)))
}

fn build_field(n: usize, gens: &[u64]) -> SigmaField {
    let s = space(n);
    let gens: Vec<EventSet> = gens.iter().map(|&g| EventSet::from_mask(n, g)).collect();
    SigmaField::generate(&s, &gens).unwrap()
}

/// A field plus integer weights (some zero) normalised into a measure.
fn measure_inputs() -> impl Strategy<Value = (usize, Vec<u64>, Vec<u32>)> {
    field_inputs().prop_flat_map(|(n, gens)| {
        let atoms = build_field(n, &gens).atom_count();
        (
            Just(n),
            Just(gens),
            prop::collection::vec(prop_oneof![Just(0u32), 1u32..7], atoms)
                .prop_filter("some weight", |w| w.iter().any(|&x| x > 0)),
        )
    })
}

fn build_measure(n: usize, gens: &[u64], raw: &[u32]) -> ProbabilityMeasure {
    let field = build_field(n, gens);
    let total: u32 = raw.iter().sum();
    let weights = raw.iter().map(|&w| ratio(w.into(), total.into())).collect();
    ProbabilityMeasure::validate(field, weights).unwrap()
}

proptest! {
    #[test]
    fn field_is_closed_and_partitions((n, gens) in field_inputs()) {
        let field = build_field(n, &gens);
        let full = (1u64 << n) - 1;
        let atoms: Vec<u64> = field.atoms().iter().map(mask_of).collect();
        // atoms partition the space
        prop_assert_eq!(atoms.iter().fold(0, |acc, a| acc | a), full);
        for (i, a) in atoms.iter().enumerate() {
            prop_assert!(*a != 0);
            for b in &atoms[i + 1..] {
                prop_assert_eq!(a & b, 0);
            }
        }
        // closure under complement and union
        let events: BTreeSet<u64> = field.enumerate_events(CAP).unwrap().iter().map(mask_of).collect();
        prop_assert_eq!(events.len(), 1 << atoms.len());
        prop_assert!(events.contains(&0) && events.contains(&full));
        for &e in &events {
            prop_assert!(events.contains(&(full & !e)));
            for &f in &events {
                prop_assert!(events.contains(&(e | f)));
            }
        }
        // every generator is measurable
        for &g in &gens {
            prop_assert!(events.contains(&g));
        }
    }

    #[test]
    fn generated_field_is_coarsest((n, gens) in field_inputs()) {
        // Two outcomes share an atom iff no generator separates them.
        let field = build_field(n, &gens);
        for i in 0..n {
            for j in 0..n {
                let separated = gens.iter().any(|g| (g >> i & 1) != (g >> j & 1));
                prop_assert_eq!(field.atom_of(i) == field.atom_of(j), !separated);
            }
        }
    }

    #[test]
    fn generation_is_idempotent((n, gens) in field_inputs()) {
        let field = build_field(n, &gens);
        let again = SigmaField::generate(field.space(), field.atoms()).unwrap();
        prop_assert_eq!(again, field);
    }

    #[test]
    fn finite_additivity_and_monotonicity((n, gens, raw) in measure_inputs()) {
        let m = build_measure(n, &gens, &raw);
        let events = m.field().enumerate_events(CAP).unwrap();
        for a in &events {
            for b in &events {
                let pa = m.prob(a).unwrap();
                let pb = m.prob(b).unwrap();
                if a.is_disjoint(b) {
                    prop_assert_eq!(m.prob(&a.union(b)).unwrap(), &pa + &pb);
                }
                if a.is_subset(b) {
                    prop_assert!(pa <= pb);
                }
            }
        }
    }

    #[test]
    fn conditioning_yields_a_measure((n, gens, raw) in measure_inputs(), pick in any::<u64>()) {
        let m = build_measure(n, &gens, &raw);
        let events = m.field().enumerate_events(CAP).unwrap();
        let significant: Vec<&EventSet> =
            events.iter().filter(|e| !m.prob(e).unwrap().is_zero()).collect();
        let s0 = significant[(pick % significant.len() as u64) as usize];
        let c = m.condition(s0).unwrap();
        let revalidated = ProbabilityMeasure::validate(c.field().clone(), c.weights().to_vec());
        prop_assert!(revalidated.is_ok());
        prop_assert!(c.prob(&c.space().full()).unwrap().is_one());
        prop_assert_eq!(c.space().len(), s0.len());
    }

    #[test]
    fn reduction_clauses_never_mix((n, gens, raw) in measure_inputs()) {
        let m = build_measure(n, &gens, &raw);
        for s0 in m.field().enumerate_events(CAP).unwrap() {
            if m.prob(&s0).unwrap().is_zero() {
                prop_assert!(theorem1_oracle(&m, &s0, CAP).is_err());
                continue;
            }
            let report = theorem1_oracle(&m, &s0, CAP).unwrap();
            prop_assert!(report.consistent(), "{:?}", report);
        }
    }

    #[test]
    fn possibility_laws(n in 1usize..=5, w in any::<u64>()) {
        let s = space(n);
        let full = (1u64 << n) - 1;
        let w = PossibilitySpace::new(s.clone(), EventSet::from_mask(n, w & full)).unwrap();
        for a in 0..=full {
            let ea = EventSet::from_mask(n, a);
            let ca = w.classify_modal(&ea);
            let cc = w.classify_modal(&ea.complement());
            prop_assert_eq!(ca.certain, cc.impossible());
            prop_assert_eq!(ca.possible, !cc.certain);
            prop_assert_eq!(w.conditional_possibility(&ea, &s.full()), w.possibility(&ea));
            for b in 0..=full {
                let eb = EventSet::from_mask(n, b);
                let union = w.possibility(&ea.union(&eb));
                prop_assert_eq!(union, w.possibility(&ea).max(w.possibility(&eb)));
                if a & !b == 0 {
                    prop_assert!(w.possibility(&ea) <= w.possibility(&eb));
                }
                let cond = w.conditional_possibility(&ea, &eb);
                prop_assert!(cond <= w.possibility(&ea) && cond <= w.possibility(&eb));
            }
        }
    }

    #[test]
    fn axiom_forms_agree((n, gens, raw) in measure_inputs(), wmask in any::<u64>()) {
        let m = build_measure(n, &gens, &raw);
        // W as a union of atoms picked by `wmask`
        let w_event = m.field().union_of_mask(wmask & ((1 << m.field().atom_count()) - 1));
        let w = PossibilitySpace::new(m.space().clone(), w_event).unwrap();
        let sure = possibility_space_almost_sure(&w, &m).unwrap();
        let (_, count) = impossible_significant_events(&w, &m, CAP).unwrap();
        prop_assert_eq!(sure, count == 0);
        let report = check_correspondence(&w, &m, CAP).unwrap();
        prop_assert_eq!(report.holds, report.witnesses.is_empty());
    }

    #[test]
    fn consequences_hold_whenever_axiom_does((n, gens, raw) in measure_inputs(), wmask in any::<u64>()) {
        let m = build_measure(n, &gens, &raw);
        let full = (1u64 << n) - 1;
        let w = PossibilitySpace::new(m.space().clone(), EventSet::from_mask(n, wmask & full)).unwrap();
        let report = theorem3_oracle(&w, &m, CAP).unwrap();
        prop_assert_eq!(report.axiom.holds, report.passed());
    }

    #[test]
    fn bucket_bound((n, gens, raw) in measure_inputs()) {
        let m = build_measure(n, &gens, &raw);
        let d = bucket_decomposition(&m, m.field().atoms()).unwrap();
        let significant = m.weights().iter().filter(|w| !w.is_zero()).count();
        prop_assert_eq!(d.significant_count(), significant);
        for (k, cells) in &d.buckets {
            prop_assert!(num_bigint::BigUint::from(cells.len()) <= *k);
        }
    }

    #[test]
    fn refinement_post_state((n, gens, raw) in measure_inputs(), extra in any::<u64>()) {
        let m = build_measure(n, &gens, &raw);
        // W covers the support plus an arbitrary set of null atoms
        let atoms = m.field().atom_count();
        let support = m.significant_atom_mask();
        let w_event = m.field().union_of_mask((support | extra) & ((1 << atoms) - 1));
        let w = PossibilitySpace::new(m.space().clone(), w_event).unwrap();
        let refined = refine_to_correspondence(&w, &m, CAP).unwrap();
        let eq = possibility_matches_significance(&refined.possibility, &refined.measure, CAP).unwrap();
        prop_assert!(eq.passed());
        prop_assert!(is_reduction(&refined.measure, &m, CAP).unwrap().is_reduction());
        prop_assert!(ProbabilityMeasure::validate(
            refined.measure.field().clone(),
            refined.measure.weights().to_vec()
        ).is_ok());
    }

    #[test]
    fn iid_is_exchangeable(raw in prop::collection::vec(0u32..4, 1..4), k in 1usize..5) {
        prop_assume!(raw.iter().any(|&x| x > 0));
        let total: u32 = raw.iter().sum();
        let theta = ProportionVector::new(raw.iter().map(|&x| ratio(x.into(), total.into())).collect()).unwrap();
        let joint = JointPmf::iid(&theta, k, CAP).unwrap();
        prop_assert_eq!(exchangeability_check(&joint), Exchangeability::Exchangeable);
    }

    #[test]
    fn pmf_matches_sequence_aggregation(raw in prop::collection::vec(0u32..4, 1..4), k in 0usize..5) {
        prop_assume!(raw.iter().any(|&x| x > 0));
        let m = raw.len();
        let total: u32 = raw.iter().sum();
        let theta: Vec<Rational> = raw.iter().map(|&x| ratio(x.into(), total.into())).collect();
        let tv = ProportionVector::new(theta.clone()).unwrap();
        // brute force: walk every sequence
        let mut agg: std::collections::BTreeMap<Vec<u64>, Rational> = Default::default();
        for idx in 0..m.pow(k as u32) {
            let mut counts = vec![0u64; m];
            let mut p = Rational::one();
            let mut rest = idx;
            for _ in 0..k {
                counts[rest % m] += 1;
                p *= &theta[rest % m];
                rest /= m;
            }
            *agg.entry(counts).or_insert_with(Rational::zero) += p;
        }
        let mut sum = Rational::zero();
        for (counts, p) in agg {
            let pmf = multinomial_pmf(&CountVector { counts }, k as u64, &tv).unwrap();
            prop_assert_eq!(&pmf, &p);
            sum += pmf;
        }
        prop_assert!(sum.is_one());
    }

    #[test]
    fn closure_is_idempotent_and_monotone(bits in 0u8..64, more in 0u8..64, exch in any::<bool>()) {
        let props = |b: u8| Proposition::ALL.into_iter().enumerate().filter(move |(i, _)| b >> i & 1 == 1).map(|(_, p)| p);
        let state = BeliefState::new(props(bits), exch);
        let closed = belief_closure(&state);
        let again = belief_closure(&closed.state);
        prop_assert_eq!(&again.state, &closed.state);
        prop_assert!(again.trace.is_empty());

        let bigger = BeliefState::new(props(bits | more), exch);
        let closed_bigger = belief_closure(&bigger);
        prop_assert!(closed.state.propositions.is_subset(&closed_bigger.state.propositions));
    }
}
