//! Outcome spaces, events and sigma-fields described by their atoms.
//!
//! A [`SigmaField`] over a finite space is determined by the partition of the
//! space into its atoms: the measurable events are exactly the unions of
//! atoms (including the empty union). Atoms are kept in order of their first
//! outcome, so every report and enumeration follows declaration order.

use alloc::collections::BTreeMap;
use alloc::string::{String, ToString};
use alloc::vec::Vec;
use core::fmt;

use fixedbitset::FixedBitSet;

use crate::{Error, Result};

/// The sample space: a non-empty list of distinct outcome labels.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct OutcomeSpace {
    labels: Vec<String>,
    index: BTreeMap<String, usize>,
}

impl OutcomeSpace {
    /// Builds a space from labels in declaration order.
    pub fn new<I, S>(labels: I) -> Result<Self>
    where
        I: IntoIterator<Item = S>,
        S: Into<String>,
    {
        let labels: Vec<String> = labels.into_iter().map(Into::into).collect();
        if labels.is_empty() {
            return Err(Error::EmptySpace);
        }
        let mut index = BTreeMap::new();
        for (i, label) in labels.iter().enumerate() {
            if index.insert(label.clone(), i).is_some() {
                return Err(Error::DuplicateOutcome(label.clone()));
            }
        }
        Ok(Self { labels, index })
    }

    /// Number of outcomes.
    pub fn len(&self) -> usize {
        self.labels.len()
    }

    /// Always false; spaces are non-empty by construction.
    pub fn is_empty(&self) -> bool {
        false
    }

    /// Labels in declaration order.
    pub fn labels(&self) -> &[String] {
        &self.labels
    }

    /// Label of outcome `i`.
    pub fn label(&self, i: usize) -> &str {
        &self.labels[i]
    }

    /// Index of a label, if declared.
    pub fn index_of(&self, label: &str) -> Option<usize> {
        self.index.get(label).copied()
    }

    /// The empty event.
    pub fn empty(&self) -> EventSet {
        EventSet::empty(self.len())
    }

    /// The whole space as an event.
    pub fn full(&self) -> EventSet {
        EventSet::full(self.len())
    }

    /// Event from labels; unknown labels are an error naming the label.
    pub fn event<I, S>(&self, labels: I) -> Result<EventSet>
    where
        I: IntoIterator<Item = S>,
        S: AsRef<str>,
    {
        let mut event = self.empty();
        for label in labels {
            let label = label.as_ref();
            let i = self
                .index_of(label)
                .ok_or_else(|| Error::UnknownOutcome(label.to_string()))?;
            event.insert(i);
        }
        Ok(event)
    }

    /// Renders an event as `{a,b}` in declaration order.
    pub fn show(&self, event: &EventSet) -> String {
        let mut out = String::from("{");
        for (n, i) in event.iter().enumerate() {
            if n > 0 {
                out.push(',');
            }
            out.push_str(&self.labels[i]);
        }
        out.push('}');
        out
    }

    /// Checks that `event` was built over a space of this size.
    pub fn check(&self, event: &EventSet) -> Result<()> {
        if event.universe() != self.len() {
            return Err(Error::SpaceMismatch {
                expected: self.len(),
                found: event.universe(),
            });
        }
        Ok(())
    }
}

/// A subset of an [`OutcomeSpace`], stored as a bitset over outcome indices.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct EventSet {
    bits: FixedBitSet,
}

impl EventSet {
    /// Empty event over a space of `universe` outcomes.
    pub fn empty(universe: usize) -> Self {
        Self {
            bits: FixedBitSet::with_capacity(universe),
        }
    }

    /// Every outcome of a space of `universe` outcomes.
    pub fn full(universe: usize) -> Self {
        let mut bits = FixedBitSet::with_capacity(universe);
        bits.insert_range(..);
        Self { bits }
    }

    /// Event from outcome indices. Panics if an index is out of range.
    pub fn from_indices(universe: usize, indices: impl IntoIterator<Item = usize>) -> Self {
        let mut event = Self::empty(universe);
        for i in indices {
            event.insert(i);
        }
        event
    }

    /// Event from the low `universe` bits of `mask`.
    pub fn from_mask(universe: usize, mask: u64) -> Self {
        Self::from_indices(
            universe,
            (0..universe.min(64)).filter(|i| mask >> i & 1 == 1),
        )
    }

    /// Size of the underlying space.
    pub fn universe(&self) -> usize {
        self.bits.len()
    }

    /// Adds outcome `i`.
    pub fn insert(&mut self, i: usize) {
        self.bits.insert(i);
    }

    /// Membership of outcome `i`.
    pub fn contains(&self, i: usize) -> bool {
        self.bits.contains(i)
    }

    /// Number of outcomes in the event.
    pub fn len(&self) -> usize {
        self.bits.count_ones(..)
    }

    /// True for the empty event.
    pub fn is_empty(&self) -> bool {
        self.bits.is_clear()
    }

    /// Outcome indices in increasing order.
    pub fn iter(&self) -> impl Iterator<Item = usize> + '_ {
        self.bits.ones()
    }

    /// Set union.
    pub fn union(&self, other: &Self) -> Self {
        let mut bits = self.bits.clone();
        bits.union_with(&other.bits);
        Self { bits }
    }

    /// Set intersection.
    pub fn intersection(&self, other: &Self) -> Self {
        let mut bits = self.bits.clone();
        bits.intersect_with(&other.bits);
        Self { bits }
    }

    /// Set difference `self - other`.
    pub fn difference(&self, other: &Self) -> Self {
        let mut bits = self.bits.clone();
        bits.difference_with(&other.bits);
        Self { bits }
    }

    /// Complement within the universe.
    pub fn complement(&self) -> Self {
        let mut bits = self.bits.clone();
        bits.toggle_range(..);
        Self { bits }
    }

    /// `self ⊆ other`.
    pub fn is_subset(&self, other: &Self) -> bool {
        self.bits.is_subset(&other.bits)
    }

    /// No common outcome.
    pub fn is_disjoint(&self, other: &Self) -> bool {
        self.bits.is_disjoint(&other.bits)
    }

    /// Some common outcome.
    pub fn intersects(&self, other: &Self) -> bool {
        !self.is_disjoint(other)
    }
}

impl fmt::Debug for EventSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_set().entries(self.iter()).finish()
    }
}

/// Upper bound on the atom count for exhaustive enumeration.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct EnumerationCap(usize);

impl EnumerationCap {
    /// Default cap of 20 atoms (about a million events).
    pub const DEFAULT: Self = Self(20);
    /// Largest accepted cap; enumeration indexes events by `u64` masks.
    pub const MAX: usize = 30;

    /// A cap between 1 and [`EnumerationCap::MAX`].
    pub fn new(atoms: usize) -> Option<Self> {
        (1..=Self::MAX).contains(&atoms).then_some(Self(atoms))
    }

    /// The cap as an atom count.
    pub fn get(self) -> usize {
        self.0
    }
}

impl Default for EnumerationCap {
    fn default() -> Self {
        Self::DEFAULT
    }
}

/// A sigma-field over a finite space, represented by its atoms.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SigmaField {
    space: OutcomeSpace,
    atoms: Vec<EventSet>,
    atom_of: Vec<usize>,
}

impl SigmaField {
    /// Coarsest field containing every generator.
    ///
    /// Outcomes are grouped by the set of generators they belong to; each group
    /// is one atom.
    pub fn generate(space: &OutcomeSpace, generators: &[EventSet]) -> Result<Self> {
        for g in generators {
            space.check(g)?;
        }
        let mut groups: BTreeMap<Vec<bool>, usize> = BTreeMap::new();
        let mut atoms: Vec<EventSet> = Vec::new();
        let mut atom_of = Vec::with_capacity(space.len());
        for outcome in 0..space.len() {
            let signature: Vec<bool> = generators.iter().map(|g| g.contains(outcome)).collect();
            let next = atoms.len();
            let atom = *groups.entry(signature).or_insert(next);
            if atom == next {
                atoms.push(space.empty());
            }
            atoms[atom].insert(outcome);
            atom_of.push(atom);
        }
        Ok(Self {
            space: space.clone(),
            atoms,
            atom_of,
        })
    }

    /// Field whose atoms are the given labelled groups; unknown labels are
    /// reported by name. Overlapping or non-covering groups are refined by
    /// [`SigmaField::generate`].
    pub fn generate_from_labels<S: AsRef<str>>(
        space: &OutcomeSpace,
        generators: &[Vec<S>],
    ) -> Result<Self> {
        let events = generators
            .iter()
            .map(|g| space.event(g.iter().map(AsRef::as_ref)))
            .collect::<Result<Vec<_>>>()?;
        Self::generate(space, &events)
    }

    /// The discrete field: every outcome is an atom.
    pub fn discrete(space: &OutcomeSpace) -> Self {
        let atoms = (0..space.len())
            .map(|i| EventSet::from_indices(space.len(), [i]))
            .collect();
        Self {
            space: space.clone(),
            atoms,
            atom_of: (0..space.len()).collect(),
        }
    }

    /// The underlying sample space.
    pub fn space(&self) -> &OutcomeSpace {
        &self.space
    }

    /// Atoms, ordered by their first outcome.
    pub fn atoms(&self) -> &[EventSet] {
        &self.atoms
    }

    /// Number of atoms.
    pub fn atom_count(&self) -> usize {
        self.atoms.len()
    }

    /// Index of the atom containing outcome `i`.
    pub fn atom_of(&self, outcome: usize) -> usize {
        self.atom_of[outcome]
    }

    /// True iff `e` is a union of atoms. Events over another space are not members.
    pub fn contains(&self, e: &EventSet) -> bool {
        if e.universe() != self.space.len() {
            return false;
        }
        self.atoms
            .iter()
            .all(|atom| atom.is_subset(e) || atom.is_disjoint(e))
    }

    /// Indices of the atoms making up a measurable event, or `None`.
    pub fn decompose(&self, e: &EventSet) -> Option<Vec<usize>> {
        if !self.contains(e) {
            return None;
        }
        let mut out: Vec<usize> = e.iter().map(|i| self.atom_of[i]).collect();
        out.sort_unstable();
        out.dedup();
        Some(out)
    }

    /// Union of the atoms whose bits are set in `mask`.
    pub fn union_of_mask(&self, mask: u64) -> EventSet {
        let mut event = self.space.empty();
        for (a, atom) in self.atoms.iter().enumerate().take(64) {
            if mask >> a & 1 == 1 {
                event = event.union(atom);
            }
        }
        event
    }

    /// Union of the listed atoms.
    pub fn union_of(&self, atoms: impl IntoIterator<Item = usize>) -> EventSet {
        atoms
            .into_iter()
            .fold(self.space.empty(), |acc, a| acc.union(&self.atoms[a]))
    }

    /// Fails when the atom count exceeds `cap`.
    pub fn check_cap(&self, cap: EnumerationCap) -> Result<()> {
        if self.atoms.len() > cap.get() {
            return Err(Error::EnumerationCap {
                atoms: self.atoms.len(),
                cap: cap.get(),
            });
        }
        Ok(())
    }

    /// Lazily yields `(mask, event)` for all `2^atoms` measurable events.
    ///
    /// Bit `a` of the mask selects atom `a`; masks run from 0 upwards, so
    /// the empty event comes first and the whole space last.
    pub fn events(
        &self,
        cap: EnumerationCap,
    ) -> Result<impl Iterator<Item = (u64, EventSet)> + '_> {
        self.check_cap(cap)?;
        let total = 1u64 << self.atoms.len();
        Ok((0..total).map(move |mask| (mask, self.union_of_mask(mask))))
    }

    /// All measurable events in mask order.
    pub fn enumerate_events(&self, cap: EnumerationCap) -> Result<Vec<EventSet>> {
        Ok(self.events(cap)?.map(|(_, e)| e).collect())
    }

    /// Renders the atom list as `{a},{b,c}`.
    pub fn show_atoms(&self) -> String {
        let mut out = String::new();
        for (n, atom) in self.atoms.iter().enumerate() {
            if n > 0 {
                out.push(' ');
            }
            out.push_str(&self.space.show(atom));
        }
        out
    }
}
