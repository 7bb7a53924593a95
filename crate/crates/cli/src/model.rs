//! Turns a parsed spec file into core objects.

use modalprob_core::measure::ViolationReport;
use modalprob_core::multinomial::{BeliefState, ProportionVector};
use modalprob_core::{
    Error, EventSet, OutcomeSpace, PossibilitySpace, ProbabilityMeasure, Rational, SigmaField,
};

use crate::spec::{MultinomialBlock, SpecFile};

/// The probability side of a spec: space, field and the raw atom weights.
#[derive(Debug, Clone)]
pub struct Model {
    /// Declared outcomes.
    pub space: OutcomeSpace,
    /// Field whose atoms are the measure cells.
    pub field: SigmaField,
    /// Weight of each atom, in atom order.
    pub weights: Vec<Rational>,
    /// Measure-block key naming each atom, in atom order.
    pub atom_names: Vec<String>,
}

/// Why a command could not get what it needs from the spec.
#[derive(Debug, Clone, PartialEq, thiserror::Error)]
pub enum ModelError {
    /// A required block is absent.
    #[error("spec has no `{0}:` block")]
    Missing(&'static str),
    /// Neither an event name nor an outcome label.
    #[error("unknown event `{0}` (not a named event or outcome label)")]
    UnknownEvent(String),
    /// Core rejected the construction.
    #[error("{0}")]
    Core(#[from] Error),
}

impl Model {
    /// Builds space, field and weights. Fails only on missing blocks.
    pub fn build(spec: &SpecFile) -> Result<Self, ModelError> {
        let outcomes = spec
            .outcomes
            .as_ref()
            .ok_or(ModelError::Missing("outcomes"))?;
        let cells = spec
            .measure
            .as_ref()
            .ok_or(ModelError::Missing("measure"))?;
        let space = OutcomeSpace::new(outcomes.iter())?;
        let mut generators = Vec::with_capacity(cells.len());
        for (key, _) in cells {
            let members: Vec<&str> = match spec.event(key) {
                Some(m) => m.iter().map(String::as_str).collect(),
                None => vec![key.as_str()],
            };
            generators.push(space.event(members)?);
        }
        let field = SigmaField::generate(&space, &generators)?;
        // Cells partition the space, so each atom is exactly one cell.
        let mut weights = Vec::with_capacity(cells.len());
        let mut atom_names = Vec::with_capacity(cells.len());
        for atom in field.atoms() {
            let i = generators
                .iter()
                .position(|g| g == atom)
                .expect("cells are the atoms");
            weights.push(cells[i].1.clone());
            atom_names.push(cells[i].0.clone());
        }
        Ok(Self {
            space,
            field,
            weights,
            atom_names,
        })
    }

    /// Runs the axiom checks.
    pub fn measure(&self) -> Result<ProbabilityMeasure, ViolationReport> {
        match ProbabilityMeasure::validate(self.field.clone(), self.weights.clone()) {
            Ok(m) => Ok(m),
            Err(Error::AxiomViolation(r)) => Err(r),
            Err(e) => unreachable!("weights match the atoms: {e}"),
        }
    }

    /// Resolves a named event or a single outcome label.
    pub fn event(&self, spec: &SpecFile, name: &str) -> Result<EventSet, ModelError> {
        if let Some(members) = spec.event(name) {
            return Ok(self.space.event(members.iter())?);
        }
        if self.space.index_of(name).is_some() {
            return Ok(self.space.event([name])?);
        }
        Err(ModelError::UnknownEvent(name.to_string()))
    }
}

/// Builds `W`. A spec without a `possible:` block treats every outcome as possible.
pub fn possibility(spec: &SpecFile, space: &OutcomeSpace) -> Result<PossibilitySpace, ModelError> {
    match &spec.possible {
        Some(labels) => Ok(PossibilitySpace::new(
            space.clone(),
            space.event(labels.iter())?,
        )?),
        None => Ok(PossibilitySpace::everything(space.clone())),
    }
}

/// Validated proportion vector of the multinomial block.
pub fn theta(block: &MultinomialBlock) -> Result<ProportionVector, Error> {
    ProportionVector::new(block.theta.clone())
}

/// Belief state of the beliefs block.
pub fn beliefs(spec: &SpecFile) -> Result<(BeliefState, String), ModelError> {
    let b = spec
        .beliefs
        .as_ref()
        .ok_or(ModelError::Missing("beliefs"))?;
    let state = BeliefState::new(b.propositions.iter().copied(), b.exchangeable);
    Ok((state, b.category.clone().unwrap_or_else(|| "a".to_string())))
}
