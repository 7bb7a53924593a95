//! Finite probability spaces paired with all-or-nothing possibility.
//!
//! The crate models a sample space of labelled outcomes, sigma-fields given
//! by their atoms, exact rational probability measures, and a possibility
//! space `W` of outcomes not known to be false. On top of that it provides
//! the checks relating the two notions: the axiom of correspondence
//! (impossible events are insignificant), the bucket decomposition that
//! bounds how many cells of a partition can be significant, and the
//! refinement that makes possibility and significance coincide.
//!
//! The [`multinomial`] module covers repeated categorical trials: count
//! vectors, prefix proportion estimates, the exact multinomial pmf,
//! exchangeability checks, a small belief-implication engine and a seeded
//! simulator.
//!
//! Everything is `no_std` with `alloc`; the `std` feature only forwards to
//! the dependencies.
#![cfg_attr(not(any(feature = "std", test)), no_std)]
#![deny(missing_docs)]

extern crate alloc;

pub mod correspondence;
pub mod error;
pub mod event;
pub mod measure;
pub mod multinomial;
pub mod possibility;
pub mod rational;

pub use correspondence::{
    bucket_decomposition, check_correspondence, desideratum1_demo, refine_to_correspondence,
    theorem3_oracle, AxiomForm, BucketDecomposition, CorrespondenceReport, RefinedSpace,
};
pub use error::Error;
pub use event::{EnumerationCap, EventSet, OutcomeSpace, SigmaField};
pub use measure::{ProbabilityMeasure, SignificanceClass};
pub use possibility::{ModalClass, PossibilitySpace};
pub use rational::Rational;

/// Convenience alias used throughout the crate.
pub type Result<T, E = Error> = core::result::Result<T, E>;
