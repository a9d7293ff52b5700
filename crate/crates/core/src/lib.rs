//! Exact machine-teaching complexity for finite hypothesis classes.
//!
//! The crate models a learner that keeps a version space and moves between
//! hypotheses according to a preference function `σ(h′; H, h)`. On top of
//! that it computes the number of examples a teacher needs to steer such a
//! learner to any target, the classical teaching dimensions (VCD, wc-TD,
//! RTD, NCTD), and builds explicit preference functions with known
//! teaching cost.
//!
//! ```
//! use teachdim::{class::warmuth_class, engines::td_of_sigma, fixtures, TdOptions};
//!
//! let w = warmuth_class();
//! let lvs = fixtures::warmuth_lvs(&w);
//! let td = td_of_sigma(&w, &lvs, 0, &TdOptions::default()).unwrap();
//! assert_eq!(td.value.finite(), Some(1));
//! ```

pub mod bitset;
pub mod class;
pub mod cli;
pub mod constructions;
pub mod engines;
pub mod error;
pub mod fixtures;
pub mod hc;
pub mod learner;
pub mod preference;
pub mod report;

pub use bitset::BitSet;
pub use class::{HypothesisClass, LabeledExample, TeachingSequence, VersionSpace};
pub use engines::{Cost, InitialTarget, TdOptions};
pub use error::{Error, Result};
pub use preference::{Family, PreferenceFunction};
