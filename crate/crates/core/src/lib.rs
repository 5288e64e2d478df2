//! Exact composition, classification and factorization of relations.
//!
//! Two models of a category of relations live here side by side:
//!
//! * [`finrel`]: relations between finite sets;
//! * [`symplin`]: linear canonical relations (lagrangian subspaces) between
//!   rational symplectic vector spaces.
//!
//! [`ww`] builds composable paths over either model and quotients them by
//! collapsing strongly transversal pairs. [`factor`] rewrites any composable
//! word of linear canonical relations into a reduction followed by a
//! coreduction, with a replayable certificate.
//!
//! All arithmetic is exact ([`linalg`]); there is no floating point anywhere.

pub mod error;
pub mod factor;
pub mod finrel;
pub mod linalg;
pub mod profile;
pub mod sample;
pub mod symplin;
pub mod ww;

pub use error::{Error, Result};
pub use factor::{Factorization, Move, TraceStep, VerifyReport};
pub use finrel::{FinRelation, FinSet};
pub use linalg::{Matrix, Rational, Subspace};
pub use profile::RelationProfile;
pub use symplin::{CanRel, PairAnalysis, SymplecticSpace};
pub use ww::{FinEngine, Junction, LinEngine, Path, RelationEngine};
