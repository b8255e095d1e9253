//! Exact verification tools for set-valued dynamical systems and their
//! generalized inverse limits.
//!
//! The crate covers three kinds of systems:
//!
//! * finite relation systems ([`relation`]) and the vertex shifts they
//!   induce on their inverse limits ([`shift`]);
//! * piecewise-linear multivalued maps of the unit interval ([`pl`]);
//! * finite truncations of inverse-limit points of such maps ([`truncated`]).
//!
//! All arithmetic is exact. [`harness`] evaluates stated implications and
//! worked examples over built-in and enumerated instances.

pub mod builtin;
pub mod error;
pub mod harness;
pub mod interval;
pub mod metrics;
pub mod pl;
pub mod rational;
pub mod relation;
pub mod shift;
pub mod system_file;
pub mod truncated;
pub mod verdict;

pub use error::{Error, Result};
pub use interval::{Interval, IntervalUnion};
pub use metrics::{EventuallyPeriodicSeq, GroundMetric};
pub use pl::{GraphPiece, PLMultiMap};
pub use rational::{q, Rational};
pub use relation::{RelationSystem, StateSet};
pub use shift::VertexShift;
pub use verdict::{Certificate, Truth, Verdict};
