//! Exact rational arithmetic for finite metric spaces: validation,
//! pair-sum functionals, separation profiles, exhaustive map searches
//! with exact plasticity moduli, quantitative lower bounds, and
//! generators for the known sharp examples.

pub mod bounds;
pub mod constructions;
pub mod mapping;
pub mod metric;
pub mod randgen;
pub mod rational;
pub mod search;
pub mod separation;

pub use mapping::{MapClassification, MapError, MapMargins, PointMap};
pub use metric::{FiniteMetricSpace, MetricViolation, MonotoneGauge};
pub use rational::{format_rational, parse_rational, Rational};
pub use search::{exact_modulus, MapClass, ModulusReport, ModulusVerdict};
