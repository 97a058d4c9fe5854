//! Steiner systems with well-distributed minimal sub-designs: validation,
//! sub-design enumeration, intersection statistics and their closed forms,
//! 2-dimensional Weisfeiler-Leman refinement of incidence graphs, and the
//! individualise-and-split procedure for Steiner triple systems.

pub mod analytics;
pub mod constructions;
pub mod design;
pub mod io;
pub mod rational;
pub mod report;

pub mod subdesign;
pub mod verify;
pub mod wl;

pub use design::{admissible, Design, DesignError, DesignParams};
pub use rational::Rational;
