//! Exact tools for right-angled Artin groups and their actions by
//! piecewise-linear homeomorphisms of the interval and the circle.
//!
//! * [`graph`], [`graph_io`], [`raag`]: defining graphs and RAAG words.
//! * [`cotree`]: cograph decomposition, hierarchy level, smoothability
//!   verdicts and subgroup witnesses.
//! * [`pl`]: PL maps with rational breakpoints, supports, rotation numbers.
//! * [`words`], [`actions`], [`lemmas`]: words in `Z^2 * Z`, constructed
//!   actions, and checkers for support and dynamics statements.

pub mod actions;
pub mod cotree;
pub mod graph;
pub mod graph_io;
pub mod lemmas;
pub mod pl;
pub mod raag;
pub mod rational;
pub mod sample;
pub mod words;

pub use cotree::{classify, decompose, witness, Cotree, SmoothabilityVerdict};
pub use graph::SimplicialGraph;
pub use pl::{Domain, PlMap, PointSet, RotationNumber};
pub use rational::Rational;
pub use words::FreeProductWord;
