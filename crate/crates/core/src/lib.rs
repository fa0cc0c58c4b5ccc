//! Exact twisted Steinberg algebras over finite discrete groupoids.
//!
//! Everything here is finite and discrete: every subset of a groupoid is
//! compact open, every function is locally constant, and ampleness is
//! automatic. In particular a groupoid is *effective* exactly when it is
//! *principal* (the interior of the isotropy is the isotropy itself).
//!
//! The crate is layered bottom-up:
//!
//! * [`coefficients`]: exact rings, finite cyclic unit subgroups `T`, involutions;
//! * [`group`] and [`groupoid`]: composition tables, isotropy, orbits, bisections;
//! * [`cocycle`]: `T`-valued 2-cocycles stored as exponents, cohomology over `Z/n`,
//!   and gradings;
//! * [`twist`]: discrete twists, global sections, induced cocycles, isomorphisms;
//! * [`algebra`]: twisted convolution, involution, the coboundary isomorphism,
//!   grading components, and the equivariant model of a twist;
//! * [`structure`]: ideals over fields, uniqueness witnesses, simplicity;
//! * [`catalog`]: deterministic fixtures;
//! * [`formats`]: the line-oriented text formats.

pub mod algebra;
pub mod catalog;
pub mod cocycle;
pub mod coefficients;
pub mod error;
pub mod formats;
pub mod group;
pub mod groupoid;
pub mod structure;
pub mod twist;

pub use algebra::{AlgebraContext, AlgebraElement, EquivariantElement, EquivariantModel};
pub use cocycle::{Coboundary, Grading, GradingGroup, TwoCocycle};
pub use coefficients::{Involution, Ring, RingElement, RingKind, UnitSubgroup};
pub use error::{Error, Result, Violation};
pub use group::FiniteGroup;
pub use groupoid::{Bisection, FiniteGroupoid};
pub use structure::{Ideal, SimplicityMode, SimplicityVerdict};
pub use twist::{DiscreteTwist, GlobalSection, TwistMorphism};
