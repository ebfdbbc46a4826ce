//! Finite idempotent semirings and their additive morphisms.

pub mod morphism;
pub mod semiring;

pub use morphism::{Hit, Rule, SemiringMorphism};
pub use semiring::{Elem, Kind, Semiring};
