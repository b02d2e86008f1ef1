//! Invertible Mealy automata and the self-similar groups they generate.
//!
//! The crate is organised bottom-up:
//!
//! - [`mealy`]: automata themselves (validation, the text format, inversion,
//!   products, minimization, DOT rendering);
//! - [`element`]: group elements as freely reduced words over signed states,
//!   their action on finite and eventually periodic words, sections, the
//!   word problem and a semi-decision for element order;
//! - [`contraction`]: the fixed-section criterion for non-contraction and the
//!   nucleus semi-algorithm;
//! - [`graph`]: finite balls of the self-similarity graph and the divergence
//!   experiment;
//! - [`catalogue`]: ten three-state binary automata with verification suites.
//!
//! # Composition convention
//!
//! A word `s1 s2 ... sn` acts with its **rightmost** factor first, so
//! `(gh)(v) = g(h(v))` and `(gh)|v = g|h(v) * h|v`.

pub mod catalogue;
pub mod contraction;
pub mod element;
pub mod graph;
pub mod mealy;
pub mod properties;

pub use element::{EPWord, ElementError, GroupElement, OrderBudget, OrderStatus};
pub use mealy::{Letter, MealyAutomaton, MealyError, SignedState};
