//! Finite invertible letter-to-letter transducers.
//!
//! Every state of a [`MealyAutomaton`] reads one letter, writes one letter and
//! moves to a next state. Invertibility means each state's output map is a
//! permutation of the alphabet, so each state defines an automorphism of the
//! rooted tree of words.

mod dot;
mod format;
mod minimize;
mod product;

use std::collections::HashSet;
use std::fmt;

use serde::{Deserialize, Serialize};
use thiserror::Error;

pub use dot::render_dot;
pub use format::{parse_automaton, serialize_automaton};
pub use minimize::{minimize, Minimized};
pub use product::product_automaton;

/// A letter of the alphabet `0..k`.
pub type Letter = u8;

/// Largest supported alphabet; letters are written as single base-36 digits in
/// word notation.
pub const MAX_ALPHABET: usize = 36;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum MealyError {
    #[error("line {line}, column {column}: {message}")]
    Syntax {
        line: usize,
        column: usize,
        message: String,
    },
    #[error("alphabet size {0} outside 2..={MAX_ALPHABET}")]
    AlphabetSize(usize),
    #[error("automaton has no states")]
    NoStates,
    #[error("duplicate state `{label}`{}", at_line(*.line))]
    DuplicateState { label: String, line: Option<usize> },
    #[error("undefined next state `{label}`{}", at_line(*.line))]
    UndefinedState { label: String, line: Option<usize> },
    #[error("state `{state}`: letter {letter} out of range")]
    LetterOutOfRange { state: String, letter: usize },
    #[error("state `{state}`: no transition on letter {letter}")]
    MissingTransition { state: String, letter: usize },
    #[error("state `{state}`: two transitions on letter {letter}")]
    DuplicateTransition { state: String, letter: usize },
    #[error("state `{state}`: non-bijective output map")]
    NonBijective { state: String },
    #[error("empty word")]
    EmptyWord,
    #[error("state index {0} out of range")]
    StateOutOfRange(usize),
}

fn at_line(line: Option<usize>) -> String {
    line.map(|l| format!(" (line {l})")).unwrap_or_default()
}

/// A generator or the inverse of a generator.
///
/// Encoded as `2 * state + inverse`, which also fixes the enumeration order
/// `s0, s0^-1, s1, s1^-1, ...`.
#[derive(Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct SignedState(u32);

impl SignedState {
    pub fn positive(state: usize) -> Self {
        SignedState((state as u32) << 1)
    }

    pub fn negative(state: usize) -> Self {
        SignedState(((state as u32) << 1) | 1)
    }

    pub fn new(state: usize, sign: i8) -> Self {
        if sign < 0 {
            Self::negative(state)
        } else {
            Self::positive(state)
        }
    }

    pub fn state(self) -> usize {
        (self.0 >> 1) as usize
    }

    pub fn is_inverse(self) -> bool {
        self.0 & 1 == 1
    }

    pub fn sign(self) -> i8 {
        if self.is_inverse() {
            -1
        } else {
            1
        }
    }

    pub fn inverse(self) -> Self {
        SignedState(self.0 ^ 1)
    }
}

impl fmt::Debug for SignedState {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_inverse() {
            write!(f, "s{}^-1", self.state())
        } else {
            write!(f, "s{}", self.state())
        }
    }
}

/// A finite invertible Mealy automaton over the alphabet `0..k`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MealyAutomaton {
    name: String,
    alphabet_size: usize,
    labels: Vec<String>,
    // Row-major tables indexed by `state * k + letter`.
    output: Vec<Letter>,
    next: Vec<u32>,
    preimage: Vec<Letter>,
}

impl MealyAutomaton {
    /// Builds and validates an automaton. `rows[s][x] = (output, next)`.
    pub fn new(
        name: impl Into<String>,
        alphabet_size: usize,
        labels: Vec<String>,
        rows: Vec<Vec<(Letter, usize)>>,
    ) -> Result<Self, MealyError> {
        if !(2..=MAX_ALPHABET).contains(&alphabet_size) {
            return Err(MealyError::AlphabetSize(alphabet_size));
        }
        if labels.is_empty() {
            return Err(MealyError::NoStates);
        }
        let mut seen = HashSet::new();
        for label in &labels {
            if !seen.insert(label.as_str()) {
                return Err(MealyError::DuplicateState {
                    label: label.clone(),
                    line: None,
                });
            }
        }
        let k = alphabet_size;
        let n = labels.len();
        let mut output = Vec::with_capacity(n * k);
        let mut next = Vec::with_capacity(n * k);
        let mut preimage = vec![Letter::MAX; n * k];
        for (s, row) in rows.iter().enumerate().take(n) {
            if row.len() != k {
                return Err(MealyError::MissingTransition {
                    state: labels[s].clone(),
                    letter: row.len().min(k),
                });
            }
            for (x, &(y, t)) in row.iter().enumerate() {
                if y as usize >= k {
                    return Err(MealyError::LetterOutOfRange {
                        state: labels[s].clone(),
                        letter: y as usize,
                    });
                }
                if t >= n {
                    return Err(MealyError::StateOutOfRange(t));
                }
                let slot = &mut preimage[s * k + y as usize];
                if *slot != Letter::MAX {
                    return Err(MealyError::NonBijective {
                        state: labels[s].clone(),
                    });
                }
                *slot = x as Letter;
                output.push(y);
                next.push(t as u32);
            }
        }
        if rows.len() != n {
            return Err(MealyError::MissingTransition {
                state: labels[rows.len().min(n - 1)].clone(),
                letter: 0,
            });
        }
        Ok(MealyAutomaton {
            name: name.into(),
            alphabet_size,
            labels,
            output,
            next,
            preimage,
        })
    }

    /// The one-state automaton acting trivially on `k` letters.
    pub fn identity(alphabet_size: usize) -> Self {
        let row = (0..alphabet_size).map(|x| (x as Letter, 0)).collect();
        MealyAutomaton::new("identity", alphabet_size, vec!["e".into()], vec![row])
            .expect("identity automaton is valid")
    }

    pub fn name(&self) -> &str {
        &self.name
    }

    pub fn with_name(mut self, name: impl Into<String>) -> Self {
        self.name = name.into();
        self
    }

    pub fn alphabet_size(&self) -> usize {
        self.alphabet_size
    }

    pub fn num_states(&self) -> usize {
        self.labels.len()
    }

    pub fn labels(&self) -> &[String] {
        &self.labels
    }

    pub fn label(&self, state: usize) -> &str {
        &self.labels[state]
    }

    pub fn state_index(&self, label: &str) -> Option<usize> {
        self.labels.iter().position(|l| l == label)
    }

    /// `(output, next)` for state `state` reading `letter`.
    #[inline]
    pub fn transition(&self, state: usize, letter: Letter) -> (Letter, usize) {
        let i = state * self.alphabet_size + letter as usize;
        (self.output[i], self.next[i] as usize)
    }

    /// One step of a signed state. Inverse states run the transition relation
    /// backwards: `s^-1` reads `y`, writes the `x` with `s(x) = y` and moves to
    /// `(s|x)^-1`.
    #[inline]
    pub fn step(&self, s: SignedState, letter: Letter) -> (Letter, SignedState) {
        let k = self.alphabet_size;
        let state = s.state();
        if s.is_inverse() {
            let x = self.preimage[state * k + letter as usize];
            let t = self.next[state * k + x as usize];
            (x, SignedState::negative(t as usize))
        } else {
            let i = state * k + letter as usize;
            (self.output[i], SignedState::positive(self.next[i] as usize))
        }
    }

    /// Output permutation of a state, as the image of each letter.
    pub fn output_row(&self, state: usize) -> &[Letter] {
        let k = self.alphabet_size;
        &self.output[state * k..(state + 1) * k]
    }

    /// A state is active when its output map is not the identity permutation.
    pub fn is_active(&self, state: usize) -> bool {
        self.output_row(state)
            .iter()
            .enumerate()
            .any(|(x, &y)| x as Letter != y)
    }

    #[cfg(test)]
    pub(crate) fn rows(&self) -> Vec<Vec<(Letter, usize)>> {
        (0..self.num_states())
            .map(|s| {
                (0..self.alphabet_size)
                    .map(|x| self.transition(s, x as Letter))
                    .collect()
            })
            .collect()
    }

    /// Inverse automaton: state `s^-1` reads `y`, writes `x` and moves to
    /// `t^-1` exactly when `s` reads `x`, writes `y` and moves to `t`.
    ///
    /// Labels gain a `^-1` suffix, or lose one if already present, so
    /// inverting twice reproduces the original automaton exactly.
    pub fn inverse(&self) -> MealyAutomaton {
        let k = self.alphabet_size;
        let labels = self.labels.iter().map(|l| inverse_label(l)).collect();
        let rows = (0..self.num_states())
            .map(|s| {
                (0..k)
                    .map(|y| {
                        let x = self.preimage[s * k + y];
                        (x, self.next[s * k + x as usize] as usize)
                    })
                    .collect()
            })
            .collect();
        let name = if self.name.is_empty() {
            String::new()
        } else {
            inverse_label(&self.name)
        };
        MealyAutomaton::new(name, k, labels, rows).expect("inverse of a valid automaton is valid")
    }
}

/// Free function form of [`MealyAutomaton::inverse`].
pub fn inverse_automaton(automaton: &MealyAutomaton) -> MealyAutomaton {
    automaton.inverse()
}

fn inverse_label(label: &str) -> String {
    match label.strip_suffix("^-1") {
        Some(base) => base.to_string(),
        None => format!("{label}^-1"),
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn odometer() -> MealyAutomaton {
        MealyAutomaton::new(
            "odometer",
            2,
            vec!["a".into(), "e".into()],
            vec![vec![(1, 1), (0, 0)], vec![(0, 1), (1, 1)]],
        )
        .unwrap()
    }

    #[test]
    fn signed_state_encoding() {
        let s = SignedState::positive(3);
        assert_eq!(s.state(), 3);
        assert_eq!(s.sign(), 1);
        assert_eq!(s.inverse(), SignedState::negative(3));
        assert_eq!(s.inverse().inverse(), s);
        assert!(SignedState::positive(0) < SignedState::negative(0));
        assert!(SignedState::negative(0) < SignedState::positive(1));
    }

    #[test]
    fn rejects_non_bijective_row() {
        let err = MealyAutomaton::new("x", 2, vec!["a".into()], vec![vec![(0, 0), (0, 0)]])
            .unwrap_err();
        assert!(matches!(err, MealyError::NonBijective { .. }));
    }

    #[test]
    fn rejects_duplicate_labels() {
        let row = vec![(0, 0), (1, 0)];
        let err = MealyAutomaton::new("x", 2, vec!["a".into(), "a".into()], vec![row.clone(), row])
            .unwrap_err();
        assert!(matches!(err, MealyError::DuplicateState { .. }));
    }

    #[test]
    fn activity_follows_output_permutation() {
        let a = odometer();
        assert!(a.is_active(0));
        assert!(!a.is_active(1));
    }

    #[test]
    fn inverse_steps_undo_forward_steps() {
        let a = odometer();
        for s in 0..a.num_states() {
            for x in 0..2u8 {
                let (y, t) = a.step(SignedState::positive(s), x);
                let (back, u) = a.step(SignedState::negative(s), y);
                assert_eq!(back, x);
                assert_eq!(u, t.inverse());
            }
        }
    }

    #[test]
    fn double_inverse_is_identical() {
        let a = odometer();
        assert_eq!(a.inverse().inverse(), a);
        assert_eq!(a.inverse().label(0), "a^-1");
    }

    #[test]
    fn identity_automaton_inverse_is_itself_up_to_labels() {
        let id = MealyAutomaton::identity(2);
        let inv = id.inverse();
        assert_eq!(inv.rows(), id.rows());
    }
}
