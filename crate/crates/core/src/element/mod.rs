//! Group elements of an automaton group and exact computation with them.
//!
//! A [`GroupElement`] is a freely reduced word over signed states. Words act
//! with their rightmost factor first: `(gh)(v) = g(h(v))`. No relations of
//! the group are applied to words; group equality always goes through the
//! section-closure decision in [`GroupElement::is_identity`].

mod epword;
mod level;
mod notation;
mod order;

use std::collections::{HashMap, HashSet, VecDeque};
use std::fmt;

use thiserror::Error;

use crate::mealy::{Letter, MealyAutomaton, SignedState};

pub use epword::{canonical_ep, shift_equivalent, EPWord};
pub use level::{index_to_word, word_to_index, LevelPermutation, DEFAULT_LEVEL_WORDS};
pub use notation::{parse_element, parse_epword, parse_word, NotationError};
pub use order::{order_status, OrderBudget, OrderStatus};

/// Default cap on the number of distinct sections explored by the word
/// problem before giving up.
pub const DEFAULT_CLOSURE_CAP: usize = 1_000_000;

pub type Word = Vec<SignedState>;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ElementError {
    #[error("letter {letter} out of range for alphabet of size {alphabet_size}")]
    LetterOutOfRange { letter: Letter, alphabet_size: usize },
    #[error("state index {0} out of range")]
    StateOutOfRange(usize),
    #[error("elements belong to different automata")]
    AutomatonMismatch,
    #[error("section closure exceeded {cap} elements")]
    ClosureCapExceeded { cap: usize },
    #[error("level {depth} has {words} words, over the budget of {budget}")]
    LevelBudgetExceeded {
        depth: usize,
        words: usize,
        budget: usize,
    },
    #[error("empty period")]
    EmptyPeriod,
    #[error(transparent)]
    Notation(#[from] NotationError),
}

/// Cancels adjacent `s s^-1` pairs.
pub fn free_reduce(word: &mut Word) {
    let mut top = 0;
    for i in 0..word.len() {
        let s = word[i];
        if top > 0 && word[top - 1] == s.inverse() {
            top -= 1;
        } else {
            word[top] = s;
            top += 1;
        }
    }
    word.truncate(top);
}

fn reduced(mut word: Word) -> Word {
    free_reduce(&mut word);
    word
}

/// Threads `letter` through `word` right to left, leaving the (unreduced)
/// sections in place. Returns the image letter.
#[inline]
pub(crate) fn thread_in_place(aut: &MealyAutomaton, word: &mut [SignedState], letter: Letter) -> Letter {
    let mut x = letter;
    for s in word.iter_mut().rev() {
        let (y, t) = aut.step(*s, x);
        *s = t;
        x = y;
    }
    x
}

/// Image of `letter` and the freely reduced section `word|letter`.
pub(crate) fn act_letter(aut: &MealyAutomaton, word: &[SignedState], letter: Letter) -> (Letter, Word) {
    let mut sec = word.to_vec();
    let y = thread_in_place(aut, &mut sec, letter);
    free_reduce(&mut sec);
    (y, sec)
}

pub(crate) fn act_raw(aut: &MealyAutomaton, word: &[SignedState], input: &[Letter]) -> Vec<Letter> {
    let mut cur = word.to_vec();
    input
        .iter()
        .map(|&x| thread_in_place(aut, &mut cur, x))
        .collect()
}

pub(crate) fn section_raw(aut: &MealyAutomaton, word: &[SignedState], v: &[Letter]) -> Word {
    let mut cur = word.to_vec();
    for &x in v {
        thread_in_place(aut, &mut cur, x);
        free_reduce(&mut cur);
    }
    cur
}

pub(crate) fn invert_raw(word: &[SignedState]) -> Word {
    word.iter().rev().map(|s| s.inverse()).collect()
}

pub(crate) fn compose_raw(g: &[SignedState], h: &[SignedState]) -> Word {
    let mut w = Vec::with_capacity(g.len() + h.len());
    w.extend_from_slice(g);
    w.extend_from_slice(h);
    reduced(w)
}

pub(crate) fn power_raw(word: &[SignedState], n: i64) -> Word {
    let base = if n < 0 { invert_raw(word) } else { word.to_vec() };
    let mut w = Vec::with_capacity(base.len() * n.unsigned_abs() as usize);
    for _ in 0..n.unsigned_abs() {
        w.extend_from_slice(&base);
        free_reduce(&mut w);
    }
    w
}

/// Word problem: breadth-first section closure of `word`, failing as soon as
/// some member moves a letter. Every reduced section is no longer than
/// `word`, so the closure is finite.
pub(crate) fn is_identity_raw(aut: &MealyAutomaton, word: &[SignedState], cap: usize) -> Result<bool, ElementError> {
    if word.is_empty() {
        return Ok(true);
    }
    let k = aut.alphabet_size();
    let mut seen: HashSet<Word> = HashSet::new();
    let mut queue = VecDeque::new();
    seen.insert(word.to_vec());
    queue.push_back(word.to_vec());
    while let Some(w) = queue.pop_front() {
        for x in 0..k as Letter {
            let (y, sec) = act_letter(aut, &w, x);
            if y != x {
                return Ok(false);
            }
            if !sec.is_empty() && !seen.contains(&sec) {
                if seen.len() >= cap {
                    return Err(ElementError::ClosureCapExceeded { cap });
                }
                seen.insert(sec.clone());
                queue.push_back(sec);
            }
        }
    }
    Ok(true)
}

/// Images of every word at a shallow level (the deepest with at most 256
/// words). Equal elements have equal fingerprints.
pub(crate) fn fingerprint(aut: &MealyAutomaton, word: &[SignedState]) -> Vec<u32> {
    let k = aut.alphabet_size();
    let mut depth = 0;
    while k.pow(depth as u32 + 1) <= 256 {
        depth += 1;
    }
    let g = GroupElement::from_reduced(aut, word.to_vec());
    let perm = LevelPermutation::compute(&g, depth, usize::MAX).expect("fingerprint level is small");
    (0..perm.len()).map(|i| perm.image_index(i) as u32).collect()
}

pub(crate) fn check_letters(aut: &MealyAutomaton, word: &[Letter]) -> Result<(), ElementError> {
    match word.iter().find(|&&x| x as usize >= aut.alphabet_size()) {
        Some(&letter) => Err(ElementError::LetterOutOfRange {
            letter,
            alphabet_size: aut.alphabet_size(),
        }),
        None => Ok(()),
    }
}

/// An element of the group generated by an automaton's states.
///
/// `==` compares words syntactically; use [`GroupElement::equal`] for
/// equality in the group.
#[derive(Clone)]
pub struct GroupElement<'a> {
    automaton: &'a MealyAutomaton,
    word: Word,
}

impl<'a> GroupElement<'a> {
    /// Builds an element from a word, freely reducing it.
    pub fn new(automaton: &'a MealyAutomaton, word: Word) -> Result<Self, ElementError> {
        if let Some(s) = word.iter().find(|s| s.state() >= automaton.num_states()) {
            return Err(ElementError::StateOutOfRange(s.state()));
        }
        Ok(Self::from_reduced(automaton, reduced(word)))
    }

    pub(crate) fn from_reduced(automaton: &'a MealyAutomaton, word: Word) -> Self {
        GroupElement { automaton, word }
    }

    pub fn identity(automaton: &'a MealyAutomaton) -> Self {
        Self::from_reduced(automaton, Vec::new())
    }

    pub fn generator(automaton: &'a MealyAutomaton, state: usize) -> Self {
        assert!(state < automaton.num_states(), "state index out of range");
        Self::from_reduced(automaton, vec![SignedState::positive(state)])
    }

    /// Parses element notation such as `a^2*b*c`, `c^-1`, `(ca)^4` or
    /// `section(b*c, 1)`.
    pub fn parse(automaton: &'a MealyAutomaton, text: &str) -> Result<Self, ElementError> {
        parse_element(automaton, text)
    }

    pub fn automaton(&self) -> &'a MealyAutomaton {
        self.automaton
    }

    pub fn word(&self) -> &[SignedState] {
        &self.word
    }

    pub fn into_word(self) -> Word {
        self.word
    }

    /// Length of the reduced word; stands in for the word norm.
    pub fn len(&self) -> usize {
        self.word.len()
    }

    pub fn is_empty(&self) -> bool {
        self.word.is_empty()
    }

    fn same_automaton(&self, other: &GroupElement) -> Result<(), ElementError> {
        if std::ptr::eq(self.automaton, other.automaton) || self.automaton == other.automaton {
            Ok(())
        } else {
            Err(ElementError::AutomatonMismatch)
        }
    }

    /// Image of a finite word.
    pub fn act(&self, u: &[Letter]) -> Result<Vec<Letter>, ElementError> {
        check_letters(self.automaton, u)?;
        Ok(act_raw(self.automaton, &self.word, u))
    }

    /// The section `self|v`, freely reduced.
    pub fn section(&self, v: &[Letter]) -> Result<GroupElement<'a>, ElementError> {
        check_letters(self.automaton, v)?;
        Ok(Self::from_reduced(self.automaton, section_raw(self.automaton, &self.word, v)))
    }

    /// `self * h`: applies `h` first, then `self`.
    pub fn compose(&self, h: &GroupElement) -> Result<GroupElement<'a>, ElementError> {
        self.same_automaton(h)?;
        Ok(Self::from_reduced(self.automaton, compose_raw(&self.word, &h.word)))
    }

    pub fn invert(&self) -> GroupElement<'a> {
        Self::from_reduced(self.automaton, invert_raw(&self.word))
    }

    pub fn pow(&self, n: i64) -> GroupElement<'a> {
        Self::from_reduced(self.automaton, power_raw(&self.word, n))
    }

    /// Decides whether the element acts trivially on every finite word.
    pub fn is_identity(&self) -> Result<bool, ElementError> {
        self.is_identity_with_cap(DEFAULT_CLOSURE_CAP)
    }

    pub fn is_identity_with_cap(&self, cap: usize) -> Result<bool, ElementError> {
        is_identity_raw(self.automaton, &self.word, cap)
    }

    /// Equality in the group.
    pub fn equal(&self, other: &GroupElement) -> Result<bool, ElementError> {
        self.equal_with_cap(other, DEFAULT_CLOSURE_CAP)
    }

    pub fn equal_with_cap(&self, other: &GroupElement, cap: usize) -> Result<bool, ElementError> {
        self.same_automaton(other)?;
        if self.word == other.word {
            return Ok(true);
        }
        let w = compose_raw(&self.word, &invert_raw(&other.word));
        is_identity_raw(self.automaton, &w, cap)
    }

    /// The bijection the element induces on words of length `depth`.
    pub fn level_permutation(&self, depth: usize) -> Result<LevelPermutation, ElementError> {
        LevelPermutation::compute(self, depth, DEFAULT_LEVEL_WORDS)
    }

    pub fn order_status(&self, budget: &OrderBudget) -> OrderStatus {
        order_status(self, budget)
    }

    /// Image of an eventually periodic infinite word.
    ///
    /// The sections met at successive copies of the period have bounded
    /// length, so they eventually repeat; the letters written over one such
    /// cycle form the period of the image.
    pub fn act_ep(&self, x: &EPWord) -> Result<EPWord, ElementError> {
        check_letters(self.automaton, x.preperiod())?;
        check_letters(self.automaton, x.period())?;
        let aut = self.automaton;
        let mut prefix = act_raw(aut, &self.word, x.preperiod());
        let mut h = section_raw(aut, &self.word, x.preperiod());
        let mut seen: HashMap<Word, usize> = HashMap::new();
        let mut blocks: Vec<Vec<Letter>> = Vec::new();
        let start = loop {
            if let Some(&i) = seen.get(&h) {
                break i;
            }
            let mut cur = h.clone();
            let block: Vec<Letter> = x
                .period()
                .iter()
                .map(|&l| thread_in_place(aut, &mut cur, l))
                .collect();
            free_reduce(&mut cur);
            seen.insert(std::mem::replace(&mut h, cur), blocks.len());
            blocks.push(block);
        };
        for block in &blocks[..start] {
            prefix.extend_from_slice(block);
        }
        let period: Vec<Letter> = blocks[start..].concat();
        canonical_ep(&prefix, &period)
    }
}

impl PartialEq for GroupElement<'_> {
    fn eq(&self, other: &Self) -> bool {
        std::ptr::eq(self.automaton, other.automaton) && self.word == other.word
    }
}

impl Eq for GroupElement<'_> {}

impl std::hash::Hash for GroupElement<'_> {
    fn hash<H: std::hash::Hasher>(&self, state: &mut H) {
        self.word.hash(state);
    }
}

/// Writes a word as `a^2*b*c^-1`, or `1` for the empty word.
pub fn format_word(aut: &MealyAutomaton, word: &[SignedState]) -> String {
    if word.is_empty() {
        return "1".into();
    }
    let mut parts = Vec::new();
    let mut i = 0;
    while i < word.len() {
        let s = word[i];
        let mut j = i;
        while j < word.len() && word[j] == s {
            j += 1;
        }
        let run = (j - i) as i64 * s.sign() as i64;
        let label = aut.label(s.state());
        parts.push(match run {
            1 => label.to_string(),
            n => format!("{label}^{n}"),
        });
        i = j;
    }
    parts.join("*")
}

impl fmt::Display for GroupElement<'_> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&format_word(self.automaton, &self.word))
    }
}

impl fmt::Debug for GroupElement<'_> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "GroupElement({self})")
    }
}

/// Formats letters as base-36 digits; the empty word is `ε`.
pub fn format_letters(word: &[Letter]) -> String {
    if word.is_empty() {
        return "ε".into();
    }
    word.iter()
        .map(|&x| std::char::from_digit(x as u32, 36).expect("letter below 36"))
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::mealy::parse_automaton;

    fn aut(rows: &str) -> MealyAutomaton {
        parse_automaton(rows).unwrap()
    }

    fn a861() -> MealyAutomaton {
        aut("alphabet: 2\nstate a: 0->1@c ; 1->0@b\nstate b: 0->0@c ; 1->1@b\nstate c: 0->0@b ; 1->1@a\n")
    }

    fn a887() -> MealyAutomaton {
        aut("alphabet: 2\nstate a: 0->1@b ; 1->0@b\nstate b: 0->0@c ; 1->1@c\nstate c: 0->0@b ; 1->1@a\n")
    }

    fn a749() -> MealyAutomaton {
        aut("alphabet: 2\nstate a: 0->1@b ; 1->0@a\nstate b: 0->0@c ; 1->1@a\nstate c: 0->0@a ; 1->1@a\n")
    }

    fn a882() -> MealyAutomaton {
        aut("alphabet: 2\nstate a: 0->1@c ; 1->0@c\nstate b: 0->0@b ; 1->1@c\nstate c: 0->0@b ; 1->1@a\n")
    }

    fn el<'a>(a: &'a MealyAutomaton, s: &str) -> GroupElement<'a> {
        GroupElement::parse(a, s).unwrap()
    }

    #[test]
    fn free_reduction_cancels_nested_pairs() {
        let a = SignedState::positive(0);
        let b = SignedState::positive(1);
        let mut w = vec![a, b, b.inverse(), a.inverse(), b];
        free_reduce(&mut w);
        assert_eq!(w, vec![b]);
    }

    #[test]
    fn act_examples() {
        let m861 = a861();
        assert_eq!(el(&m861, "c").act(&[0, 1, 0]).unwrap(), vec![0, 1, 0]);
        let m882 = a882();
        assert_eq!(el(&m882, "acacbc").act(&[1, 1]).unwrap(), vec![1, 1]);
        let m749 = a749();
        assert_eq!(el(&m749, "a^2*b*c").act(&[0, 1, 0, 0]).unwrap(), vec![0, 1, 0, 0]);
        assert_eq!(el(&m749, "a^2*b*c").act(&[]).unwrap(), Vec::<Letter>::new());
    }

    #[test]
    fn act_rejects_bad_letters() {
        let m = a861();
        assert!(matches!(
            el(&m, "c").act(&[0, 2]),
            Err(ElementError::LetterOutOfRange { letter: 2, .. })
        ));
        assert!(el(&m, "c").section(&[3]).is_err());
    }

    #[test]
    fn section_examples() {
        let m861 = a861();
        assert_eq!(el(&m861, "c").section(&[0, 1, 0]).unwrap().to_string(), "c");
        let m887 = a887();
        assert_eq!(el(&m887, "b*c").section(&[1]).unwrap().to_string(), "c*a");
        let m749 = a749();
        assert_eq!(el(&m749, "a^2*b*c").section(&[0, 0, 0]).unwrap().to_string(), "b*a*b*c");
        let id = GroupElement::identity(&m749);
        assert!(id.section(&[0, 1, 1]).unwrap().is_empty());
    }

    #[test]
    fn compose_and_invert() {
        let m = a882();
        let b = el(&m, "b");
        assert_eq!(b.compose(&b).unwrap().to_string(), "b^2");
        let m749 = a749();
        let g = el(&m749, "a^2*b*c");
        assert_eq!(g.invert().to_string(), "c^-1*b^-1*a^-2");
        let a = el(&m749, "a");
        assert!(a.compose(&a.invert()).unwrap().is_empty());
    }

    #[test]
    fn compose_rejects_foreign_elements() {
        let m1 = a861();
        let m2 = a887();
        assert_eq!(
            el(&m1, "a").compose(&el(&m2, "a")).unwrap_err(),
            ElementError::AutomatonMismatch
        );
    }

    #[test]
    fn composition_applies_right_factor_first() {
        let m = a887();
        let (b, c) = (el(&m, "b"), el(&m, "c"));
        let bc = b.compose(&c).unwrap();
        let u = [1, 0, 1, 1];
        assert_eq!(bc.act(&u).unwrap(), b.act(&c.act(&u).unwrap()).unwrap());
    }

    #[test]
    fn identity_decisions() {
        let m882 = a882();
        assert!(el(&m882, "b^2").is_identity().unwrap());
        let m887 = a887();
        for s in ["a^2", "b^2", "c^2"] {
            assert!(el(&m887, s).is_identity().unwrap(), "{s}");
        }
        let m861 = a861();
        assert!(!el(&m861, "c").is_identity().unwrap());
    }

    #[test]
    fn closure_cap_is_a_hard_error() {
        let m = a882();
        assert_eq!(
            el(&m, "b^2").is_identity_with_cap(1),
            Err(ElementError::ClosureCapExceeded { cap: 1 })
        );
    }

    #[test]
    fn equality_examples() {
        let m887 = a887();
        let lhs = el(&m887, "b*c").section(&[1]).unwrap();
        assert!(lhs.equal(&el(&m887, "c*a")).unwrap());
        let m861 = a861();
        assert!(el(&m861, "c").section(&[1]).unwrap().equal(&el(&m861, "a")).unwrap());
        assert!(!el(&m861, "a").equal(&el(&m861, "c")).unwrap());
    }

    #[test]
    fn act_ep_examples() {
        let m861 = a861();
        let ones = parse_epword("(1)^inf").unwrap();
        assert_eq!(el(&m861, "c^-1").act_ep(&ones).unwrap(), parse_epword("(10)^inf").unwrap());
        let m749 = a749();
        let zeros = parse_epword("(0)^inf").unwrap();
        assert_eq!(el(&m749, "a^2*b*c").act_ep(&zeros).unwrap(), parse_epword("001(101)^inf").unwrap());
        assert_eq!(
            el(&m749, "a^2*b*c").invert().act_ep(&zeros).unwrap(),
            parse_epword("0011(1011)^inf").unwrap()
        );
        let id = GroupElement::identity(&m749);
        let x = parse_epword("0110(01)^inf").unwrap();
        assert_eq!(id.act_ep(&x).unwrap(), x);
    }

    #[test]
    fn display_groups_powers() {
        let m = a749();
        let g = GroupElement::new(
            &m,
            vec![
                SignedState::positive(0),
                SignedState::positive(0),
                SignedState::negative(1),
                SignedState::positive(2),
            ],
        )
        .unwrap();
        assert_eq!(g.to_string(), "a^2*b^-1*c");
        assert_eq!(GroupElement::identity(&m).to_string(), "1");
    }
}
