use std::collections::HashMap;
use std::hash::Hash;

use super::{Letter, MealyAutomaton};

/// Result of [`minimize`].
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Minimized {
    pub automaton: MealyAutomaton,
    /// Quotient state of each original state.
    pub class_of: Vec<usize>,
}

// Numbers keys by first occurrence, so class ids follow state order.
fn number_by_first_occurrence<K: Hash + Eq>(keys: impl IntoIterator<Item = K>) -> (Vec<usize>, usize) {
    let mut ids = HashMap::new();
    let classes = keys
        .into_iter()
        .map(|key| {
            let next = ids.len();
            *ids.entry(key).or_insert(next)
        })
        .collect();
    (classes, ids.len())
}

/// Merges states that induce the same transformation of words.
///
/// Partition refinement seeded by output rows: two states stay together while
/// they have the same output row and their successors on every letter lie in
/// the same class.
pub fn minimize(automaton: &MealyAutomaton) -> Minimized {
    let n = automaton.num_states();
    let k = automaton.alphabet_size();
    let (mut class_of, mut count) = number_by_first_occurrence((0..n).map(|s| automaton.output_row(s).to_vec()));
    loop {
        let signatures = (0..n).map(|s| {
            let succ: Vec<usize> = (0..k).map(|x| class_of[automaton.transition(s, x as Letter).1]).collect();
            (class_of[s], succ)
        });
        let (refined, refined_count) = number_by_first_occurrence(signatures);
        class_of = refined;
        if refined_count == count {
            break;
        }
        count = refined_count;
    }

    let mut representative = vec![usize::MAX; count];
    for s in (0..n).rev() {
        representative[class_of[s]] = s;
    }
    let labels = representative.iter().map(|&s| automaton.label(s).to_string()).collect();
    let rows = representative
        .iter()
        .map(|&s| {
            (0..k)
                .map(|x| {
                    let (y, t) = automaton.transition(s, x as Letter);
                    (y, class_of[t])
                })
                .collect()
        })
        .collect();
    let quotient = MealyAutomaton::new(automaton.name(), k, labels, rows).expect("quotient of a valid automaton is valid");
    Minimized {
        automaton: quotient,
        class_of,
    }
}
