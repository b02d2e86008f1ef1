use std::collections::HashMap;

use super::{Letter, MealyAutomaton, MealyError, SignedState};
use crate::element::{act_letter, format_word, free_reduce};

/// The composition transducer of a word over signed states.
///
/// States are the freely reduced words reachable from `word` by taking
/// sections; state 0 is `word` itself, so the action of state 0 equals the
/// action of the word. Labels use element notation (`b^2`, `c*a`, `1`).
pub fn product_automaton(automaton: &MealyAutomaton, word: &[SignedState]) -> Result<MealyAutomaton, MealyError> {
    if word.is_empty() {
        return Err(MealyError::EmptyWord);
    }
    if let Some(s) = word.iter().find(|s| s.state() >= automaton.num_states()) {
        return Err(MealyError::StateOutOfRange(s.state()));
    }
    let mut start = word.to_vec();
    free_reduce(&mut start);

    let k = automaton.alphabet_size();
    let mut index: HashMap<Vec<SignedState>, usize> = HashMap::new();
    let mut states: Vec<Vec<SignedState>> = vec![start.clone()];
    index.insert(start, 0);
    let mut rows: Vec<Vec<(Letter, usize)>> = Vec::new();
    let mut i = 0;
    while i < states.len() {
        let mut row = Vec::with_capacity(k);
        for x in 0..k as Letter {
            let (y, sec) = act_letter(automaton, &states[i], x);
            let t = *index.entry(sec.clone()).or_insert_with(|| {
                states.push(sec);
                states.len() - 1
            });
            row.push((y, t));
        }
        rows.push(row);
        i += 1;
    }
    let labels = states.iter().map(|w| format_word(automaton, w)).collect();
    let name = format!("{}[{}]", automaton.name(), format_word(automaton, &states[0]));
    MealyAutomaton::new(name, k, labels, rows)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::element::GroupElement;
    use crate::mealy::{minimize, parse_automaton};

    fn a882() -> MealyAutomaton {
        parse_automaton("alphabet: 2\nstate a: 0->1@c ; 1->0@c\nstate b: 0->0@b ; 1->1@c\nstate c: 0->0@b ; 1->1@a\n").unwrap()
    }

    fn a887() -> MealyAutomaton {
        parse_automaton("alphabet: 2\nstate a: 0->1@b ; 1->0@b\nstate b: 0->0@c ; 1->1@c\nstate c: 0->0@b ; 1->1@a\n").unwrap()
    }

    fn word(aut: &MealyAutomaton, s: &str) -> Vec<SignedState> {
        GroupElement::parse(aut, s).unwrap().into_word()
    }

    #[test]
    fn square_of_b_is_letter_fixing() {
        let m = a882();
        let p = product_automaton(&m, &word(&m, "b*b")).unwrap();
        assert_eq!(p.labels(), &["b^2", "c^2", "a^2"]);
        assert!((0..p.num_states()).all(|s| !p.is_active(s)));
        assert_eq!(minimize(&p).automaton.num_states(), 1);
    }

    #[test]
    fn squares_of_generators_are_letter_fixing() {
        let m = a887();
        for g in ["a*a", "b*b", "c*c"] {
            let p = product_automaton(&m, &word(&m, g)).unwrap();
            assert!((0..p.num_states()).all(|s| !p.is_active(s)), "{g}");
        }
    }

    #[test]
    fn singleton_word_matches_the_state() {
        let m = parse_automaton("alphabet: 2\nstate a: 0->1@c ; 1->0@b\nstate b: 0->0@c ; 1->1@b\nstate c: 0->0@b ; 1->1@a\n").unwrap();
        let p = product_automaton(&m, &word(&m, "c")).unwrap();
        assert_eq!(p.num_states(), 3);
        assert_eq!(p.label(0), "c");
        let c = GroupElement::parse(&m, "c").unwrap();
        let pc = GroupElement::generator(&p, 0);
        for n in 0..7 {
            for i in 0..1usize << n {
                let u = crate::element::index_to_word(i, n, 2);
                assert_eq!(pc.act(&u).unwrap(), c.act(&u).unwrap());
            }
        }
    }

    #[test]
    fn empty_word_is_rejected() {
        assert_eq!(product_automaton(&a882(), &[]), Err(MealyError::EmptyWord));
    }
}
