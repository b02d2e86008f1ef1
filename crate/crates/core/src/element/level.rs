use super::{free_reduce, thread_in_place, ElementError, GroupElement};
use crate::mealy::{Letter, MealyAutomaton, SignedState};

/// Default cap on the number of words in one level (`2^22` for a binary
/// alphabet).
pub const DEFAULT_LEVEL_WORDS: usize = 1 << 22;

/// Index of a word among the words of its length, first letter most
/// significant.
pub fn word_to_index(word: &[Letter], alphabet_size: usize) -> usize {
    word.iter()
        .fold(0, |acc, &x| acc * alphabet_size + x as usize)
}

pub fn index_to_word(mut index: usize, length: usize, alphabet_size: usize) -> Vec<Letter> {
    let mut word = vec![0; length];
    for slot in word.iter_mut().rev() {
        *slot = (index % alphabet_size) as Letter;
        index /= alphabet_size;
    }
    word
}

/// The permutation `u -> g(u)` of the words of a fixed length.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LevelPermutation {
    alphabet_size: usize,
    depth: usize,
    images: Vec<u32>,
}

impl LevelPermutation {
    pub fn compute(g: &GroupElement, depth: usize, budget: usize) -> Result<Self, ElementError> {
        let aut = g.automaton();
        let k = aut.alphabet_size();
        let words = k
            .checked_pow(depth as u32)
            .filter(|&n| n <= budget && n <= u32::MAX as usize)
            .ok_or(ElementError::LevelBudgetExceeded {
                depth,
                words: k.saturating_pow(depth as u32),
                budget,
            })?;
        let mut images = vec![0u32; words];
        fill(aut, g.word().to_vec(), depth, 0, 0, &mut images);
        Ok(LevelPermutation {
            alphabet_size: k,
            depth,
            images,
        })
    }

    pub fn depth(&self) -> usize {
        self.depth
    }

    pub fn len(&self) -> usize {
        self.images.len()
    }

    pub fn is_empty(&self) -> bool {
        self.images.is_empty()
    }

    pub fn image_index(&self, index: usize) -> usize {
        self.images[index] as usize
    }

    pub fn image(&self, word: &[Letter]) -> Vec<Letter> {
        assert_eq!(word.len(), self.depth, "word length must equal the level");
        let i = word_to_index(word, self.alphabet_size);
        index_to_word(self.image_index(i), self.depth, self.alphabet_size)
    }

    pub fn fixes(&self, word: &[Letter]) -> bool {
        self.image(word) == word
    }

    /// Cycle lengths, one entry per cycle, listed by smallest member.
    pub fn cycle_lengths(&self) -> Vec<usize> {
        let mut seen = vec![false; self.images.len()];
        let mut lengths = Vec::new();
        for start in 0..self.images.len() {
            if seen[start] {
                continue;
            }
            let mut len = 0;
            let mut i = start;
            while !seen[i] {
                seen[i] = true;
                len += 1;
                i = self.images[i] as usize;
            }
            lengths.push(len);
        }
        lengths
    }

    /// Order of the permutation, the lcm of its cycle lengths. Saturates at
    /// `u64::MAX`.
    pub fn order(&self) -> u64 {
        self.cycle_lengths()
            .into_iter()
            .fold(1u64, |acc, len| lcm_saturating(acc, len as u64))
    }
}

fn gcd(mut a: u64, mut b: u64) -> u64 {
    while b != 0 {
        (a, b) = (b, a % b);
    }
    a
}

pub(crate) fn lcm_saturating(a: u64, b: u64) -> u64 {
    if a == 0 || b == 0 {
        return 0;
    }
    (a / gcd(a, b)).saturating_mul(b)
}

// Depth-first walk of the tree of words carrying the reduced section.
fn fill(aut: &MealyAutomaton, section: Vec<SignedState>, remaining: usize, input: usize, output: usize, images: &mut [u32]) {
    if remaining == 0 {
        images[input] = output as u32;
        return;
    }
    let k = aut.alphabet_size();
    for x in 0..k {
        let mut next = section.clone();
        let y = thread_in_place(aut, &mut next, x as Letter);
        free_reduce(&mut next);
        fill(aut, next, remaining - 1, input * k + x, output * k + y as usize, images);
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::mealy::parse_automaton;

    #[test]
    fn index_round_trip() {
        for i in 0..27 {
            assert_eq!(word_to_index(&index_to_word(i, 3, 3), 3), i);
        }
        assert_eq!(index_to_word(6, 3, 2), vec![1, 1, 0]);
    }

    #[test]
    fn level_zero_is_trivial() {
        let a = parse_automaton("alphabet: 2\nstate a: 0->1@a ; 1->0@a\n").unwrap();
        let g = GroupElement::generator(&a, 0);
        let p = g.level_permutation(0).unwrap();
        assert_eq!(p.len(), 1);
        assert_eq!(p.order(), 1);
    }

    #[test]
    fn odometer_is_a_single_cycle() {
        let a = parse_automaton("alphabet: 2\nstate a: 0->1@e ; 1->0@a\nstate e: 0->0@e ; 1->1@e\n").unwrap();
        let g = GroupElement::generator(&a, 0);
        for n in 1..8 {
            let p = g.level_permutation(n).unwrap();
            assert_eq!(p.cycle_lengths(), vec![1 << n]);
            assert_eq!(p.order(), 1 << n);
        }
    }

    #[test]
    fn budget_is_enforced() {
        let a = MealyAutomaton::identity(2);
        let g = GroupElement::generator(&a, 0);
        assert!(matches!(
            LevelPermutation::compute(&g, 5, 16),
            Err(ElementError::LevelBudgetExceeded { depth: 5, words: 32, budget: 16 })
        ));
    }

    #[test]
    fn lcm_saturates() {
        assert_eq!(lcm_saturating(4, 6), 12);
        assert_eq!(lcm_saturating(u64::MAX, 2), u64::MAX);
    }
}
