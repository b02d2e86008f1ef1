use std::collections::HashMap;

use rayon::prelude::*;
use serde::Serialize;

use super::{serialize_element, serialize_letters};
use crate::element::{
    compose_raw, fingerprint, index_to_word, invert_raw, is_identity_raw, section_raw, act_raw, GroupElement, OrderBudget, OrderStatus,
    Word,
};
use crate::mealy::{Letter, MealyAutomaton, SignedState};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub enum Verdict {
    /// `g(v) = v`, `g|v = g` and `g` shows infinite-order evidence.
    NonContracting,
    /// Both witness conditions hold but the order was not settled.
    CandidateOnly,
    /// A condition fails, or `g` has finite order.
    Rejected,
}

#[derive(Clone, Debug, Serialize)]
pub struct WitnessReport<'a> {
    pub automaton: String,
    #[serde(serialize_with = "serialize_element")]
    pub g: GroupElement<'a>,
    #[serde(serialize_with = "serialize_letters")]
    pub v: Vec<Letter>,
    pub fixes_v: bool,
    pub section_is_self: bool,
    pub order: OrderStatus,
    pub verdict: Verdict,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub note: Option<String>,
}

fn verdict(fixes_v: bool, section_is_self: bool, order: &OrderStatus) -> Verdict {
    match (fixes_v && section_is_self, order) {
        (false, _) | (true, OrderStatus::Finite(_)) => Verdict::Rejected,
        (true, OrderStatus::InfiniteEvidence { .. }) => Verdict::NonContracting,
        (true, OrderStatus::Unknown { .. }) => Verdict::CandidateOnly,
    }
}

/// Checks the three witness conditions for `(g, v)`.
pub fn check_witness<'a>(g: &GroupElement<'a>, v: &[Letter], budget: &OrderBudget) -> WitnessReport<'a> {
    let aut = g.automaton();
    let mut note = None;
    let fixes_v = g.act(v).map(|image| image == v).unwrap_or_else(|e| {
        note = Some(e.to_string());
        false
    });
    let section_is_self = fixes_v
        && match g.section(v).and_then(|s| s.equal_with_cap(g, budget.closure_cap)) {
            Ok(same) => same,
            Err(e) => {
                note = Some(e.to_string());
                false
            }
        };
    let order = g.order_status(budget);
    let mut verdict = verdict(fixes_v, section_is_self, &order);
    if note.is_some() && fixes_v && verdict == Verdict::Rejected && !order.is_finite() {
        // The section condition was undecided rather than refuted.
        verdict = Verdict::CandidateOnly;
    }
    WitnessReport {
        automaton: aut.name().to_string(),
        g: g.clone(),
        v: v.to_vec(),
        fixes_v,
        section_is_self,
        order,
        verdict,
        note,
    }
}

/// All freely reduced words of exactly `length` over `num_states` signed
/// generators, in lexicographic order of [`SignedState`].
pub fn enumerate_reduced_words(num_states: usize, length: usize) -> Vec<Word> {
    fn extend(word: &mut Word, length: usize, symbols: usize, out: &mut Vec<Word>) {
        if word.len() == length {
            out.push(word.clone());
            return;
        }
        for code in 0..symbols {
            let s = if code % 2 == 0 { SignedState::positive(code / 2) } else { SignedState::negative(code / 2) };
            if word.last().is_some_and(|&last| last == s.inverse()) {
                continue;
            }
            word.push(s);
            extend(word, length, symbols, out);
            word.pop();
        }
    }
    let mut out = Vec::new();
    extend(&mut Vec::with_capacity(length), length, 2 * num_states, &mut out);
    out
}

/// A candidate whose section condition could not be decided within budget.
#[derive(Clone, Debug, Serialize)]
pub struct Undecided {
    pub g: String,
    pub v: String,
    pub note: String,
}

#[derive(Clone, Debug, Serialize)]
pub struct SearchOutcome<'a> {
    pub reports: Vec<WitnessReport<'a>>,
    pub candidates_checked: usize,
    pub undecided: Vec<Undecided>,
}

enum Probe {
    Miss,
    Hit,
    Undecided(String),
}

/// Enumerates `g` (reduced, `1 <= |g| <= max_word_len`) and `v`
/// (`1 <= |v| <= max_v_len`) and reports every pair with `g(v) = v` and
/// `g|v = g`, ordered by `(|g|, |v|, g, v)`. For each `v`, a `g` equal in the
/// group to an earlier hit is dropped. Runs in parallel; the output order does
/// not depend on scheduling.
pub fn search_witness<'a>(
    automaton: &'a MealyAutomaton,
    max_word_len: usize,
    max_v_len: usize,
    budget: &OrderBudget,
) -> SearchOutcome<'a> {
    let k = automaton.alphabet_size();
    let cap = budget.closure_cap;
    let mut hits: Vec<(Word, Vec<Letter>)> = Vec::new();
    let mut undecided = Vec::new();
    let mut checked = 0;

    for len in 1..=max_word_len {
        let words = enumerate_reduced_words(automaton.num_states(), len);
        for vlen in 1..=max_v_len {
            let vs: Vec<Vec<Letter>> = (0..k.pow(vlen as u32)).map(|i| index_to_word(i, vlen, k)).collect();
            let probes: Vec<Probe> = words
                .par_iter()
                .flat_map_iter(|g| vs.iter().map(move |v| (g, v)))
                .map(|(g, v)| {
                    if act_raw(automaton, g, v) != *v {
                        return Probe::Miss;
                    }
                    let sec = section_raw(automaton, g, v);
                    if sec == *g {
                        return Probe::Hit;
                    }
                    match is_identity_raw(automaton, &compose_raw(&sec, &invert_raw(g)), cap) {
                        Ok(true) => Probe::Hit,
                        Ok(false) => Probe::Miss,
                        Err(e) => Probe::Undecided(e.to_string()),
                    }
                })
                .collect();
            checked += probes.len();
            let pairs = words.iter().flat_map(|g| vs.iter().map(move |v| (g, v)));
            for ((g, v), probe) in pairs.zip(probes) {
                match probe {
                    Probe::Miss => {}
                    Probe::Hit => hits.push((g.clone(), v.clone())),
                    Probe::Undecided(note) => undecided.push(Undecided {
                        g: GroupElement::from_reduced(automaton, g.clone()).to_string(),
                        v: crate::element::format_letters(v),
                        note,
                    }),
                }
            }
        }
    }

    // Order is already (|g|, |v|, g, v) apart from v-major blocks; sort to be explicit.
    hits.sort_by(|(g1, v1), (g2, v2)| (g1.len(), v1.len(), g1, v1).cmp(&(g2.len(), v2.len(), g2, v2)));

    let mut kept: Vec<(Word, Vec<Letter>)> = Vec::new();
    let mut buckets: HashMap<(Vec<Letter>, Vec<u32>), Vec<usize>> = HashMap::new();
    for (g, v) in hits {
        let key = (v.clone(), fingerprint(automaton, &g));
        let bucket = buckets.entry(key).or_default();
        let duplicate = bucket.iter().any(|&i| {
            let other: &Word = &kept[i].0;
            matches!(is_identity_raw(automaton, &compose_raw(&g, &invert_raw(other)), cap), Ok(true))
        });
        if !duplicate {
            bucket.push(kept.len());
            kept.push((g, v));
        }
    }

    let reports = kept
        .into_par_iter()
        .map(|(g, v)| check_witness(&GroupElement::from_reduced(automaton, g), &v, budget))
        .collect();
    SearchOutcome {
        reports,
        candidates_checked: checked,
        undecided,
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::mealy::parse_automaton;

    fn a861() -> MealyAutomaton {
        parse_automaton("name: 861\nalphabet: 2\nstate a: 0->1@c ; 1->0@b\nstate b: 0->0@c ; 1->1@b\nstate c: 0->0@b ; 1->1@a\n").unwrap()
    }

    fn a887() -> MealyAutomaton {
        parse_automaton("name: 887\nalphabet: 2\nstate a: 0->1@b ; 1->0@b\nstate b: 0->0@c ; 1->1@c\nstate c: 0->0@b ; 1->1@a\n").unwrap()
    }

    #[test]
    fn reduced_word_counts() {
        // 2n * (2n - 1)^(len - 1) reduced words.
        assert_eq!(enumerate_reduced_words(3, 1).len(), 6);
        assert_eq!(enumerate_reduced_words(3, 3).len(), 6 * 25);
        let words = enumerate_reduced_words(2, 2);
        assert!(words.windows(2).all(|w| w[0] < w[1]));
        assert!(!words.contains(&vec![SignedState::positive(0), SignedState::negative(0)]));
    }

    #[test]
    fn witness_861() {
        let m = a861();
        let c = GroupElement::parse(&m, "c").unwrap();
        let r = check_witness(&c, &[0, 1, 0], &OrderBudget::default());
        assert!(r.fixes_v && r.section_is_self);
        assert!(r.order.is_infinite_evidence(), "{:?}", r.order);
        assert_eq!(r.verdict, Verdict::NonContracting);
    }

    #[test]
    fn section_differs_861() {
        let m = a861();
        let c = GroupElement::parse(&m, "c").unwrap();
        let r = check_witness(&c, &[1], &OrderBudget::default());
        assert!(r.fixes_v);
        assert!(!r.section_is_self);
        assert_eq!(r.verdict, Verdict::Rejected);
    }

    #[test]
    fn finite_order_is_rejected() {
        let m = a887();
        let a = GroupElement::parse(&m, "a").unwrap();
        let r = check_witness(&a, &[0], &OrderBudget::default());
        assert_eq!(r.order, OrderStatus::Finite(2));
        assert_eq!(r.verdict, Verdict::Rejected);
        let bc = GroupElement::parse(&m, "b*c").unwrap();
        assert_eq!(check_witness(&bc, &[0, 0], &OrderBudget::default()).verdict, Verdict::NonContracting);
    }

    #[test]
    fn search_finds_861_witness() {
        let m = a861();
        let out = search_witness(&m, 1, 3, &OrderBudget::default());
        assert!(out.reports.iter().any(|r| r.g.to_string() == "c" && r.v == [0, 1, 0]));
        assert!(out.reports.iter().all(|r| r.fixes_v && r.section_is_self));
        let keys: Vec<_> = out.reports.iter().map(|r| (r.g.len(), r.v.len(), r.g.word().to_vec(), r.v.clone())).collect();
        let mut sorted = keys.clone();
        sorted.sort();
        assert_eq!(keys, sorted);
    }

    #[test]
    fn report_serializes() {
        let m = a861();
        let c = GroupElement::parse(&m, "c").unwrap();
        let r = check_witness(&c, &[0, 1, 0], &OrderBudget::default());
        let json = serde_json::to_value(&r).unwrap();
        assert_eq!(json["g"], "c");
        assert_eq!(json["v"], "010");
        assert_eq!(json["verdict"], "NonContracting");
        assert!(json["order"]["InfiniteEvidence"]["ord_sequence"].is_array());
    }
}
