use std::collections::{HashMap, VecDeque};

use serde::Serialize;

use super::serialize_elements;
use crate::element::{
    act_letter, compose_raw, fingerprint, invert_raw, is_identity_raw, ElementError, GroupElement, Word,
    DEFAULT_CLOSURE_CAP,
};
use crate::mealy::{Letter, MealyAutomaton, SignedState};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct NucleusBudget {
    /// Maximum number of element classes.
    pub size: usize,
    /// Maximum number of product rounds.
    pub depth: usize,
    pub closure_cap: usize,
}

impl Default for NucleusBudget {
    fn default() -> Self {
        NucleusBudget {
            size: 5000,
            depth: 20,
            closure_cap: DEFAULT_CLOSURE_CAP,
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub enum NucleusStatus {
    Stabilized,
    BudgetExceeded,
}

#[derive(Clone, Debug, Serialize)]
pub struct NucleusReport<'a> {
    pub automaton: String,
    pub status: NucleusStatus,
    /// Every class found, in discovery order. Only reported when stabilized.
    #[serde(serialize_with = "serialize_elements")]
    pub element_set: Option<Vec<GroupElement<'a>>>,
    /// Classes reachable from a cycle of the section digraph.
    #[serde(serialize_with = "serialize_elements")]
    pub minimal_nucleus: Option<Vec<GroupElement<'a>>>,
    /// `sections[i][x]` is the index in `element_set` of `element_set[i]|x`.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub sections: Option<Vec<Vec<usize>>>,
    pub rounds: usize,
    pub classes: usize,
    pub core_size: usize,
    pub budget: NucleusBudget,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub note: Option<String>,
}

enum Stop {
    Size,
    Equality(ElementError),
}

/// Element classes up to equality in the group, with the one-letter section
/// digraph between them.
struct Registry<'a> {
    aut: &'a MealyAutomaton,
    cap: usize,
    size: usize,
    reps: Vec<Word>,
    memo: HashMap<Word, usize>,
    buckets: HashMap<Vec<u32>, Vec<usize>>,
    sections: Vec<Vec<usize>>,
    pending: VecDeque<usize>,
}

impl<'a> Registry<'a> {
    fn class_of(&mut self, word: Word) -> Result<(usize, bool), Stop> {
        if let Some(&i) = self.memo.get(&word) {
            return Ok((i, false));
        }
        let fp = fingerprint(self.aut, &word);
        let inv = invert_raw(&word);
        let mut found = None;
        for &i in self.buckets.get(&fp).map(Vec::as_slice).unwrap_or(&[]) {
            let diff = compose_raw(&self.reps[i], &inv);
            if is_identity_raw(self.aut, &diff, self.cap).map_err(Stop::Equality)? {
                found = Some(i);
                break;
            }
        }
        if let Some(i) = found {
            self.memo.insert(word, i);
            return Ok((i, false));
        }
        if self.reps.len() >= self.size {
            return Err(Stop::Size);
        }
        let i = self.reps.len();
        self.reps.push(word.clone());
        self.memo.insert(word, i);
        self.buckets.entry(fp).or_default().push(i);
        self.sections.push(Vec::new());
        self.pending.push_back(i);
        Ok((i, true))
    }

    /// Adds the sections of every pending class until none are left.
    fn close(&mut self) -> Result<(), Stop> {
        while let Some(i) = self.pending.pop_front() {
            let mut row = Vec::with_capacity(self.aut.alphabet_size());
            for x in 0..self.aut.alphabet_size() as Letter {
                let (_, sec) = act_letter(self.aut, &self.reps[i], x);
                row.push(self.class_of(sec)?.0);
            }
            self.sections[i] = row;
        }
        Ok(())
    }

    /// Classes that are reachable from a cycle: repeatedly drop classes
    /// with no incoming section edge.
    fn core(&self) -> Vec<usize> {
        let n = self.reps.len();
        let mut indegree = vec![0usize; n];
        for row in &self.sections {
            for &t in row {
                indegree[t] += 1;
            }
        }
        let mut alive = vec![true; n];
        let mut stack: Vec<usize> = (0..n).filter(|&i| indegree[i] == 0).collect();
        while let Some(i) = stack.pop() {
            alive[i] = false;
            for &t in &self.sections[i] {
                indegree[t] -= 1;
                if indegree[t] == 0 {
                    stack.push(t);
                }
            }
        }
        (0..n).filter(|&i| alive[i]).collect()
    }
}

/// Nucleus semi-algorithm. Starts from the identity, the states and their
/// inverses, closed under sections; each round adds every product `gh` of
/// two classes in the current core (the classes reachable from a cycle of
/// the section digraph) and closes again. Stabilizes when a round produces
/// no new class; the final core is the minimal nucleus.
///
/// Non-contracting groups never stabilize, so the run ends with
/// [`NucleusStatus::BudgetExceeded`] once `budget.size` classes or
/// `budget.depth` rounds are used up.
pub fn nucleus<'a>(automaton: &'a MealyAutomaton, budget: &NucleusBudget) -> NucleusReport<'a> {
    let mut reg = Registry {
        aut: automaton,
        cap: budget.closure_cap,
        size: budget.size.max(1),
        reps: Vec::new(),
        memo: HashMap::new(),
        buckets: HashMap::new(),
        sections: Vec::new(),
        pending: VecDeque::new(),
    };
    let mut rounds = 0;
    let outcome = (|| -> Result<(), Stop> {
        reg.class_of(Vec::new())?;
        for s in 0..automaton.num_states() {
            reg.class_of(vec![SignedState::positive(s)])?;
        }
        for s in 0..automaton.num_states() {
            reg.class_of(vec![SignedState::negative(s)])?;
        }
        reg.close()?;
        loop {
            if rounds >= budget.depth {
                return Err(Stop::Size);
            }
            rounds += 1;
            let core = reg.core();
            let mut added = false;
            for &g in &core {
                for &h in &core {
                    let product = compose_raw(&reg.reps[g], &reg.reps[h]);
                    added |= reg.class_of(product)?.1;
                }
            }
            reg.close()?;
            if !added {
                return Ok(());
            }
        }
    })();

    let core = reg.core();
    let element = |i: usize| GroupElement::from_reduced(automaton, reg.reps[i].clone());
    let mut report = NucleusReport {
        automaton: automaton.name().to_string(),
        status: NucleusStatus::BudgetExceeded,
        element_set: None,
        minimal_nucleus: None,
        sections: None,
        rounds,
        classes: reg.reps.len(),
        core_size: core.len(),
        budget: *budget,
        note: None,
    };
    match outcome {
        Ok(()) => {
            report.status = NucleusStatus::Stabilized;
            report.element_set = Some((0..reg.reps.len()).map(element).collect());
            report.minimal_nucleus = Some(core.iter().map(|&i| element(i)).collect());
            report.sections = Some(reg.sections.clone());
        }
        Err(Stop::Size) if rounds >= budget.depth && reg.reps.len() < reg.size => {
            report.note = Some(format!("round budget {} exhausted", budget.depth));
        }
        Err(Stop::Size) => {
            report.note = Some(format!("size budget {} exhausted in round {rounds}", reg.size));
        }
        Err(Stop::Equality(e)) => {
            report.note = Some(format!("equality undecided: {e}"));
        }
    }
    report
}
