//! Seeded random checks of the action/section identities.
//!
//! For random `g`, `h` (reduced, length `<= max_element_len`) and words `u`,
//! `v` (length `<= max_word_len`):
//!
//! - `g(uv) = g(u) g|u(v)`
//! - `g|uv = (g|u)|v`
//! - `(gh)|v = g|h(v) h|v`
//! - `g^-1(g(u)) = u`
//! - `g^-1|v = (g|g^-1(v))^-1`
//!
//! Equalities between elements go through the word problem.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use crate::element::{format_letters, ElementError, GroupElement};
use crate::mealy::{Letter, MealyAutomaton, SignedState};

#[derive(Clone, Copy, Debug, Serialize)]
pub struct PropertyConfig {
    pub seed: u64,
    pub samples: usize,
    pub max_element_len: usize,
    pub max_word_len: usize,
}

impl Default for PropertyConfig {
    fn default() -> Self {
        PropertyConfig {
            seed: 0,
            samples: 100,
            max_element_len: 4,
            max_word_len: 6,
        }
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct PropertyFailure {
    pub property: &'static str,
    pub sample: usize,
    pub g: String,
    pub h: String,
    pub u: String,
    pub v: String,
    pub detail: String,
}

#[derive(Clone, Debug, Serialize)]
pub struct PropertyReport {
    pub automaton: String,
    pub config: PropertyConfig,
    pub checks_run: usize,
    pub failures: Vec<PropertyFailure>,
}

impl PropertyReport {
    pub fn passed(&self) -> bool {
        self.failures.is_empty()
    }
}

pub const PROPERTIES: [&str; 5] = ["act_cocycle", "section_cocycle", "product_section", "inverse_act", "inverse_section"];

fn random_element<'a, R: Rng>(aut: &'a MealyAutomaton, rng: &mut R, max_len: usize) -> GroupElement<'a> {
    let len = rng.gen_range(0..=max_len);
    let word = (0..len)
        .map(|_| SignedState::new(rng.gen_range(0..aut.num_states()), if rng.gen() { 1 } else { -1 }))
        .collect();
    GroupElement::new(aut, word).expect("states are in range")
}

fn random_word<R: Rng>(aut: &MealyAutomaton, rng: &mut R, max_len: usize) -> Vec<Letter> {
    let len = rng.gen_range(0..=max_len);
    (0..len).map(|_| rng.gen_range(0..aut.alphabet_size()) as Letter).collect()
}

fn concat(u: &[Letter], v: &[Letter]) -> Vec<Letter> {
    [u, v].concat()
}

/// Evaluates each property on one sample; `Ok(None)` means it held.
fn sample_checks(g: &GroupElement, h: &GroupElement, u: &[Letter], v: &[Letter]) -> Vec<(&'static str, Result<Option<String>, ElementError>)> {
    let holds = |ok: bool, detail: String| if ok { None } else { Some(detail) };
    let act_cocycle = (|| {
        let lhs = g.act(&concat(u, v))?;
        let rhs = concat(&g.act(u)?, &g.section(u)?.act(v)?);
        Ok(holds(lhs == rhs, format!("{} vs {}", format_letters(&lhs), format_letters(&rhs))))
    })();
    let section_cocycle = (|| {
        let lhs = g.section(&concat(u, v))?;
        let rhs = g.section(u)?.section(v)?;
        Ok(holds(lhs.equal(&rhs)?, format!("{lhs} vs {rhs}")))
    })();
    let product_section = (|| {
        let lhs = g.compose(h)?.section(v)?;
        let rhs = g.section(&h.act(v)?)?.compose(&h.section(v)?)?;
        Ok(holds(lhs.equal(&rhs)?, format!("{lhs} vs {rhs}")))
    })();
    let inverse_act = (|| {
        let back = g.invert().act(&g.act(u)?)?;
        Ok(holds(back == u, format_letters(&back)))
    })();
    let inverse_section = (|| {
        let gi = g.invert();
        let lhs = gi.section(v)?;
        let rhs = g.section(&gi.act(v)?)?.invert();
        Ok(holds(lhs.equal(&rhs)?, format!("{lhs} vs {rhs}")))
    })();
    PROPERTIES
        .into_iter()
        .zip([act_cocycle, section_cocycle, product_section, inverse_act, inverse_section])
        .collect()
}

/// Runs every property on `config.samples` seeded samples.
pub fn check_properties(automaton: &MealyAutomaton, config: &PropertyConfig) -> PropertyReport {
    let mut rng = ChaCha8Rng::seed_from_u64(config.seed);
    let mut failures = Vec::new();
    let mut checks_run = 0;
    for sample in 0..config.samples {
        let g = random_element(automaton, &mut rng, config.max_element_len);
        let h = random_element(automaton, &mut rng, config.max_element_len);
        let u = random_word(automaton, &mut rng, config.max_word_len);
        let v = random_word(automaton, &mut rng, config.max_word_len);
        for (property, outcome) in sample_checks(&g, &h, &u, &v) {
            checks_run += 1;
            let detail = match outcome {
                Ok(None) => continue,
                Ok(Some(d)) => d,
                Err(e) => e.to_string(),
            };
            failures.push(PropertyFailure {
                property,
                sample,
                g: g.to_string(),
                h: h.to_string(),
                u: format_letters(&u),
                v: format_letters(&v),
                detail,
            });
        }
    }
    PropertyReport {
        automaton: automaton.name().to_string(),
        config: *config,
        checks_run,
        failures,
    }
}
