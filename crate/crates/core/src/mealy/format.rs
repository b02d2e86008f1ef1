//! Line-oriented text format for automata.
//!
//! ```text
//! # comments run to the end of the line
//! name: 861                 # optional, at most once
//! alphabet: 2               # required before the first state
//! state a: 0->1@c ; 1->0@b
//! state b: 0->0@c ; 1->1@b
//! state c: 0->0@b ; 1->1@a
//! ```
//!
//! A transition `x->y@t` reads letter `x`, writes `y` and moves to state `t`.
//! Letters are decimal integers below the alphabet size. A label is any run of
//! characters other than whitespace and `:;@#`. Every state must list every
//! letter exactly once; states may be referenced before they are declared.

use std::collections::HashMap;
use std::fmt::Write as _;

use super::{Letter, MealyAutomaton, MealyError};

const RESERVED: &[char] = &[':', ';', '@', '#'];

struct Line<'a> {
    number: usize,
    text: &'a str,
}

impl Line<'_> {
    fn err(&self, offset: usize, message: impl Into<String>) -> MealyError {
        MealyError::Syntax {
            line: self.number,
            column: self.text[..offset.min(self.text.len())].chars().count() + 1,
            message: message.into(),
        }
    }
}

fn skip_ws(text: &str, mut pos: usize) -> usize {
    while let Some(c) = text[pos..].chars().next() {
        if !c.is_whitespace() {
            break;
        }
        pos += c.len_utf8();
    }
    pos
}

fn take_label(text: &str, pos: usize) -> (usize, &str) {
    let mut end = pos;
    while let Some(c) = text[end..].chars().next() {
        if c.is_whitespace() || RESERVED.contains(&c) {
            break;
        }
        end += c.len_utf8();
    }
    (end, &text[pos..end])
}

fn take_number(text: &str, pos: usize) -> (usize, Option<usize>) {
    let end = pos + text[pos..].bytes().take_while(|b| b.is_ascii_digit()).count();
    (end, text[pos..end].parse().ok())
}

fn expect(line: &Line, pos: usize, token: &str) -> Result<usize, MealyError> {
    let pos = skip_ws(line.text, pos);
    if line.text[pos..].starts_with(token) {
        Ok(pos + token.len())
    } else {
        Err(line.err(pos, format!("expected `{token}`")))
    }
}

struct RawState {
    label: String,
    line: usize,
    // (input, output, next label, line)
    transitions: Vec<(usize, usize, String)>,
}

pub fn parse_automaton(text: &str) -> Result<MealyAutomaton, MealyError> {
    let mut name: Option<String> = None;
    let mut alphabet: Option<usize> = None;
    let mut states: Vec<RawState> = Vec::new();

    for (i, raw) in text.lines().enumerate() {
        let content = raw.split('#').next().unwrap_or("");
        let line = Line {
            number: i + 1,
            text: content,
        };
        let start = skip_ws(content, 0);
        if start == content.len() {
            continue;
        }
        let (after_kw, keyword) = take_label(content, start);
        match keyword {
            "name" => {
                let pos = expect(&line, after_kw, ":")?;
                if name.is_some() {
                    return Err(line.err(start, "duplicate `name` header"));
                }
                if !states.is_empty() {
                    return Err(line.err(start, "`name` must precede the states"));
                }
                name = Some(content[pos..].trim().to_string());
            }
            "alphabet" => {
                let pos = expect(&line, after_kw, ":")?;
                if alphabet.is_some() {
                    return Err(line.err(start, "duplicate `alphabet` header"));
                }
                let pos = skip_ws(content, pos);
                let (end, k) = take_number(content, pos);
                let k = k.ok_or_else(|| line.err(pos, "expected alphabet size"))?;
                if skip_ws(content, end) != content.len() {
                    return Err(line.err(end, "unexpected text after alphabet size"));
                }
                if !(2..=super::MAX_ALPHABET).contains(&k) {
                    return Err(line.err(pos, format!("alphabet size {k} outside 2..=36")));
                }
                alphabet = Some(k);
            }
            "state" => {
                let k = alphabet.ok_or_else(|| line.err(start, "`alphabet` header must come first"))?;
                states.push(parse_state_line(&line, after_kw, k)?);
            }
            other => {
                return Err(line.err(start, format!("unknown directive `{other}`")));
            }
        }
    }

    let k = alphabet.ok_or(MealyError::Syntax {
        line: text.lines().count().max(1),
        column: 1,
        message: "missing `alphabet` header".into(),
    })?;
    if states.is_empty() {
        return Err(MealyError::NoStates);
    }

    let mut index = HashMap::new();
    for (i, st) in states.iter().enumerate() {
        if index.insert(st.label.clone(), i).is_some() {
            return Err(MealyError::DuplicateState {
                label: st.label.clone(),
                line: Some(st.line),
            });
        }
    }

    let mut rows = Vec::with_capacity(states.len());
    for st in &states {
        let mut row: Vec<Option<(Letter, usize)>> = vec![None; k];
        for (x, y, target) in &st.transitions {
            let t = *index.get(target).ok_or_else(|| MealyError::UndefinedState {
                label: target.clone(),
                line: Some(st.line),
            })?;
            if row[*x].is_some() {
                return Err(MealyError::DuplicateTransition {
                    state: st.label.clone(),
                    letter: *x,
                });
            }
            row[*x] = Some((*y as Letter, t));
        }
        let row = row
            .into_iter()
            .enumerate()
            .map(|(x, cell)| {
                cell.ok_or_else(|| MealyError::MissingTransition {
                    state: st.label.clone(),
                    letter: x,
                })
            })
            .collect::<Result<Vec<_>, _>>()?;
        rows.push(row);
    }

    let labels = states.into_iter().map(|s| s.label).collect();
    MealyAutomaton::new(name.unwrap_or_default(), k, labels, rows)
}

fn parse_state_line(line: &Line, pos: usize, k: usize) -> Result<RawState, MealyError> {
    let text = line.text;
    let pos = skip_ws(text, pos);
    let (mut pos, label) = take_label(text, pos);
    if label.is_empty() {
        return Err(line.err(pos, "expected state label"));
    }
    pos = expect(line, pos, ":")?;
    let mut transitions = Vec::new();
    loop {
        pos = skip_ws(text, pos);
        let (end, x) = take_number(text, pos);
        let x = x.ok_or_else(|| line.err(pos, "expected input letter"))?;
        if x >= k {
            return Err(line.err(pos, format!("letter {x} out of range for alphabet {k}")));
        }
        pos = expect(line, end, "->")?;
        pos = skip_ws(text, pos);
        let (end, y) = take_number(text, pos);
        let y = y.ok_or_else(|| line.err(pos, "expected output letter"))?;
        if y >= k {
            return Err(line.err(pos, format!("letter {y} out of range for alphabet {k}")));
        }
        pos = expect(line, end, "@")?;
        pos = skip_ws(text, pos);
        let (end, target) = take_label(text, pos);
        if target.is_empty() {
            return Err(line.err(pos, "expected next-state label"));
        }
        transitions.push((x, y, target.to_string()));
        pos = skip_ws(text, end);
        if pos == text.len() {
            break;
        }
        pos = expect(line, pos, ";")?;
    }
    Ok(RawState {
        label: label.to_string(),
        line: line.number,
        transitions,
    })
}

/// Writes the automaton in the text format; `parse_automaton` reads it back
/// unchanged.
pub fn serialize_automaton(automaton: &MealyAutomaton) -> String {
    let mut out = String::new();
    if !automaton.name().is_empty() {
        let _ = writeln!(out, "name: {}", automaton.name());
    }
    let _ = writeln!(out, "alphabet: {}", automaton.alphabet_size());
    for s in 0..automaton.num_states() {
        let transitions: Vec<String> = (0..automaton.alphabet_size())
            .map(|x| {
                let (y, t) = automaton.transition(s, x as Letter);
                format!("{x}->{y}@{}", automaton.label(t))
            })
            .collect();
        let _ = writeln!(out, "state {}: {}", automaton.label(s), transitions.join(" ; "));
    }
    out
}
