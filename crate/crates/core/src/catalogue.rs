//! Ten three-state binary automata, each shipped with a witness pair and a
//! suite of exact checks.
//!
//! Each entry is an automaton file whose `#!` lines (comments to the
//! automaton parser) carry the witness and the checks:
//!
//! ```text
//! #! witness <g> <v>
//! #! act <g> <u> = <w>
//! #! section <g> <v> = <h>
//! #! identity <g>
//! #! order <g> = <m>
//! #! ep-act <g> <x> = <y>
//! #! shift-equal <g> <x> | <h> <y>
//! #! shift-differs <g> <x> | <h> <y>
//! ```
//!
//! The files are compiled in, and [`load_dir`] reads a replacement set at
//! run time.

use std::collections::BTreeMap;
use std::fmt;
use std::path::Path;

use serde::Serialize;
use thiserror::Error;

use crate::element::{format_letters, parse_element, parse_epword, parse_word, EPWord, ElementError, GroupElement, OrderBudget, OrderStatus};
use crate::mealy::{parse_automaton, Letter, MealyAutomaton, MealyError};

pub const KEYS: [u32; 10] = [749, 861, 882, 887, 920, 969, 2361, 2365, 2402, 2427];

const SOURCES: [(u32, &str); 10] = [
    (749, include_str!("../catalogue/749.mealy")),
    (861, include_str!("../catalogue/861.mealy")),
    (882, include_str!("../catalogue/882.mealy")),
    (887, include_str!("../catalogue/887.mealy")),
    (920, include_str!("../catalogue/920.mealy")),
    (969, include_str!("../catalogue/969.mealy")),
    (2361, include_str!("../catalogue/2361.mealy")),
    (2365, include_str!("../catalogue/2365.mealy")),
    (2402, include_str!("../catalogue/2402.mealy")),
    (2427, include_str!("../catalogue/2427.mealy")),
];

#[derive(Debug, Error)]
pub enum CatalogueError {
    #[error("unknown catalogue key `{0}`")]
    UnknownKey(String),
    #[error("{path}: {source}")]
    Io {
        path: String,
        #[source]
        source: std::io::Error,
    },
    #[error("entry {key}: {source}")]
    Automaton {
        key: String,
        #[source]
        source: MealyError,
    },
    #[error("entry {key}, line {line}: {message}")]
    Directive { key: String, line: usize, message: String },
}

/// One machine-checkable statement about an entry's group.
///
/// Elements are kept as notation strings; they are parsed against whichever
/// automaton the check runs on.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(tag = "kind")]
pub enum Check {
    ActEquals { g: String, input: String, expected: String },
    SectionEquals { g: String, at: String, expected: String },
    IsIdentity { g: String },
    OrderFinite { g: String, order: u64 },
    EpActEquals { g: String, input: String, expected: String },
    ShiftClassEquals { g: String, x: String, h: String, y: String },
    ShiftClassDiffers { g: String, x: String, h: String, y: String },
}

impl Check {
    pub fn kind(&self) -> &'static str {
        match self {
            Check::ActEquals { .. } => "ActEquals",
            Check::SectionEquals { .. } => "SectionEquals",
            Check::IsIdentity { .. } => "IsIdentity",
            Check::OrderFinite { .. } => "OrderFinite",
            Check::EpActEquals { .. } => "EpActEquals",
            Check::ShiftClassEquals { .. } => "ShiftClassEquals",
            Check::ShiftClassDiffers { .. } => "ShiftClassDiffers",
        }
    }

    fn elements(&self) -> Vec<&str> {
        match self {
            Check::ActEquals { g, .. } | Check::IsIdentity { g } | Check::OrderFinite { g, .. } | Check::EpActEquals { g, .. } => vec![g],
            Check::SectionEquals { g, expected, .. } => vec![g, expected],
            Check::ShiftClassEquals { g, h, .. } | Check::ShiftClassDiffers { g, h, .. } => vec![g, h],
        }
    }

    /// Library operations a check exercises, including the products and
    /// inverses needed to build its elements.
    pub fn operations(&self) -> Vec<&'static str> {
        let mut ops: Vec<&'static str> = match self {
            Check::ActEquals { .. } => vec!["act"],
            Check::SectionEquals { .. } => vec!["section", "equal", "is_identity"],
            Check::IsIdentity { .. } => vec!["is_identity"],
            Check::OrderFinite { .. } => vec!["order_status", "level_permutation", "is_identity"],
            Check::EpActEquals { .. } => vec!["act_ep"],
            Check::ShiftClassEquals { .. } | Check::ShiftClassDiffers { .. } => vec!["act_ep", "shift_equivalent"],
        };
        let exprs = self.elements();
        if exprs.iter().any(|e| e.contains("^-") || e.contains("inv(")) {
            ops.push("invert");
        }
        if exprs.iter().any(|e| e.contains('*') || e.contains('^') || e.chars().filter(|c| c.is_alphabetic()).count() > 1) {
            ops.push("compose");
        }
        ops
    }
}

impl fmt::Display for Check {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Check::ActEquals { g, input, expected } => write!(f, "{g}({input}) = {expected}"),
            Check::SectionEquals { g, at, expected } => write!(f, "({g})|{at} = {expected}"),
            Check::IsIdentity { g } => write!(f, "{g} = 1"),
            Check::OrderFinite { g, order } => write!(f, "order({g}) = {order}"),
            Check::EpActEquals { g, input, expected } => write!(f, "{g}({input}) = {expected}"),
            Check::ShiftClassEquals { g, x, h, y } => write!(f, "{g}({x}) ~ {h}({y})"),
            Check::ShiftClassDiffers { g, x, h, y } => write!(f, "{g}({x}) !~ {h}({y})"),
        }
    }
}

#[derive(Clone, Debug)]
pub struct CatalogueEntry {
    pub key: u32,
    pub automaton: MealyAutomaton,
    /// Witness element in notation, and the fixed word.
    pub witness: (String, Vec<Letter>),
    pub checks: Vec<Check>,
}

impl CatalogueEntry {
    pub fn witness_element(&self) -> GroupElement<'_> {
        parse_element(&self.automaton, &self.witness.0).expect("witness validated on load")
    }

    /// The witness conditions `g(v) = v` and `g|v = g` followed by the
    /// entry's own checks.
    pub fn all_checks(&self) -> Vec<Check> {
        let (g, v) = (&self.witness.0, format_letters(&self.witness.1));
        let mut checks = vec![
            Check::ActEquals {
                g: g.clone(),
                input: v.clone(),
                expected: v.clone(),
            },
            Check::SectionEquals {
                g: g.clone(),
                at: v,
                expected: g.clone(),
            },
        ];
        checks.extend(self.checks.iter().cloned());
        checks
    }

    /// Check count per library operation.
    pub fn coverage(&self) -> BTreeMap<&'static str, usize> {
        let mut map = BTreeMap::new();
        for check in self.all_checks() {
            for op in check.operations() {
                *map.entry(op).or_insert(0) += 1;
            }
        }
        map
    }
}

fn parse_entry(key: &str, text: &str) -> Result<CatalogueEntry, CatalogueError> {
    let automaton = parse_automaton(text).map_err(|source| CatalogueError::Automaton { key: key.into(), source })?;
    let key_num: u32 = automaton
        .name()
        .parse()
        .or_else(|_| key.parse())
        .map_err(|_| CatalogueError::UnknownKey(key.into()))?;
    let mut witness = None;
    let mut checks = Vec::new();
    for (i, line) in text.lines().enumerate() {
        let Some(rest) = line.trim_start().strip_prefix("#!") else {
            continue;
        };
        let err = |message: String| CatalogueError::Directive {
            key: key.into(),
            line: i + 1,
            message,
        };
        let tokens: Vec<&str> = rest.split_whitespace().collect();
        let Some((&directive, args)) = tokens.split_first() else {
            return Err(err("empty directive".into()));
        };
        let element = |s: &str| parse_element(&automaton, s).map(|_| s.to_string()).map_err(|e| err(format!("`{s}`: {e}")));
        let word = |s: &str| {
            parse_word(s)
                .map_err(|e| err(format!("`{s}`: {e}")))
                .and_then(|w| match w.iter().find(|&&x| x as usize >= automaton.alphabet_size()) {
                    Some(x) => Err(err(format!("letter {x} out of range"))),
                    None => Ok(format_letters(&w)),
                })
        };
        let epword = |s: &str| parse_epword(s).map(|_| s.to_string()).map_err(|e| err(format!("`{s}`: {e}")));
        let check = match (directive, args) {
            ("witness", [g, v]) => {
                element(g)?;
                let v = parse_word(v).map_err(|e| err(e.to_string()))?;
                witness = Some((g.to_string(), v));
                continue;
            }
            ("act", [g, u, "=", w]) => Check::ActEquals {
                g: element(g)?,
                input: word(u)?,
                expected: word(w)?,
            },
            ("section", [g, v, "=", h]) => Check::SectionEquals {
                g: element(g)?,
                at: word(v)?,
                expected: element(h)?,
            },
            ("identity", [g]) => Check::IsIdentity { g: element(g)? },
            ("order", [g, "=", m]) => Check::OrderFinite {
                g: element(g)?,
                order: m.parse().map_err(|_| err(format!("bad order `{m}`")))?,
            },
            ("ep-act", [g, x, "=", y]) => Check::EpActEquals {
                g: element(g)?,
                input: epword(x)?,
                expected: epword(y)?,
            },
            ("shift-equal", [g, x, "|", h, y]) => Check::ShiftClassEquals {
                g: element(g)?,
                x: epword(x)?,
                h: element(h)?,
                y: epword(y)?,
            },
            ("shift-differs", [g, x, "|", h, y]) => Check::ShiftClassDiffers {
                g: element(g)?,
                x: epword(x)?,
                h: element(h)?,
                y: epword(y)?,
            },
            _ => return Err(err(format!("unrecognised directive `{}`", rest.trim()))),
        };
        checks.push(check);
    }
    let witness = witness.ok_or_else(|| CatalogueError::Directive {
        key: key.into(),
        line: 0,
        message: "no witness line".into(),
    })?;
    Ok(CatalogueEntry {
        key: key_num,
        automaton,
        witness,
        checks,
    })
}

/// Built-in entry by key.
pub fn get(key: u32) -> Result<CatalogueEntry, CatalogueError> {
    let (_, text) = SOURCES
        .iter()
        .find(|(k, _)| *k == key)
        .ok_or_else(|| CatalogueError::UnknownKey(key.to_string()))?;
    parse_entry(&key.to_string(), text)
}

/// Like [`get`], accepting the key as text.
pub fn get_str(key: &str) -> Result<CatalogueEntry, CatalogueError> {
    key.trim()
        .parse()
        .map_err(|_| CatalogueError::UnknownKey(key.into()))
        .and_then(get)
}

/// All built-in entries in key order.
pub fn entries() -> Vec<CatalogueEntry> {
    KEYS.iter().map(|&k| get(k).expect("built-in catalogue is valid")).collect()
}

/// Parses one entry from text.
pub fn parse_entry_text(key: &str, text: &str) -> Result<CatalogueEntry, CatalogueError> {
    parse_entry(key, text)
}

/// Reads every `*.mealy` file in `dir`, ordered by key.
pub fn load_dir(dir: &Path) -> Result<Vec<CatalogueEntry>, CatalogueError> {
    let io = |source| CatalogueError::Io {
        path: dir.display().to_string(),
        source,
    };
    let mut out = Vec::new();
    for item in std::fs::read_dir(dir).map_err(io)? {
        let path = item.map_err(io)?.path();
        if path.extension().and_then(|e| e.to_str()) != Some("mealy") {
            continue;
        }
        let stem = path.file_stem().and_then(|s| s.to_str()).unwrap_or_default().to_string();
        let text = std::fs::read_to_string(&path).map_err(|source| CatalogueError::Io {
            path: path.display().to_string(),
            source,
        })?;
        out.push(parse_entry(&stem, &text)?);
    }
    out.sort_by_key(|e| e.key);
    Ok(out)
}

#[derive(Clone, Debug, Serialize)]
pub struct CheckResult {
    pub check: Check,
    pub description: String,
    pub passed: bool,
    /// What was actually computed, when it differs or could not be computed.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub detail: Option<String>,
}

#[derive(Clone, Debug, Serialize)]
pub struct SuiteReport {
    pub key: u32,
    pub results: Vec<CheckResult>,
}

impl SuiteReport {
    pub fn passed(&self) -> bool {
        self.results.iter().all(|r| r.passed)
    }

    pub fn failures(&self) -> impl Iterator<Item = &CheckResult> {
        self.results.iter().filter(|r| !r.passed)
    }
}

fn evaluate(aut: &MealyAutomaton, check: &Check, budget: &OrderBudget) -> Result<(bool, String), ElementError> {
    let el = |s: &str| parse_element(aut, s);
    let ep_image = |g: &str, x: &str| -> Result<EPWord, ElementError> { el(g)?.act_ep(&parse_epword(x)?) };
    Ok(match check {
        Check::ActEquals { g, input, expected } => {
            let out = format_letters(&el(g)?.act(&parse_word(input)?)?);
            (out == *expected, out)
        }
        Check::SectionEquals { g, at, expected } => {
            let sec = el(g)?.section(&parse_word(at)?)?;
            (sec.equal_with_cap(&el(expected)?, budget.closure_cap)?, sec.to_string())
        }
        Check::IsIdentity { g } => {
            let g = el(g)?;
            (g.is_identity_with_cap(budget.closure_cap)?, g.to_string())
        }
        Check::OrderFinite { g, order } => {
            let status = el(g)?.order_status(budget);
            (status == OrderStatus::Finite(*order), format!("{status:?}"))
        }
        Check::EpActEquals { g, input, expected } => {
            let out = ep_image(g, input)?;
            (out == parse_epword(expected)?, out.to_string())
        }
        Check::ShiftClassEquals { g, x, h, y } | Check::ShiftClassDiffers { g, x, h, y } => {
            let (a, b) = (ep_image(g, x)?, ep_image(h, y)?);
            let same = a.is_shift_equivalent(&b);
            (same == matches!(check, Check::ShiftClassEquals { .. }), format!("{a} vs {b}"))
        }
    })
}

/// Runs `checks` against `automaton`, which need not be the entry's own
/// (mutation testing swaps it).
pub fn run_checks(key: u32, automaton: &MealyAutomaton, checks: &[Check], budget: &OrderBudget) -> SuiteReport {
    let results = checks
        .iter()
        .map(|check| {
            let (passed, detail) = match evaluate(automaton, check, budget) {
                Ok((passed, actual)) => (passed, (!passed).then_some(actual)),
                Err(e) => (false, Some(e.to_string())),
            };
            CheckResult {
                check: check.clone(),
                description: check.to_string(),
                passed,
                detail,
            }
        })
        .collect();
    SuiteReport { key, results }
}

/// The witness conditions and every check of an entry.
pub fn run_suite(entry: &CatalogueEntry) -> SuiteReport {
    run_checks(entry.key, &entry.automaton, &entry.all_checks(), &OrderBudget::default())
}
