use serde::{Deserialize, Serialize};

use super::{is_identity_raw, power_raw, ElementError, GroupElement, LevelPermutation, DEFAULT_CLOSURE_CAP, DEFAULT_LEVEL_WORDS};

/// Budgets for [`order_status`].
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct OrderBudget {
    pub max_depth: usize,
    pub ord_threshold: u64,
    /// Number of depths at which the level order must strictly increase
    /// before growth counts as evidence of infinite order.
    pub min_increases: usize,
    pub level_words: usize,
    pub closure_cap: usize,
}

impl Default for OrderBudget {
    fn default() -> Self {
        OrderBudget {
            max_depth: 16,
            ord_threshold: 1 << 12,
            min_increases: 4,
            level_words: DEFAULT_LEVEL_WORDS,
            closure_cap: DEFAULT_CLOSURE_CAP,
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub enum OrderStatus {
    /// `g^m` is the identity and `m` is the level order at the deciding depth.
    Finite(u64),
    /// Level orders kept growing; `ord_sequence[i]` is the order at depth
    /// `i + 1`.
    InfiniteEvidence { depth: usize, ord_sequence: Vec<u64> },
    Unknown { note: String, ord_sequence: Vec<u64> },
}

impl OrderStatus {
    pub fn is_finite(&self) -> bool {
        matches!(self, OrderStatus::Finite(_))
    }

    pub fn is_infinite_evidence(&self) -> bool {
        matches!(self, OrderStatus::InfiniteEvidence { .. })
    }

    pub fn ord_sequence(&self) -> &[u64] {
        match self {
            OrderStatus::Finite(_) => &[],
            OrderStatus::InfiniteEvidence { ord_sequence, .. } | OrderStatus::Unknown { ord_sequence, .. } => ord_sequence,
        }
    }
}

/// Number of depths `n` with `ord_n > ord_{n-1}`, taking `ord_0 = 1`.
pub(crate) fn count_increases(seq: &[u64]) -> usize {
    let mut prev = 1;
    let mut count = 0;
    for &o in seq {
        if o > prev {
            count += 1;
        }
        prev = o;
    }
    count
}

const REFUTE_LEVELS: usize = 4;

/// Semi-decision of the order of `g`.
///
/// Level orders `ord_n` are computed for `n = 1..=max_depth`, stopping early
/// once one exceeds the threshold. Each `ord_n` divides the true order, so if
/// `g^ord_n` is the identity the order is exactly `ord_n`. Only the last
/// value needs that test: an earlier `ord_n` smaller than a later one cannot
/// be the order, and a larger level order a few levels further down refutes
/// it before the word problem is attempted. Growth at `min_increases` or more
/// depths without a certificate is reported as evidence of infinite order.
pub fn order_status(g: &GroupElement, budget: &OrderBudget) -> OrderStatus {
    let mut seq = Vec::new();
    let mut exceeded = false;
    let mut note = None;
    for depth in 1..=budget.max_depth {
        let perm = match LevelPermutation::compute(g, depth, budget.level_words) {
            Ok(p) => p,
            Err(e) => {
                note = Some(e.to_string());
                break;
            }
        };
        let ord = perm.order();
        seq.push(ord);
        if ord > budget.ord_threshold {
            exceeded = true;
            break;
        }
    }

    if !exceeded {
        let m = seq.last().copied().unwrap_or(1);
        if moved_below(g, seq.len(), m, budget.level_words) {
            return classify(seq, note, budget);
        }
        match is_identity_raw(g.automaton(), &power_raw(g.word(), m as i64), budget.closure_cap) {
            Ok(true) => return OrderStatus::Finite(m),
            Ok(false) => {}
            Err(ElementError::ClosureCapExceeded { cap }) => {
                note.get_or_insert(format!("word problem for g^{m} exceeded closure cap {cap}"));
            }
            Err(e) => {
                note.get_or_insert(e.to_string());
            }
        }
    }

    classify(seq, note, budget)
}

/// Whether `g^m` moves some word up to `REFUTE_LEVELS` levels below `depth`,
/// i.e. whether the level order there exceeds `m`.
fn moved_below(g: &GroupElement, depth: usize, m: u64, level_words: usize) -> bool {
    (depth + 1..=depth + REFUTE_LEVELS)
        .map_while(|d| LevelPermutation::compute(g, d, level_words).ok())
        .any(|perm| perm.order() > m)
}

fn classify(seq: Vec<u64>, note: Option<String>, budget: &OrderBudget) -> OrderStatus {
    let increases = count_increases(&seq);
    if increases >= budget.min_increases {
        OrderStatus::InfiniteEvidence {
            depth: seq.len(),
            ord_sequence: seq,
        }
    } else {
        let note = note.unwrap_or_else(|| {
            format!(
                "level order increased at {increases} of {} depths, fewer than {}",
                seq.len(),
                budget.min_increases
            )
        });
        OrderStatus::Unknown { note, ord_sequence: seq }
    }
}
