use std::fmt;

use super::{format_letters, ElementError};
use crate::mealy::Letter;

/// An eventually periodic infinite word `u w w w ...` in canonical form.
///
/// The period is primitive and the preperiod is as short as possible, so two
/// canonical values are equal exactly when they denote the same infinite
/// word.
#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct EPWord {
    preperiod: Vec<Letter>,
    period: Vec<Letter>,
}

fn primitive_root(w: &[Letter]) -> &[Letter] {
    let n = w.len();
    (1..=n)
        .filter(|p| n.is_multiple_of(*p))
        .find(|&p| (p..n).all(|i| w[i] == w[i - p]))
        .map(|p| &w[..p])
        .unwrap_or(w)
}

/// Canonicalizes `u w^inf`: the period becomes its primitive root and any
/// trailing letters of `u` that continue the period backwards are absorbed.
pub fn canonical_ep(u: &[Letter], w: &[Letter]) -> Result<EPWord, ElementError> {
    if w.is_empty() {
        return Err(ElementError::EmptyPeriod);
    }
    let mut period = primitive_root(w).to_vec();
    let mut preperiod = u.to_vec();
    while let (Some(&a), Some(&b)) = (preperiod.last(), period.last()) {
        if a != b {
            break;
        }
        preperiod.pop();
        period.rotate_right(1);
    }
    Ok(EPWord { preperiod, period })
}

/// Two infinite words are shift equivalent when they share a suffix. For
/// canonical eventually periodic words this holds exactly when the periods
/// are rotations of each other.
pub fn shift_equivalent(x: &EPWord, y: &EPWord) -> bool {
    let (p, q) = (&x.period, &y.period);
    p.len() == q.len() && (0..p.len()).any(|r| p[r..].iter().chain(&p[..r]).eq(q.iter()))
}

impl EPWord {
    pub fn new(preperiod: &[Letter], period: &[Letter]) -> Result<Self, ElementError> {
        canonical_ep(preperiod, period)
    }

    /// `w^inf`.
    pub fn periodic(period: &[Letter]) -> Result<Self, ElementError> {
        canonical_ep(&[], period)
    }

    pub fn preperiod(&self) -> &[Letter] {
        &self.preperiod
    }

    pub fn period(&self) -> &[Letter] {
        &self.period
    }

    pub fn letter(&self, i: usize) -> Letter {
        if i < self.preperiod.len() {
            self.preperiod[i]
        } else {
            self.period[(i - self.preperiod.len()) % self.period.len()]
        }
    }

    /// The first `n` letters.
    pub fn prefix(&self, n: usize) -> Vec<Letter> {
        (0..n).map(|i| self.letter(i)).collect()
    }

    /// `v x`, prepending a finite word.
    pub fn prepend(&self, v: &[Letter]) -> EPWord {
        let mut u = v.to_vec();
        u.extend_from_slice(&self.preperiod);
        canonical_ep(&u, &self.period).expect("period is nonempty")
    }

    pub fn is_shift_equivalent(&self, other: &EPWord) -> bool {
        shift_equivalent(self, other)
    }
}

impl fmt::Display for EPWord {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if !self.preperiod.is_empty() {
            f.write_str(&format_letters(&self.preperiod))?;
        }
        write!(f, "({})^inf", format_letters(&self.period))
    }
}
