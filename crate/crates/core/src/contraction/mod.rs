//! Non-contraction witnesses and the nucleus semi-algorithm.
//!
//! A group is non-contracting as soon as some element `g` of infinite order
//! fixes a word `v` and has `g|v = g`: then every power `g^n` reappears as a
//! section at `v^k` for every `k`, so no finite set can absorb all deep
//! sections. [`check_witness`] verifies such a pair and [`search_witness`]
//! enumerates candidates. [`nucleus`] runs the standard closure computation
//! that terminates exactly for contracting groups (given enough budget).

mod nucleus;
mod witness;

pub use nucleus::{nucleus, NucleusBudget, NucleusReport, NucleusStatus};
pub use witness::{check_witness, enumerate_reduced_words, search_witness, SearchOutcome, Undecided, Verdict, WitnessReport};

use serde::Serializer;

use crate::element::{format_letters, GroupElement};
use crate::mealy::Letter;

pub(crate) fn serialize_element<S: Serializer>(g: &GroupElement, s: S) -> Result<S::Ok, S::Error> {
    s.serialize_str(&g.to_string())
}

pub(crate) fn serialize_elements<S: Serializer>(gs: &Option<Vec<GroupElement>>, s: S) -> Result<S::Ok, S::Error> {
    match gs {
        Some(gs) => s.collect_seq(gs.iter().map(|g| g.to_string())),
        None => s.serialize_none(),
    }
}

pub(crate) fn serialize_letters<S: Serializer>(v: &[Letter], s: S) -> Result<S::Ok, S::Error> {
    s.serialize_str(&format_letters(v))
}
