//! Finite balls of the self-similarity graph.
//!
//! Vertices are the words of length at most `N`. A *vertical* edge joins `u`
//! and `xu` for each letter `x`; a *horizontal* edge joins `u` and `s(u)` for
//! each state `s`. Distance from the empty word is therefore the word length,
//! and horizontal edges never change length.
//!
//! Distances are computed inside the ball. A geodesic of the whole graph may
//! leave the ball, so in-ball distances are upper bounds for the true ones.

use std::collections::VecDeque;
use std::fmt::Write as _;

use rayon::prelude::*;
use serde::Serialize;
use thiserror::Error;

use crate::contraction::serialize_element;
use crate::element::{format_letters, index_to_word, word_to_index, ElementError, GroupElement};
use crate::mealy::{Letter, MealyAutomaton, SignedState};

/// Default cap on the number of vertices in a ball.
pub const DEFAULT_BALL_VERTICES: usize = 1 << 22;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum GraphError {
    #[error("ball of depth {depth} has more than {budget} vertices")]
    BudgetExceeded { depth: usize, budget: usize },
    #[error("word `{0}` is not a vertex of the ball")]
    VertexAbsent(String),
    #[error("word `{word}` is shorter than radius {radius}")]
    InsideRadius { word: String, radius: usize },
    #[error("premise failed: {0}")]
    Premise(String),
    #[error(transparent)]
    Element(#[from] ElementError),
}

/// All words of length `<= depth` with both edge kinds.
#[derive(Clone, Debug)]
pub struct GraphBall<'a> {
    automaton: &'a MealyAutomaton,
    depth: usize,
    // offsets[n] = index of the first word of length n.
    offsets: Vec<usize>,
    adjacency: Vec<Vec<u32>>,
    horizontal: Vec<(u32, u32)>,
}

/// Builds the ball of radius `depth` about the empty word.
pub fn build_ball(automaton: &MealyAutomaton, depth: usize, max_vertices: usize) -> Result<GraphBall<'_>, GraphError> {
    let k = automaton.alphabet_size();
    let mut offsets = vec![0usize];
    let mut level = 1usize;
    for _ in 0..=depth {
        let next = offsets
            .last()
            .and_then(|&o| o.checked_add(level))
            .filter(|&total| total <= max_vertices)
            .ok_or(GraphError::BudgetExceeded { depth, budget: max_vertices })?;
        offsets.push(next);
        level = level.saturating_mul(k);
    }
    let total = offsets[depth + 1];

    let mut horizontal: Vec<(u32, u32)> = (0..total)
        .into_par_iter()
        .flat_map_iter(|v| {
            let n = offsets.partition_point(|&o| o <= v) - 1;
            let word = index_to_word(v - offsets[n], n, k);
            let offset = offsets[n];
            (0..automaton.num_states()).filter_map(move |s| {
                let mut state = SignedState::positive(s);
                let image: Vec<Letter> = word
                    .iter()
                    .map(|&x| {
                        let (y, t) = automaton.step(state, x);
                        state = t;
                        y
                    })
                    .collect();
                let u = offset + word_to_index(&image, k);
                (u != v).then(|| (v.min(u) as u32, v.max(u) as u32))
            })
        })
        .collect();
    horizontal.sort_unstable();
    horizontal.dedup();

    let mut adjacency = vec![Vec::new(); total];
    for &(v, u) in &horizontal {
        adjacency[v as usize].push(u);
        adjacency[u as usize].push(v);
    }
    // Vertical edges: u at length n < depth joins x u for every letter x.
    for n in 0..depth {
        let count = offsets[n + 1] - offsets[n];
        for i in 0..count {
            let u = offsets[n] + i;
            for x in 0..k {
                let xu = offsets[n + 1] + x * count + i;
                adjacency[u].push(xu as u32);
                adjacency[xu].push(u as u32);
            }
        }
    }
    for list in &mut adjacency {
        list.sort_unstable();
        list.dedup();
    }
    Ok(GraphBall {
        automaton,
        depth,
        offsets,
        adjacency,
        horizontal,
    })
}

impl<'a> GraphBall<'a> {
    pub fn automaton(&self) -> &'a MealyAutomaton {
        self.automaton
    }

    pub fn depth(&self) -> usize {
        self.depth
    }

    pub fn num_vertices(&self) -> usize {
        self.adjacency.len()
    }

    /// Index of `word`, if it lies in the ball.
    pub fn vertex(&self, word: &[Letter]) -> Option<usize> {
        let k = self.automaton.alphabet_size();
        if word.len() > self.depth || word.iter().any(|&x| x as usize >= k) {
            return None;
        }
        Some(self.offsets[word.len()] + word_to_index(word, k))
    }

    pub fn word(&self, vertex: usize) -> Vec<Letter> {
        let n = self.length(vertex);
        index_to_word(vertex - self.offsets[n], n, self.automaton.alphabet_size())
    }

    /// Word length of a vertex.
    pub fn length(&self, vertex: usize) -> usize {
        self.offsets.partition_point(|&o| o <= vertex) - 1
    }

    pub fn neighbors(&self, vertex: usize) -> impl Iterator<Item = usize> + '_ {
        self.adjacency[vertex].iter().map(|&u| u as usize)
    }

    pub fn degree(&self, vertex: usize) -> usize {
        self.adjacency[vertex].len()
    }

    /// Horizontal edges `(u, v)` with `u < v`.
    pub fn horizontal_edges(&self) -> impl Iterator<Item = (usize, usize)> + '_ {
        self.horizontal.iter().map(|&(u, v)| (u as usize, v as usize))
    }

    /// Vertical edges `(u, xu)`.
    pub fn vertical_edges(&self) -> impl Iterator<Item = (usize, usize)> + '_ {
        let k = self.automaton.alphabet_size();
        (0..self.depth).flat_map(move |n| {
            let count = self.offsets[n + 1] - self.offsets[n];
            (0..count).flat_map(move |i| (0..k).map(move |x| (self.offsets[n] + i, self.offsets[n + 1] + x * count + i)))
        })
    }

    fn require(&self, word: &[Letter]) -> Result<usize, GraphError> {
        self.vertex(word).ok_or_else(|| GraphError::VertexAbsent(format_letters(word)))
    }

    fn bfs(&self, from: usize, to: usize, min_length: usize) -> Option<usize> {
        if from == to {
            return Some(0);
        }
        let mut dist = vec![u32::MAX; self.num_vertices()];
        let mut queue = VecDeque::new();
        dist[from] = 0;
        queue.push_back(from);
        while let Some(u) = queue.pop_front() {
            for w in self.neighbors(u) {
                if dist[w] != u32::MAX || self.length(w) < min_length {
                    continue;
                }
                dist[w] = dist[u] + 1;
                if w == to {
                    return Some(dist[w] as usize);
                }
                queue.push_back(w);
            }
        }
        None
    }

    /// In-ball distance, `None` when unreachable.
    pub fn distance(&self, u: &[Letter], v: &[Letter]) -> Result<Option<usize>, GraphError> {
        let (a, b) = (self.require(u)?, self.require(v)?);
        Ok(self.bfs(a, b, 0))
    }

    /// Distance using only vertices of length `>= radius`, i.e. staying
    /// outside the open ball of that radius about the empty word.
    pub fn outside_ball_distance(&self, u: &[Letter], v: &[Letter], radius: usize) -> Result<Option<usize>, GraphError> {
        let (a, b) = (self.require(u)?, self.require(v)?);
        for w in [u, v] {
            if w.len() < radius {
                return Err(GraphError::InsideRadius {
                    word: format_letters(w),
                    radius,
                });
            }
        }
        Ok(self.bfs(a, b, radius))
    }

    /// Graphviz rendering: vertical edges dashed, horizontal edges solid.
    pub fn to_dot(&self) -> String {
        let mut out = String::new();
        let name = if self.automaton.name().is_empty() { "ball" } else { self.automaton.name() };
        let _ = writeln!(out, "graph \"{}_ball{}\" {{", name.replace('"', "\\\""), self.depth);
        let _ = writeln!(out, "  node [shape=plaintext];");
        for v in 0..self.num_vertices() {
            let _ = writeln!(out, "  v{v} [label=\"{}\"];", format_letters(&self.word(v)));
        }
        for (u, v) in self.vertical_edges() {
            let _ = writeln!(out, "  v{u} -- v{v} [style=dashed];");
        }
        for (u, v) in self.horizontal_edges() {
            let _ = writeln!(out, "  v{u} -- v{v};");
        }
        out.push_str("}\n");
        out
    }
}

/// One depth `k` of the divergence experiment.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct DivergenceRow {
    pub k: usize,
    /// `|v^k w|`.
    pub radius: usize,
    /// Length of the horizontal path from `v^k w` to `v^k g^n(w)`.
    pub corridor: usize,
    /// Distance between the same two vertices avoiding the open ball of
    /// `radius`; `None` when they are disconnected there.
    pub measured: Option<usize>,
}

#[derive(Clone, Debug, Serialize)]
pub struct DivergenceReport<'a> {
    #[serde(serialize_with = "serialize_element")]
    pub g: GroupElement<'a>,
    pub n: u32,
    #[serde(serialize_with = "crate::contraction::serialize_letters")]
    pub v: Vec<Letter>,
    #[serde(serialize_with = "crate::contraction::serialize_letters")]
    pub w: Vec<Letter>,
    #[serde(serialize_with = "crate::contraction::serialize_letters")]
    pub gn_w: Vec<Letter>,
    /// In-ball distance between `w` and `g^n(w)`.
    pub base_distance: Option<usize>,
    pub ball_depth: usize,
    pub rows: Vec<DivergenceRow>,
}

impl DivergenceReport<'_> {
    /// The corridor is the same for every `k`.
    pub fn corridor_constant(&self) -> bool {
        self.rows.windows(2).all(|r| r[0].corridor == r[1].corridor)
    }

    /// Every measured distance is at most the corridor length.
    pub fn bounded_by_corridor(&self) -> bool {
        self.rows.iter().all(|r| r.measured.is_some_and(|m| m <= r.corridor))
    }

    /// Radius growth per step of `k`, if uniform.
    pub fn radius_step(&self) -> Option<usize> {
        let steps: Vec<usize> = self.rows.windows(2).map(|r| r[1].radius - r[0].radius).collect();
        match steps.first() {
            Some(&s) if steps.iter().all(|&t| t == s) => Some(s),
            _ => None,
        }
    }

    /// Bounded outside-ball distances while the radius keeps growing: no
    /// increasing divergence function can dominate them.
    pub fn divergence_bounded(&self) -> bool {
        self.rows.len() > 1 && self.corridor_constant() && self.bounded_by_corridor() && self.radius_step().is_some_and(|s| s > 0)
    }

    pub fn to_csv(&self) -> String {
        let mut out = String::from("k,radius,corridor,measured\n");
        for r in &self.rows {
            let m = r.measured.map(|m| m.to_string()).unwrap_or_default();
            let _ = writeln!(out, "{},{},{},{}", r.k, r.radius, r.corridor, m);
        }
        out
    }
}

/// Compares, for `k = 1..=k_max`, the horizontal corridor from `v^k w` to
/// `v^k g^n(w) = g^n(v^k w)` (length `n |g|`) with the distance between its
/// endpoints outside the ball of radius `|v^k w|`.
///
/// Requires `g(v) = v`, `g|v = g` and `g^n(w) != w`.
pub fn divergence_experiment<'a>(
    ball: &GraphBall<'a>,
    g: &GroupElement<'a>,
    v: &[Letter],
    w: &[Letter],
    n: u32,
    k_max: usize,
) -> Result<DivergenceReport<'a>, GraphError> {
    if g.act(v)? != v {
        return Err(GraphError::Premise(format!("g does not fix v = {}", format_letters(v))));
    }
    if !g.section(v)?.equal(g)? {
        return Err(GraphError::Premise(format!("g|v differs from g for v = {}", format_letters(v))));
    }
    let gn = g.pow(n as i64);
    let gn_w = gn.act(w)?;
    if gn_w == w {
        return Err(GraphError::Premise(format!("g^{n} fixes w = {}", format_letters(w))));
    }
    let base_distance = ball.distance(w, &gn_w)?;
    let corridor = n as usize * g.len();
    let mut rows = Vec::with_capacity(k_max);
    for k in 1..=k_max {
        let prefix = v.repeat(k);
        let from = [prefix.as_slice(), w].concat();
        let to = [prefix.as_slice(), gn_w.as_slice()].concat();
        let radius = from.len();
        rows.push(DivergenceRow {
            k,
            radius,
            corridor,
            measured: ball.outside_ball_distance(&from, &to, radius)?,
        });
    }
    Ok(DivergenceReport {
        g: g.clone(),
        n,
        v: v.to_vec(),
        w: w.to_vec(),
        gn_w,
        base_distance,
        ball_depth: ball.depth(),
        rows,
    })
}

/// The first `(w, n)` (shortest `w`, then lexicographic `w`, then smallest
/// `n`) with in-ball distance `d(w, g^n(w)) >= min_distance`.
pub fn find_displacement(
    ball: &GraphBall,
    g: &GroupElement,
    max_w_len: usize,
    max_n: u32,
    min_distance: usize,
) -> Result<Option<(Vec<Letter>, u32, usize)>, GraphError> {
    let k = ball.automaton().alphabet_size();
    for len in 1..=max_w_len.min(ball.depth()) {
        for i in 0..k.pow(len as u32) {
            let w = index_to_word(i, len, k);
            let mut image = w.clone();
            for n in 1..=max_n {
                image = g.act(&image)?;
                if let Some(d) = ball.distance(&w, &image)? {
                    if d >= min_distance {
                        return Ok(Some((w, n, d)));
                    }
                }
            }
        }
    }
    Ok(None)
}
