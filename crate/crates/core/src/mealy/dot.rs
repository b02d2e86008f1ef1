use std::fmt::Write as _;

use super::{Letter, MealyAutomaton};

fn quote(s: &str) -> String {
    format!("\"{}\"", s.replace('\\', "\\\\").replace('"', "\\\""))
}

/// Graphviz rendering of the Moore diagram. Each edge is labelled `x|y`;
/// active states are shaded.
pub fn render_dot(automaton: &MealyAutomaton) -> String {
    let mut out = String::new();
    let name = if automaton.name().is_empty() { "automaton" } else { automaton.name() };
    let _ = writeln!(out, "digraph {} {{", quote(name));
    let _ = writeln!(out, "  rankdir=LR;");
    let _ = writeln!(out, "  node [shape=circle];");
    for s in 0..automaton.num_states() {
        let style = if automaton.is_active(s) { " [style=filled, fillcolor=gray80]" } else { "" };
        let _ = writeln!(out, "  {}{};", quote(automaton.label(s)), style);
    }
    for s in 0..automaton.num_states() {
        for x in 0..automaton.alphabet_size() {
            let (y, t) = automaton.transition(s, x as Letter);
            let _ = writeln!(
                out,
                "  {} -> {} [label=\"{x}|{y}\"];",
                quote(automaton.label(s)),
                quote(automaton.label(t))
            );
        }
    }
    out.push_str("}\n");
    out
}
