use std::collections::BTreeMap;
use std::fmt::Write as _;
use std::fs;

use serde_json::{json, Value};

use selfsim::catalogue::{self, CatalogueEntry};
use selfsim::contraction::{check_witness, nucleus, search_witness, NucleusBudget, Verdict};
use selfsim::element::{format_letters, parse_epword, parse_word, shift_equivalent};
use selfsim::graph::{build_ball, divergence_experiment, find_displacement};
use selfsim::mealy::{minimize, parse_automaton, product_automaton, render_dot, serialize_automaton};
use selfsim::properties::{check_properties, PropertyConfig};
use selfsim::{GroupElement, MealyAutomaton, OrderBudget, OrderStatus};

use crate::output::{Failure, Output};
use crate::{CatalogueCommand, Cli, Command, OrderArgs, Source, WitnessCommand};

fn catalogue_entries(cli: &Cli) -> Result<Vec<CatalogueEntry>, Failure> {
    match &cli.catalogue_dir {
        Some(dir) => Ok(catalogue::load_dir(dir)?),
        None => Ok(catalogue::entries()),
    }
}

fn catalogue_entry(cli: &Cli, key: &str) -> Result<CatalogueEntry, Failure> {
    match &cli.catalogue_dir {
        Some(_) => catalogue_entries(cli)?
            .into_iter()
            .find(|e| e.key.to_string() == key.trim())
            .ok_or_else(|| Failure::new(Failure::NOT_FOUND, format!("unknown catalogue key `{key}`"))),
        None => Ok(catalogue::get_str(key)?),
    }
}

fn load(cli: &Cli, source: &Source) -> Result<MealyAutomaton, Failure> {
    match (&source.catalogue, &source.file) {
        (Some(key), _) => Ok(catalogue_entry(cli, key)?.automaton),
        (None, Some(path)) => {
            let text = fs::read_to_string(path).map_err(|e| Failure::new(Failure::NOT_FOUND, format!("{}: {e}", path.display())))?;
            let aut = parse_automaton(&text).map_err(|e| Failure::new(Failure::PARSE, format!("{}: {e}", path.display())))?;
            Ok(if aut.name().is_empty() {
                let stem = path.file_stem().and_then(|s| s.to_str()).unwrap_or_default().to_string();
                aut.with_name(stem)
            } else {
                aut
            })
        }
        (None, None) => Err(Failure::new(Failure::USAGE, "one of --catalogue or --file is required")),
    }
}

fn order_budget(args: &OrderArgs) -> OrderBudget {
    OrderBudget {
        max_depth: args.max_depth,
        ord_threshold: args.ord_threshold,
        min_increases: args.min_increases,
        level_words: args.level_words,
        closure_cap: args.closure.closure_cap,
    }
}

fn letters(aut: &MealyAutomaton, text: &str) -> Result<Vec<u8>, Failure> {
    let word = parse_word(text)?;
    if let Some(&x) = word.iter().find(|&&x| x as usize >= aut.alphabet_size()) {
        return Err(Failure::new(Failure::PARSE, format!("letter {x} out of range for alphabet of size {}", aut.alphabet_size())));
    }
    Ok(word)
}

fn join(seq: &[u64]) -> String {
    seq.iter().map(u64::to_string).collect::<Vec<_>>().join(",")
}

fn describe_order(status: &OrderStatus) -> String {
    match status {
        OrderStatus::Finite(m) => format!("finite, order {m}"),
        OrderStatus::InfiniteEvidence { depth, ord_sequence } => {
            format!("infinite (evidence to depth {depth}; level orders {})", join(ord_sequence))
        }
        OrderStatus::Unknown { note, ord_sequence } => format!("unknown ({note}; level orders {})", join(ord_sequence)),
    }
}

fn to_value<T: serde::Serialize>(value: &T) -> Value {
    serde_json::to_value(value).expect("reports serialize")
}

pub fn run(cli: &Cli) -> Result<Output, Failure> {
    match &cli.command {
        Command::Info { source } => info(&load(cli, source)?),
        Command::Act { source, g, word } => {
            let aut = load(cli, source)?;
            let g = GroupElement::parse(&aut, g)?;
            let image = format_letters(&g.act(&letters(&aut, word)?)?);
            Ok(Output::new(image.clone(), json!({ "g": g.to_string(), "word": word, "image": image })))
        }
        Command::Section { source, g, word } => {
            let aut = load(cli, source)?;
            let g = GroupElement::parse(&aut, g)?;
            let sec = g.section(&letters(&aut, word)?)?;
            Ok(Output::new(sec.to_string(), json!({ "g": g.to_string(), "word": word, "section": sec.to_string() })))
        }
        Command::Equal { source, lhs, rhs, closure } => {
            let aut = load(cli, source)?;
            let (a, b) = (GroupElement::parse(&aut, lhs)?, GroupElement::parse(&aut, rhs)?);
            let eq = a.equal_with_cap(&b, closure.closure_cap)?;
            Ok(Output::new(eq.to_string(), json!({ "lhs": a.to_string(), "rhs": b.to_string(), "equal": eq })))
        }
        Command::Identity { source, g, closure } => {
            let aut = load(cli, source)?;
            let g = GroupElement::parse(&aut, g)?;
            let id = g.is_identity_with_cap(closure.closure_cap)?;
            Ok(Output::new(id.to_string(), json!({ "g": g.to_string(), "identity": id })))
        }
        Command::Order { source, g, budget } => {
            let aut = load(cli, source)?;
            let g = GroupElement::parse(&aut, g)?;
            let status = g.order_status(&order_budget(budget));
            Ok(Output::new(describe_order(&status), json!({ "g": g.to_string(), "order": to_value(&status) })))
        }
        Command::EpAct { source, g, word } => {
            let aut = load(cli, source)?;
            let g = GroupElement::parse(&aut, g)?;
            let x = parse_epword(word)?;
            if let Some(&l) = x.preperiod().iter().chain(x.period()).find(|&&l| l as usize >= aut.alphabet_size()) {
                return Err(Failure::new(Failure::PARSE, format!("letter {l} out of range")));
            }
            let image = g.act_ep(&x)?;
            Ok(Output::new(image.to_string(), json!({ "g": g.to_string(), "word": x.to_string(), "image": image.to_string() })))
        }
        Command::ShiftEq { x, y } => {
            let (a, b) = (parse_epword(x)?, parse_epword(y)?);
            let eq = shift_equivalent(&a, &b);
            Ok(Output::new(eq.to_string(), json!({ "x": a.to_string(), "y": b.to_string(), "shift_equivalent": eq })))
        }
        Command::Witness { action } => witness(cli, action),
        Command::Nucleus { source, size, depth, closure } => {
            let aut = load(cli, source)?;
            let budget = NucleusBudget {
                size: *size,
                depth: *depth,
                closure_cap: closure.closure_cap,
            };
            let report = nucleus(&aut, &budget);
            let mut text = format!(
                "status: {:?}\nrounds: {}\nclasses: {}\ncore size: {}\n",
                report.status, report.rounds, report.classes, report.core_size
            );
            if let Some(core) = &report.minimal_nucleus {
                let names: Vec<String> = core.iter().map(ToString::to_string).collect();
                let _ = writeln!(text, "minimal nucleus: {{{}}}", names.join(", "));
            }
            if let Some(note) = &report.note {
                let _ = writeln!(text, "note: {note}");
            }
            Ok(Output::new(text, to_value(&report)))
        }
        Command::Ball {
            source,
            depth,
            max_vertices,
            distance,
            radius,
        } => {
            let aut = load(cli, source)?;
            let ball = build_ball(&aut, *depth, *max_vertices)?;
            let max_degree = (0..ball.num_vertices()).map(|v| ball.degree(v)).max().unwrap_or(0);
            let mut text = format!(
                "depth: {depth}\nvertices: {}\nhorizontal edges: {}\nvertical edges: {}\nmax degree: {max_degree}\n",
                ball.num_vertices(),
                ball.horizontal_edges().count(),
                ball.vertical_edges().count()
            );
            let mut value = json!({
                "depth": depth,
                "vertices": ball.num_vertices(),
                "horizontal_edges": ball.horizontal_edges().count(),
                "vertical_edges": ball.vertical_edges().count(),
                "max_degree": max_degree,
            });
            if let Some(pair) = distance {
                let (u, v) = (letters(&aut, &pair[0])?, letters(&aut, &pair[1])?);
                let d = match radius {
                    Some(r) => ball.outside_ball_distance(&u, &v, *r)?,
                    None => ball.distance(&u, &v)?,
                };
                let shown = d.map_or("unreachable".to_string(), |d| d.to_string());
                let _ = writeln!(text, "distance: {shown}");
                value["distance"] = json!(d);
            }
            let mut out = Output::new(text, value);
            out.dot = Some(ball.to_dot());
            Ok(out)
        }
        Command::Divergence {
            source,
            g,
            v,
            w,
            n,
            k_max,
            depth,
            min_distance,
            max_n,
            max_vertices,
        } => {
            let aut = load(cli, source)?;
            let g = GroupElement::parse(&aut, g)?;
            let v = letters(&aut, v)?;
            let ball = build_ball(&aut, *depth, *max_vertices)?;
            let (w, n) = match (w, n) {
                (Some(w), Some(n)) => (letters(&aut, w)?, *n),
                _ => {
                    let room = depth.saturating_sub(v.len() * k_max);
                    let (w, n, _) = find_displacement(&ball, &g, room, *max_n, *min_distance)?.ok_or_else(|| {
                        Failure::new(
                            Failure::CHECK_FAILED,
                            format!("no w of length <= {room} and n <= {max_n} with d(w, g^n(w)) >= {min_distance} in a depth-{depth} ball"),
                        )
                    })?;
                    (w, n)
                }
            };
            let report = divergence_experiment(&ball, &g, &v, &w, n, *k_max)?;
            let mut text = format!(
                "g: {}\nv: {}\nw: {}\nn: {n}\ng^n(w): {}\nd(w, g^n(w)): {}\n",
                report.g,
                format_letters(&report.v),
                format_letters(&report.w),
                format_letters(&report.gn_w),
                report.base_distance.map_or("unreachable".to_string(), |d| d.to_string())
            );
            text.push_str("k  radius  corridor  measured\n");
            for r in &report.rows {
                let m = r.measured.map_or("-".to_string(), |m| m.to_string());
                let _ = writeln!(text, "{:<2} {:<7} {:<9} {m}", r.k, r.radius, r.corridor);
            }
            let _ = writeln!(text, "bounded: {}", report.divergence_bounded());
            let mut value = to_value(&report);
            value["divergence_bounded"] = json!(report.divergence_bounded());
            let mut out = Output::new(text, value);
            out.csv = Some(report.to_csv());
            Ok(out)
        }
        Command::Catalogue { action } => catalogue_command(cli, action),
        Command::Dot { source, product, minimize: min } => {
            let aut = load(cli, source)?;
            let mut target = match product {
                Some(expr) => {
                    let g = GroupElement::parse(&aut, expr)?;
                    product_automaton(&aut, g.word())?
                }
                None => aut.clone(),
            };
            if *min {
                target = minimize(&target).automaton;
            }
            let dot = render_dot(&target);
            let mut out = Output::new(serialize_automaton(&target), json!({ "dot": dot }));
            out.dot = Some(dot);
            Ok(out)
        }
        Command::Properties {
            source,
            seed,
            samples,
            max_element_len,
            max_word_len,
        } => {
            let aut = load(cli, source)?;
            let config = PropertyConfig {
                seed: *seed,
                samples: *samples,
                max_element_len: *max_element_len,
                max_word_len: *max_word_len,
            };
            let report = check_properties(&aut, &config);
            let mut text = format!("seed {seed}: {} checks, {} failures\n", report.checks_run, report.failures.len());
            for f in &report.failures {
                let _ = writeln!(text, "  {} (sample {}): g={} h={} u={} v={}: {}", f.property, f.sample, f.g, f.h, f.u, f.v, f.detail);
            }
            let failed = !report.passed();
            Ok(Output::new(text, to_value(&report)).failed_if(failed))
        }
    }
}

fn info(aut: &MealyAutomaton) -> Result<Output, Failure> {
    let k = aut.alphabet_size();
    let mut text = format!("automaton: {}\nalphabet: {k}\nstates: {}\ninvertible: yes\n", aut.name(), aut.num_states());
    let mut states = Vec::new();
    for s in 0..aut.num_states() {
        let row = aut.output_row(s);
        let moves: Vec<String> = (0..k)
            .map(|x| {
                let (y, t) = aut.transition(s, x as u8);
                format!("{x}->{y}@{}", aut.label(t))
            })
            .collect();
        let _ = writeln!(
            text,
            "state {}: {} [{}]",
            aut.label(s),
            if aut.is_active(s) { "active" } else { "inactive" },
            moves.join(" ")
        );
        states.push(json!({
            "label": aut.label(s),
            "active": aut.is_active(s),
            "output": row,
            "next": (0..k).map(|x| aut.label(aut.transition(s, x as u8).1)).collect::<Vec<_>>(),
        }));
    }
    let minimal = minimize(aut).automaton.num_states();
    let _ = writeln!(text, "minimal states: {minimal}");
    Ok(Output::new(
        text,
        json!({
            "automaton": aut.name(),
            "alphabet": k,
            "invertible": true,
            "states": states,
            "minimal_states": minimal,
        }),
    ))
}

fn witness(cli: &Cli, action: &WitnessCommand) -> Result<Output, Failure> {
    match action {
        WitnessCommand::Check { source, g, v, budget } => {
            let aut = load(cli, source)?;
            let g = GroupElement::parse(&aut, g)?;
            let v = letters(&aut, v)?;
            if v.is_empty() {
                return Err(Failure::new(Failure::USAGE, "v must be nonempty"));
            }
            let r = check_witness(&g, &v, &order_budget(budget));
            let mut text = format!(
                "automaton: {}\ng: {}\nv: {}\nfixes_v: {}\nsection_is_self: {}\norder: {}\nverdict: {:?}\n",
                r.automaton,
                r.g,
                format_letters(&r.v),
                r.fixes_v,
                r.section_is_self,
                describe_order(&r.order),
                r.verdict
            );
            if let Some(note) = &r.note {
                let _ = writeln!(text, "note: {note}");
            }
            let rejected = r.verdict == Verdict::Rejected;
            Ok(Output::new(text, to_value(&r)).failed_if(rejected))
        }
        WitnessCommand::Search {
            source,
            max_word_len,
            max_v_len,
            budget,
        } => {
            if *max_word_len == 0 || *max_v_len == 0 {
                return Err(Failure::new(Failure::USAGE, "search lengths must be at least 1"));
            }
            let aut = load(cli, source)?;
            let out = search_witness(&aut, *max_word_len, *max_v_len, &order_budget(budget));
            let mut text = String::new();
            for r in &out.reports {
                let _ = writeln!(text, "{} {} {:?}", r.g, format_letters(&r.v), r.verdict);
            }
            for u in &out.undecided {
                let _ = writeln!(text, "undecided {} {}: {}", u.g, u.v, u.note);
            }
            let _ = writeln!(text, "{} pairs found among {} candidates", out.reports.len(), out.candidates_checked);
            Ok(Output::new(text, to_value(&out)))
        }
    }
}

fn catalogue_command(cli: &Cli, action: &CatalogueCommand) -> Result<Output, Failure> {
    match action {
        CatalogueCommand::List => {
            let entries = catalogue_entries(cli)?;
            let mut text = String::new();
            let mut rows = Vec::new();
            for e in &entries {
                let _ = writeln!(text, "{:<5} g={} v={} checks={}", e.key, e.witness.0, format_letters(&e.witness.1), e.checks.len());
                rows.push(json!({ "key": e.key, "g": e.witness.0, "v": format_letters(&e.witness.1), "checks": e.checks.len() }));
            }
            Ok(Output::new(text, Value::Array(rows)))
        }
        CatalogueCommand::Verify { key } => {
            let entries = if key == "all" {
                catalogue_entries(cli)?
            } else {
                vec![catalogue_entry(cli, key)?]
            };
            let mut text = String::new();
            let mut reports = Vec::new();
            let mut coverage: BTreeMap<&'static str, usize> = BTreeMap::new();
            let mut passed = 0;
            for e in &entries {
                let report = catalogue::run_suite(e);
                let ok = report.results.iter().filter(|r| r.passed).count();
                let _ = writeln!(text, "{}: {ok}/{} checks pass", e.key, report.results.len());
                for f in report.failures() {
                    let _ = writeln!(text, "  FAIL {} [{}]: got {}", f.description, f.check.kind(), f.detail.as_deref().unwrap_or("?"));
                }
                for (op, n) in e.coverage() {
                    *coverage.entry(op).or_insert(0) += n;
                }
                passed += usize::from(report.passed());
                reports.push(report);
            }
            let _ = writeln!(text, "{passed}/{} suites pass", entries.len());
            let ops: Vec<String> = coverage.iter().map(|(op, n)| format!("{op}={n}")).collect();
            let _ = writeln!(text, "coverage: {}", ops.join(" "));
            let value = json!({
                "suites": to_value(&reports),
                "passed": passed,
                "total": entries.len(),
                "coverage": to_value(&coverage),
            });
            let failed = passed != entries.len();
            Ok(Output::new(text, value).failed_if(failed))
        }
    }
}
