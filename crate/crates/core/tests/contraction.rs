use selfsim::catalogue::{self, KEYS};
use selfsim::contraction::{check_witness, nucleus, search_witness, NucleusBudget, NucleusStatus, Verdict};
use selfsim::mealy::parse_automaton;
use selfsim::{GroupElement, MealyAutomaton, OrderBudget};

fn odometer() -> MealyAutomaton {
    parse_automaton("alphabet: 2\nstate a: 0->1@e ; 1->0@a\nstate e: 0->0@e ; 1->1@e\n").unwrap()
}

fn grigorchuk() -> MealyAutomaton {
    parse_automaton(
        "alphabet: 2
state a: 0->1@e ; 1->0@e
state b: 0->0@a ; 1->1@c
state c: 0->0@a ; 1->1@d
state d: 0->0@e ; 1->1@b
state e: 0->0@e ; 1->1@e
",
    )
    .unwrap()
}

fn member(set: &[GroupElement], g: &GroupElement) -> bool {
    set.iter().any(|h| h.equal(g).unwrap())
}

fn assert_closed_nucleus(aut: &MealyAutomaton, expected_size: usize) {
    let report = nucleus(aut, &NucleusBudget::default());
    assert_eq!(report.status, NucleusStatus::Stabilized);
    let n = report.minimal_nucleus.clone().unwrap();
    assert_eq!(n.len(), expected_size, "{:?}", n.iter().map(|g| g.to_string()).collect::<Vec<_>>());
    assert!(n.iter().any(|g| g.is_identity().unwrap()));
    for g in &n {
        assert!(member(&n, &g.invert()), "{g} has no inverse in the nucleus");
    }
    // Sections of products of nucleus elements fall back into it after a
    // few levels.
    let depth = 4;
    for g in &n {
        for h in &n {
            let gh = g.compose(h).unwrap();
            for i in 0..1usize << depth {
                let v: Vec<u8> = (0..depth).map(|j| ((i >> j) & 1) as u8).collect();
                assert!(member(&n, &gh.section(&v).unwrap()), "({g})({h})|{v:?}");
            }
        }
    }
}

#[test]
fn odometer_nucleus_is_closed() {
    assert_closed_nucleus(&odometer(), 3);
}

#[test]
fn grigorchuk_nucleus_is_closed() {
    assert_closed_nucleus(&grigorchuk(), 5);
}

#[test]
fn catalogue_witnesses_pass_both_conditions() {
    for entry in catalogue::entries() {
        let g = entry.witness_element();
        let report = check_witness(&g, &entry.witness.1, &OrderBudget::default());
        assert!(report.fixes_v && report.section_is_self, "{}", entry.key);
        assert!(report.order.is_infinite_evidence(), "{}", entry.key);
        assert_eq!(report.verdict, Verdict::NonContracting, "{}", entry.key);
    }
}

#[test]
fn finite_order_downgrades_to_rejected() {
    let aut = catalogue::get(887).unwrap().automaton;
    // b^2 = 1 in this group: it fixes 11 and is its own section there.
    let g = GroupElement::parse(&aut, "b*b").unwrap();
    let report = check_witness(&g, &[1, 1], &OrderBudget::default());
    assert!(report.fixes_v && report.section_is_self);
    assert!(report.order.is_finite());
    assert_eq!(report.verdict, Verdict::Rejected);
}

#[test]
fn search_is_deterministic() {
    let aut = catalogue::get(861).unwrap().automaton;
    let render = |aut| {
        search_witness(aut, 2, 3, &OrderBudget::default())
            .reports
            .iter()
            .map(|r| format!("{} {:?} {:?}", r.g, r.v, r.verdict))
            .collect::<Vec<_>>()
    };
    let first = render(&aut);
    assert!(!first.is_empty());
    assert_eq!(first, render(&aut));
}

#[test]
fn catalogue_suites_pass() {
    for key in KEYS {
        let report = catalogue::run_suite(&catalogue::get(key).unwrap());
        let failures: Vec<_> = report.failures().map(|f| f.description.clone()).collect();
        assert!(failures.is_empty(), "{key}: {failures:?}");
    }
}
