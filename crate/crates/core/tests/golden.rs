mod common;

use common::{load, load_rel};
use nfa_bisim::bisim::{greatest_backward_forward_bisim, greatest_forward_bisim, greatest_weak_forward_bisim};
use nfa_bisim::equivalence::{fb_equivalent, language_equivalent, wfb_equivalent};
use nfa_bisim::format::print_nfa;
use nfa_bisim::relcalc::{is_partial_uniform, BoolRel};
use nfa_bisim::samples;

#[test]
fn golden_files_match_samples() {
    let pairs = [
        ("forward", samples::forward_pair()),
        ("bfb", samples::backward_forward_pair()),
        ("language", samples::language_pair()),
        ("weak", samples::weak_pair()),
        ("weak_shifted", samples::weak_pair_shifted_initial()),
    ];
    for (name, (a, b)) in pairs {
        assert_eq!(load(&format!("{name}_a")), a, "{name}_a");
        assert_eq!(load(&format!("{name}_b")), b, "{name}_b");
    }
}

#[test]
fn forward_b_transitions_match_matrix() {
    let b = load("forward_b");
    let x =
        BoolRel::from_rows(&[&[1, 1, 0, 1, 0], &[1, 1, 0, 1, 0], &[1, 1, 0, 0, 0], &[0, 0, 1, 1, 1], &[1, 1, 0, 0, 0]]);
    assert_eq!(*b.delta(0), x);
    assert!(print_nfa(&b).contains("initial 0 1\nterminal 2 4\n"));
}

#[test]
fn forward_example_trace() {
    let r = greatest_forward_bisim(&load("forward_a"), &load("forward_b")).unwrap();
    assert_eq!(r.trace[0], load_rel("forward_phi1"));
    assert_eq!(r.trace[1], load_rel("forward_phi2"));
    assert_eq!(r.relation(), Some(&load_rel("forward_phi2")));
}

#[test]
fn backward_forward_example() {
    let (a, b) = (load("bfb_a"), load("bfb_b"));
    let reference = load_rel("bfb_reference");
    assert!(greatest_forward_bisim(&a, &b).unwrap().failure().is_some());
    assert!(!is_partial_uniform(&reference));
    let greatest = greatest_backward_forward_bisim(&a, &b).unwrap();
    let g = greatest.relation().unwrap();
    assert!(reference.is_subset_of(g).unwrap());
    assert_eq!(*g, samples::backward_forward_greatest());
}

#[test]
fn language_example() {
    let (a, b) = (load("language_a"), load("language_b"));
    assert!(!fb_equivalent(&a, &b).unwrap().equivalent);
    assert!(language_equivalent(&a, &b, 6).unwrap().equivalent);
    let lang: Vec<String> = a.bounded_language(6).iter().map(|u| a.format_word(u)).collect();
    assert_eq!(lang, ["x"]);
}

#[test]
fn weak_example() {
    let (a, b) = (load("weak_a"), load("weak_b"));
    assert_eq!(greatest_weak_forward_bisim(&a, &b).unwrap().relation(), Some(&load_rel("weak_mu")));
    assert!(wfb_equivalent(&a, &b).unwrap().equivalent);
    assert!(!fb_equivalent(&a, &b).unwrap().equivalent);
    let (a, b) = (load("weak_shifted_a"), load("weak_shifted_b"));
    assert!(!wfb_equivalent(&a, &b).unwrap().equivalent);
    let v = language_equivalent(&a, &b, 6).unwrap();
    assert!(v.equivalent);
    assert_eq!(a.bounded_language(6).len(), 1);
    assert!(a.bounded_language(6).iter().next().unwrap().is_empty());
}
