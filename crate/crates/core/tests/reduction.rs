//! The reduction of each case against the published counts, relation lists,
//! elimination sequences and dictionaries.

mod common;

use a2var::poly::safe;
use a2var::{reduction, run_case, Case, Exec, Poly, SubstMap};
use common::{fixture, fixture_polys};

fn step_counts(case: Case) -> Vec<(usize, usize, usize)> {
    reduction(case)
        .unwrap()
        .log
        .iter()
        .map(|l| (l.distinct, l.linear, l.rref))
        .collect()
}

#[test]
fn symmetric_step_counts() {
    assert_eq!(
        step_counts(Case::Symmetric),
        [(496, 452, 81), (95, 50, 19), (19, 0, 10)]
    );
}

#[test]
fn general_step_counts() {
    assert_eq!(
        step_counts(Case::General),
        [
            (564, 519, 105),
            (22, 3, 3),
            (17, 0, 0),
            (92, 45, 18),
            (22, 0, 0),
            (22, 0, 11)
        ]
    );
}

#[test]
fn b_step_counts() {
    assert_eq!(
        step_counts(Case::BOnly),
        [(66, 65, 23), (1, 0, 0), (1, 0, 0), (1, 0, 1)]
    );
}

#[test]
fn raw_counts_bound_distinct_counts() {
    for case in Case::ALL {
        for l in &reduction(case).unwrap().log[..] {
            assert!(
                l.raw_entries >= l.raw_nonzero && l.raw_nonzero >= l.distinct
                    || l.label == "nonlinear"
            );
        }
    }
}

#[test]
fn free_variables() {
    let names = |c| reduction(c).unwrap().free_names().join(",");
    assert_eq!(names(Case::Symmetric), "a1,a2,a13,a23,b1,c1,d1,d2,d3");
    assert_eq!(
        names(Case::General),
        "a1,a2,a3,a21,a47,a48,a60,a61,a62,b1,b2,b3,b4"
    );
    assert_eq!(names(Case::BOnly), "a1,a2,a13,a23,c1");
}

#[test]
fn variable_counts() {
    assert_eq!(reduction(Case::Symmetric).unwrap().table.len(), 119);
    assert_eq!(reduction(Case::General).unwrap().table.len(), 150);
    assert_eq!(reduction(Case::BOnly).unwrap().table.len(), 29);
}

fn check_dictionary(case: Case, file: &str) {
    let red = reduction(case).unwrap();
    let rows = red.dictionary_rows();
    let text = fixture(file);
    let mut lines: Vec<&str> = text.lines().collect();
    lines.sort_by_key(|l| l.split(' ').next().unwrap().parse::<usize>().unwrap());
    assert_eq!(rows.len(), lines.len());
    for (line, (idx, name, value)) in lines.iter().zip(&rows) {
        let mut it = line.splitn(3, ' ');
        let (want_idx, want_name, want_value) =
            (it.next().unwrap(), it.next().unwrap(), it.next().unwrap());
        assert_eq!(want_idx.parse::<usize>().unwrap(), *idx, "{line}");
        assert_eq!(want_name, name, "{line}");
        assert_eq!(
            red.table.parse(want_value).unwrap(),
            red.table.parse(value).unwrap(),
            "{line}"
        );
        assert_eq!(want_value, value, "display of {name}");
    }
}

#[test]
fn symmetric_dictionary_matches_published() {
    check_dictionary(Case::Symmetric, "sym_dictionary.txt");
}

#[test]
fn general_dictionary_matches_published() {
    check_dictionary(Case::General, "gen_dictionary.txt");
}

#[test]
fn dictionary_is_idempotent() {
    for case in Case::ALL {
        let red = reduction(case).unwrap();
        let twice = red
            .dictionary
            .map_images(|p| p.substitute(&red.dictionary).boolean_nf());
        assert_eq!(twice, red.dictionary, "{case}");
        for &v in &red.free {
            assert_eq!(red.dictionary.get(v), &Poly::var(v));
        }
    }
}

fn sorted(mut v: Vec<Poly>) -> Vec<Poly> {
    v.sort();
    v
}

#[test]
fn nonlinear_input_matches_published_relations() {
    for (case, file) in [
        (Case::Symmetric, "sym_relations.txt"),
        (Case::General, "gen_relations.txt"),
    ] {
        let red = reduction(case).unwrap();
        assert_eq!(
            sorted(red.penultimate.clone()),
            sorted(fixture_polys(red, file)),
            "{case}"
        );
    }
}

/// Every F2-linear combination of the polynomials, the empty one included.
fn span(polys: &[Poly]) -> Vec<Poly> {
    let mut out = vec![Poly::zero()];
    for p in polys {
        let more: Vec<Poly> = out.iter().map(|q| q.add(p)).collect();
        out.extend(more);
    }
    sorted(out)
}

#[test]
fn symmetric_final_relation_is_published() {
    let red = reduction(Case::Symmetric).unwrap();
    assert_eq!(red.relations, fixture_polys(red, "sym_final_relations.txt"));
}

#[test]
fn general_final_relations_span_the_published_ones() {
    let red = reduction(Case::General).unwrap();
    let published = fixture_polys(red, "gen_final_relations.txt");
    assert_eq!(red.relations.len(), 3);
    let ours = span(&red.relations);
    assert_eq!(ours.len(), 8, "relations are linearly independent");
    assert_eq!(ours, span(&published));
}

#[test]
fn b_has_no_relations() {
    assert!(reduction(Case::BOnly).unwrap().relations.is_empty());
}

/// Replay a published elimination sequence on the published relation list:
/// each chosen relation must be safe for its variable, and the survivors must
/// be the published final relations.
fn replay(case: Case, relations: &str, finals: &str, steps: &[(&str, usize)]) {
    let red = reduction(case).unwrap();
    let mut rels = fixture_polys(red, relations);
    for &(name, idx) in steps {
        let v = red.table.var(name).unwrap();
        let r = rels[idx - 1].clone();
        assert!(safe(v, &r), "{name} is not safe in r{idx}");
        let mut sub = SubstMap::identity(red.table.len());
        sub.set(v, r.add(&Poly::var(v)));
        for x in rels.iter_mut() {
            *x = x.substitute(&sub).boolean_nf();
            assert!(!x.mentions(v));
        }
    }
    let mut left: Vec<Poly> = rels.into_iter().filter(|p| !p.is_zero()).collect();
    left.sort();
    left.dedup();
    assert_eq!(left, red.relations);
    assert_eq!(span(&left), span(&fixture_polys(red, finals)));
    let ours: Vec<&str> = red.eliminations.iter().map(|e| e.var.as_str()).collect();
    let theirs: Vec<&str> = steps.iter().map(|s| s.0).collect();
    assert_eq!(ours, theirs);
}

#[test]
fn symmetric_published_elimination_replays() {
    replay(
        Case::Symmetric,
        "sym_relations.txt",
        "sym_final_relations.txt",
        &[
            ("d21", 12),
            ("d14", 1),
            ("d13", 9),
            ("b52", 4),
            ("b27", 16),
            ("b26", 10),
            ("b25", 2),
            ("b10", 14),
            ("b9", 19),
            ("a14", 5),
        ],
    );
}

#[test]
fn general_published_elimination_replays() {
    replay(
        Case::General,
        "gen_relations.txt",
        "gen_final_relations.txt",
        &[
            ("b26", 19),
            ("b22", 21),
            ("b15", 4),
            ("b14", 9),
            ("a102", 7),
            ("a90", 2),
            ("a50", 14),
            ("a49", 17),
            ("a24", 16),
            ("a23", 15),
            ("a22", 1),
        ],
    );
}

#[test]
fn sequential_and_parallel_reductions_agree() {
    for case in [Case::BOnly, Case::Symmetric] {
        let a = run_case(case, Exec::Sequential).unwrap();
        let b = run_case(case, Exec::Parallel).unwrap();
        assert_eq!(a.log, b.log);
        assert_eq!(a.dictionary, b.dictionary);
        assert_eq!(a.relations, b.relations);
    }
}
