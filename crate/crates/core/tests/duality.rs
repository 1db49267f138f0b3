//! The duality D on each variety against the published formulas and lists.

mod common;

use a2var::duality::{
    antipode_bits, dual_point, dual_point_numeric, duality_exchanges_s_q, duality_map,
    self_dual_points, MAX_CONJUGATE,
};
use a2var::moddef::literature_actions;
use a2var::{reduction, ActionMatrix, BitFamily, Case, CoordinateMap, Error, Exec, Point, Variety};
use common::{eval_at, fixture_map, fixture_points};

const CASES: [(Case, &str); 3] = [
    (Case::Symmetric, "sym"),
    (Case::General, "gen"),
    (Case::BOnly, "b"),
];

#[test]
fn duality_matches_published_formulas_pointwise() {
    for (case, name) in CASES {
        let red = reduction(case).unwrap();
        let v = Variety::of(red);
        let d = duality_map(red).unwrap();
        let published = fixture_map(red, &format!("{name}_dual.txt"));
        assert_eq!(published.len(), v.dim(), "{case}");
        for p in v.points(Exec::default()) {
            let image = d.apply(&v, &p).unwrap();
            let want: Vec<bool> = published.iter().map(|(_, f)| eval_at(&v, f, &p)).collect();
            let names: Vec<&str> = published.iter().map(|(n, _)| n.as_str()).collect();
            assert_eq!(names, v.names(), "{case}");
            assert_eq!(image.0, want, "{case} at {p}");
        }
    }
}

#[test]
fn duality_is_an_involution_of_each_variety() {
    for (case, _) in CASES {
        let red = reduction(case).unwrap();
        let v = Variety::of(red);
        let d = duality_map(red).unwrap();
        for p in v.points(Exec::default()) {
            let dp = dual_point(&v, &d, &p).unwrap();
            assert!(v.contains(&dp).unwrap(), "{case}: D({p}) left the variety");
            assert_eq!(d.apply(&v, &dp).unwrap(), p, "{case}");
        }
    }
}

#[test]
fn symbolic_and_numeric_duality_agree() {
    for (case, _) in CASES {
        let red = reduction(case).unwrap();
        let v = Variety::of(red);
        let d = duality_map(red).unwrap();
        let points = v.points(Exec::default());
        let ok = Exec::default().map(&points, |p| {
            dual_point_numeric(red, p).unwrap() == d.apply(&v, p).unwrap()
        });
        assert!(ok.into_iter().all(|x| x), "{case}");
    }
}

/// χ(Sq^a) through the other recursion χ(Sq^a) = Σ_{k<a} χ(Sq^k) Sq^{a-k}.
fn antipode_other_side(fam: &BitFamily) -> BitFamily {
    let top = fam.top();
    let mut chi = fam.clone();
    for a in 2..=MAX_CONJUGATE {
        for j in 0..=top.saturating_sub(a) {
            let mut acc = fam.get(a, j).clone();
            for k in 1..a {
                acc.add_assign(&fam.get(a - k, j).compose(chi.get(k, j + a - k)).unwrap())
                    .unwrap();
            }
            chi.set(a, j, acc);
        }
    }
    chi
}

#[test]
fn conjugation_recursions_agree_on_module_actions() {
    for (case, _) in CASES {
        let red = reduction(case).unwrap();
        let v = Variety::of(red);
        for p in v.points(Exec::default()).iter().step_by(7) {
            let fam = red.numeric_family(&p.0).unwrap();
            assert_eq!(
                antipode_bits(&fam).unwrap(),
                antipode_other_side(&fam),
                "{case} at {p}"
            );
        }
    }
}

#[test]
fn self_dual_points_are_published() {
    for (case, name) in [(Case::Symmetric, "sym"), (Case::General, "gen")] {
        let red = reduction(case).unwrap();
        let v = Variety::of(red);
        let found = self_dual_points(&v, &duality_map(red).unwrap(), Exec::default());
        assert_eq!(
            found,
            fixture_points(&format!("{name}_self_dual.txt")),
            "{case}"
        );
    }
    let b = reduction(Case::BOnly).unwrap();
    let vb = Variety::of(b);
    assert_eq!(
        self_dual_points(&vb, &duality_map(b).unwrap(), Exec::Sequential).len(),
        8
    );
}

#[test]
fn inclusion_commutes_with_duality() {
    let (sym, gen) = (
        reduction(Case::Symmetric).unwrap(),
        reduction(Case::General).unwrap(),
    );
    let (vs, vg) = (Variety::of(sym), Variety::of(gen));
    let (ds, dg) = (duality_map(sym).unwrap(), duality_map(gen).unwrap());
    let incl = CoordinateMap::sym_to_gen(sym).unwrap();
    for p in vs.points(Exec::default()) {
        let lhs = dg.apply(&vg, &incl.apply(&vs, &p).unwrap()).unwrap();
        let rhs = incl.apply(&vs, &ds.apply(&vs, &p).unwrap()).unwrap();
        assert_eq!(lhs, rhs, "at {p}");
    }
}

#[test]
fn duality_exchanges_submodule_and_quotient() {
    let (gen, b) = (
        reduction(Case::General).unwrap(),
        reduction(Case::BOnly).unwrap(),
    );
    let ok = duality_exchanges_s_q(
        &Variety::of(gen),
        &duality_map(gen).unwrap(),
        &Variety::of(b),
        &duality_map(b).unwrap(),
        &CoordinateMap::q(gen).unwrap(),
        &CoordinateMap::s(gen).unwrap(),
        Exec::default(),
    )
    .unwrap();
    assert!(ok);
}

#[test]
fn published_actions_and_their_duals() {
    let report = literature_actions().unwrap();
    assert_eq!(report.symmetric_zero_dual.to_string(), "1,1,1,1,0,0,1,1,0");
    assert_eq!(report.b_zero_dual.to_string(), "1,1,1,1,0");
    assert_eq!(report.q_of_symmetric_zero, report.b_zero);
    assert!(report.q_of_symmetric_zero_is_b_zero);
}

#[test]
fn dual_point_rejects_points_off_the_variety() {
    let red = reduction(Case::Symmetric).unwrap();
    let v = Variety::of(red);
    let d = duality_map(red).unwrap();
    let off: Point = "0,1,0,0,0,0,0,0,0".parse().unwrap();
    assert_eq!(dual_point(&v, &d, &off), Err(Error::OffVariety));
    let short: Point = "0,1".parse().unwrap();
    assert_eq!(
        dual_point(&v, &d, &short),
        Err(Error::PointLength {
            expected: 9,
            got: 2
        })
    );
}
