//! Fixture loading shared by the integration tests.
#![allow(dead_code)]

use a2var::{Point, Poly, Reduction, Variety};

pub fn fixture(name: &str) -> String {
    let path = format!("{}/tests/data/{name}", env!("CARGO_MANIFEST_DIR"));
    std::fs::read_to_string(&path).unwrap_or_else(|e| panic!("{path}: {e}"))
}

/// One polynomial per line, parsed in the case's variable table.
pub fn fixture_polys(red: &Reduction, name: &str) -> Vec<Poly> {
    fixture(name)
        .lines()
        .map(|l| red.table.parse(l).unwrap().boolean_nf())
        .collect()
}

/// Lines `name -> polynomial` as (name, polynomial) pairs.
pub fn fixture_map(red: &Reduction, name: &str) -> Vec<(String, Poly)> {
    fixture(name)
        .lines()
        .map(|l| {
            let (lhs, rhs) = l.split_once(" -> ").unwrap();
            (lhs.to_string(), red.table.parse(rhs).unwrap())
        })
        .collect()
}

/// Space-separated 0/1 rows as points.
pub fn fixture_points(name: &str) -> Vec<Point> {
    fixture(name)
        .lines()
        .map(|l| Point(l.split_whitespace().map(|t| t == "1").collect()))
        .collect()
}

/// Evaluate a polynomial in the free variables of `v` at `p`.
pub fn eval_at(v: &Variety, poly: &Poly, p: &Point) -> bool {
    poly.eval(&v.embed(p).unwrap())
}
