//! Published counts for each case, and a comparison against a fresh run.

use serde::Serialize;

use crate::duality::{duality_map, self_dual_points};
use crate::error::Error;
use crate::exec::Exec;
use crate::pipeline::{Case, Reduction};
use crate::variety::Variety;

/// Expected outcome of the reduction and enumeration of one case.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Published {
    /// (distinct, linear, reduced basis) per logged step; for the nonlinear
    /// step the last entry is the number of eliminations.
    pub steps: &'static [(usize, usize, usize)],
    pub eliminated: &'static [&'static str],
    pub free: &'static [&'static str],
    pub relations: usize,
    pub sq8_points: usize,
    pub sq16_points: usize,
    pub points: usize,
    pub self_dual: usize,
}

const SYMMETRIC: Published = Published {
    steps: &[(496, 452, 81), (95, 50, 19), (19, 0, 10)],
    eliminated: &[
        "d21", "d14", "d13", "b52", "b27", "b26", "b25", "b10", "b9", "a14",
    ],
    free: &["a1", "a2", "a13", "a23", "b1", "c1", "d1", "d2", "d3"],
    relations: 1,
    sq8_points: 16,
    sq16_points: 16,
    points: 256,
    self_dual: 16,
};

const GENERAL: Published = Published {
    steps: &[
        (564, 519, 105),
        (22, 3, 3),
        (17, 0, 0),
        (92, 45, 18),
        (22, 0, 0),
        (22, 0, 11),
    ],
    eliminated: &[
        "b26", "b22", "b15", "b14", "a102", "a90", "a50", "a49", "a24", "a23", "a22",
    ],
    free: &[
        "a1", "a2", "a3", "a21", "a47", "a48", "a60", "a61", "a62", "b1", "b2", "b3", "b4",
    ],
    relations: 3,
    sq8_points: 100,
    sq16_points: 16,
    points: 1600,
    self_dual: 40,
};

const B_ONLY: Published = Published {
    steps: &[(66, 65, 23), (1, 0, 0), (1, 0, 0), (1, 0, 1)],
    eliminated: &["a14"],
    free: &["a1", "a2", "a13", "a23", "c1"],
    relations: 0,
    sq8_points: 16,
    sq16_points: 2,
    points: 32,
    self_dual: 8,
};

pub fn published(case: Case) -> &'static Published {
    match case {
        Case::Symmetric => &SYMMETRIC,
        Case::General => &GENERAL,
        Case::BOnly => &B_ONLY,
    }
}

/// One disagreement between a computed and a published value.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Mismatch {
    pub what: String,
    pub expected: String,
    pub got: String,
}

fn compare<T: PartialEq + std::fmt::Debug>(
    out: &mut Vec<Mismatch>,
    what: &str,
    expected: T,
    got: T,
) {
    if expected != got {
        out.push(Mismatch {
            what: what.into(),
            expected: format!("{expected:?}"),
            got: format!("{got:?}"),
        });
    }
}

/// Every published value of the case that the reduction fails to reproduce.
pub fn check_published(red: &Reduction, exec: Exec) -> Result<Vec<Mismatch>, Error> {
    let want = published(red.case);
    let mut out = Vec::new();
    let steps: Vec<_> = red
        .log
        .iter()
        .map(|l| (l.distinct, l.linear, l.rref))
        .collect();
    compare(&mut out, "step counts", want.steps.to_vec(), steps);
    let eliminated: Vec<&str> = red.eliminations.iter().map(|e| e.var.as_str()).collect();
    compare(
        &mut out,
        "eliminated variables",
        want.eliminated.to_vec(),
        eliminated,
    );
    compare(
        &mut out,
        "free variables",
        want.free.to_vec(),
        red.free_names(),
    );
    compare(&mut out, "relations", want.relations, red.relations.len());
    let v = Variety::of(red);
    compare(
        &mut out,
        "Sq^8 points",
        want.sq8_points,
        v.sq8().points(exec).len(),
    );
    compare(
        &mut out,
        "Sq^16 points",
        want.sq16_points,
        v.sq16().points(exec).len(),
    );
    compare(&mut out, "points", want.points, v.points(exec).len());
    let d = duality_map(red)?;
    compare(
        &mut out,
        "self-dual points",
        want.self_dual,
        self_dual_points(&v, &d, exec).len(),
    );
    Ok(out)
}
