//! Row reduction of affine-linear relations over F2.

use super::{Poly, SubstMap, Var};
use crate::error::Error;

/// Reduced row-echelon basis of a set of linear relations. Each row has a
/// distinct leading (highest-precedence) variable that occurs in no other row.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LinearBasis {
    rows: Vec<Poly>,
    pivots: Vec<Var>,
    map: SubstMap,
}

#[derive(Clone)]
struct BitRow(Vec<u64>);

impl BitRow {
    fn new(width: usize) -> Self {
        Self(vec![0; width.div_ceil(64)])
    }
    fn get(&self, i: usize) -> bool {
        self.0[i / 64] >> (i % 64) & 1 == 1
    }
    fn flip(&mut self, i: usize) {
        self.0[i / 64] ^= 1 << (i % 64);
    }
    fn xor(&mut self, other: &BitRow) {
        self.0.iter_mut().zip(&other.0).for_each(|(a, b)| *a ^= b);
    }
    fn highest(&self, below: usize) -> Option<usize> {
        (0..below).rev().find(|&i| self.get(i))
    }
}

/// Reduce linear relations (constant terms allowed) over `nvars` variables.
/// Zero inputs are ignored; a reduced row equal to 1 is an inconsistency.
pub fn linear_rref(relations: &[Poly], nvars: usize) -> Result<LinearBasis, Error> {
    let konst = nvars;
    let mut rows: Vec<BitRow> = Vec::with_capacity(relations.len());
    for r in relations {
        assert!(
            r.degree().unwrap_or(0) <= 1,
            "linear_rref needs relations of degree <= 1"
        );
        let mut row = BitRow::new(nvars + 1);
        for m in r.terms() {
            match m.vars() {
                [] => row.flip(konst),
                [v] => row.flip(v.index()),
                _ => unreachable!(),
            }
        }
        rows.push(row);
    }

    let mut basis: Vec<(usize, BitRow)> = Vec::new();
    let mut rest = rows;
    for col in (0..nvars).rev() {
        let Some(pos) = rest.iter().position(|r| r.get(col)) else {
            continue;
        };
        let pivot = rest.swap_remove(pos);
        for r in rest.iter_mut().filter(|r| r.get(col)) {
            r.xor(&pivot);
        }
        for (_, b) in basis.iter_mut().filter(|(_, b)| b.get(col)) {
            b.xor(&pivot);
        }
        basis.push((col, pivot));
    }
    if rest.iter().any(|r| r.get(konst)) {
        return Err(Error::Inconsistent);
    }

    let to_poly = |r: &BitRow| {
        let mut p = Poly::constant(r.get(konst));
        let mut col = nvars;
        while let Some(c) = r.highest(col) {
            p.add_assign(&Poly::var(Var(c as u16)));
            col = c;
        }
        p
    };
    let mut map = SubstMap::identity(nvars);
    let mut out_rows = Vec::with_capacity(basis.len());
    let mut pivots = Vec::with_capacity(basis.len());
    for (col, row) in &basis {
        let p = to_poly(row);
        let v = Var(*col as u16);
        map.set(v, p.add(&Poly::var(v)));
        out_rows.push(p);
        pivots.push(v);
    }
    Ok(LinearBasis {
        rows: out_rows,
        pivots,
        map,
    })
}

impl LinearBasis {
    pub fn len(&self) -> usize {
        self.rows.len()
    }

    pub fn is_empty(&self) -> bool {
        self.rows.is_empty()
    }

    pub fn rows(&self) -> &[Poly] {
        &self.rows
    }

    pub fn pivots(&self) -> &[Var] {
        &self.pivots
    }

    /// The substitution pivot -> (pivot + row), identity elsewhere.
    pub fn substitution(&self) -> &SubstMap {
        &self.map
    }

    /// Normal form modulo the span: every pivot is rewritten in the others.
    pub fn nf(&self, p: &Poly) -> Poly {
        p.substitute(&self.map)
    }
}
