//! F2 points of the varieties, their tables, and the maps between them.

use std::fmt;
use std::str::FromStr;

use serde::Serialize;

use crate::error::Error;
use crate::exec::Exec;
use crate::milnor::{q2_mult, MilnorExponent};
use crate::pipeline::{Case, Reduction};
use crate::poly::{Poly, Var, VarTable};

/// Where a free coordinate lives: the coefficient of `Sq(target)` in
/// `Sq^op · Sq(source)`.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Housing {
    pub var: &'static str,
    pub op: usize,
    pub source: MilnorExponent,
    pub target: MilnorExponent,
}

const fn h(var: &'static str, op: usize, s: (u8, u8, u8), t: (u8, u8, u8)) -> Housing {
    Housing {
        var,
        op,
        source: MilnorExponent::raw(s.0, s.1, s.2),
        target: MilnorExponent::raw(t.0, t.1, t.2),
    }
}

const SYM_HOUSING: [Housing; 9] = [
    h("a1", 8, (0, 0, 0), (5, 1, 0)),
    h("a2", 8, (0, 0, 0), (2, 2, 0)),
    h("a13", 8, (4, 0, 0), (6, 2, 0)),
    h("a23", 8, (0, 2, 0), (5, 3, 0)),
    h("b1", 8, (0, 0, 0), (1, 0, 1)),
    h("c1", 16, (0, 0, 0), (7, 3, 0)),
    h("d1", 16, (0, 0, 0), (6, 1, 1)),
    h("d2", 16, (0, 0, 0), (3, 2, 1)),
    h("d3", 16, (0, 0, 0), (0, 3, 1)),
];

const GEN_HOUSING: [Housing; 13] = [
    h("a1", 8, (0, 0, 0), (5, 1, 0)),
    h("a2", 8, (0, 0, 0), (2, 2, 0)),
    h("a3", 8, (0, 0, 0), (1, 0, 1)),
    h("a21", 8, (4, 0, 0), (6, 2, 0)),
    h("a47", 8, (0, 2, 0), (5, 3, 0)),
    h("a48", 8, (0, 2, 0), (7, 0, 1)),
    h("a60", 8, (0, 0, 1), (6, 3, 0)),
    h("a61", 8, (0, 0, 1), (5, 1, 1)),
    h("a62", 8, (0, 0, 1), (2, 2, 1)),
    h("b1", 16, (0, 0, 0), (7, 3, 0)),
    h("b2", 16, (0, 0, 0), (6, 1, 1)),
    h("b3", 16, (0, 0, 0), (3, 2, 1)),
    h("b4", 16, (0, 0, 0), (0, 3, 1)),
];

const B_HOUSING: [Housing; 5] = [
    h("a1", 8, (0, 0, 0), (5, 1, 0)),
    h("a2", 8, (0, 0, 0), (2, 2, 0)),
    h("a13", 8, (4, 0, 0), (6, 2, 0)),
    h("a23", 8, (2, 2, 0), (7, 3, 0)),
    h("c1", 16, (0, 0, 0), (7, 3, 0)),
];

/// Housing of every free coordinate of a case, in free-variable order.
pub fn housing(case: Case) -> &'static [Housing] {
    match case {
        Case::Symmetric => &SYM_HOUSING,
        Case::General => &GEN_HOUSING,
        Case::BOnly => &B_HOUSING,
    }
}

/// Coefficient of `Sq(target)` in `Sq^op · Sq(source)` in the reduced action.
pub fn action_entry(
    red: &Reduction,
    op: usize,
    source: MilnorExponent,
    target: MilnorExponent,
) -> Result<Poly, Error> {
    let alg = red.case.algebra();
    let bad = |r: MilnorExponent| Error::InvalidExponent(r.r1, r.r2, r.r3);
    let row = alg.index_of(source).ok_or_else(|| bad(source))?;
    let col = alg.index_of(target).ok_or_else(|| bad(target))?;
    if target.degree() != source.degree() + op {
        return Err(bad(target));
    }
    Ok(red.family.get(op, source.degree()).get(row, col).clone())
}

/// An F2 value per coordinate.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Point(pub Vec<bool>);

impl Serialize for Point {
    /// Serialized as a list of 0/1 integers.
    fn serialize<S: serde::Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        self.bits().serialize(s)
    }
}

impl Point {
    pub fn zero(len: usize) -> Self {
        Self(vec![false; len])
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn bits(&self) -> Vec<u8> {
        self.0.iter().map(|&b| u8::from(b)).collect()
    }

    /// Point from 0/1 integers.
    pub fn from_bits(bits: &[u8]) -> Result<Self, Error> {
        bits.iter()
            .map(|&b| match b {
                0 => Ok(false),
                1 => Ok(true),
                v => Err(Error::PointValue(u32::from(v))),
            })
            .collect::<Result<_, _>>()
            .map(Self)
    }

    pub fn concat(&self, other: &Point) -> Point {
        Point(self.0.iter().chain(&other.0).copied().collect())
    }
}

impl fmt::Display for Point {
    /// Comma-separated bits, e.g. `1,1,1,1,0,0,1,1,0`.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s: Vec<&str> = self.0.iter().map(|&b| if b { "1" } else { "0" }).collect();
        f.write_str(&s.join(","))
    }
}

impl FromStr for Point {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self, Error> {
        let err = |reason: &str| Error::MalformedPoint {
            input: s.to_string(),
            reason: reason.to_string(),
        };
        if s.trim().is_empty() {
            return Err(err("empty point"));
        }
        s.split(',')
            .map(|t| match t.trim() {
                "0" => Ok(false),
                "1" => Ok(true),
                other => match other.parse::<u32>() {
                    Ok(v) => Err(Error::PointValue(v)),
                    Err(_) => Err(err("expected 0 or 1")),
                },
            })
            .collect::<Result<_, _>>()
            .map(Point)
    }
}

/// Free coordinates and relations cutting out a variety.
#[derive(Clone, Debug)]
pub struct Variety {
    pub case: Case,
    pub table: VarTable,
    pub vars: Vec<Var>,
    pub relations: Vec<Poly>,
}

impl Variety {
    pub fn of(red: &Reduction) -> Self {
        Self {
            case: red.case,
            table: red.table.clone(),
            vars: red.free.clone(),
            relations: red.relations.clone(),
        }
    }

    /// Restriction to the coordinates whose names start with one of the
    /// prefixes, keeping the relations among them only.
    pub fn restrict(&self, prefixes: &[char]) -> Self {
        let keep = |v: &Var| prefixes.iter().any(|&c| self.table.name(*v).starts_with(c));
        let vars: Vec<Var> = self.vars.iter().copied().filter(keep).collect();
        let relations = self
            .relations
            .iter()
            .filter(|r| r.vars().iter().all(keep))
            .cloned()
            .collect();
        Self {
            case: self.case,
            table: self.table.clone(),
            vars,
            relations,
        }
    }

    /// The Sq^8 part of the variety.
    pub fn sq8(&self) -> Self {
        self.restrict(self.case.sq8_prefixes())
    }

    /// The Sq^16 part of the variety.
    pub fn sq16(&self) -> Self {
        let sq8 = self.case.sq8_prefixes();
        let rest: Vec<char> = ['a', 'b', 'c', 'd']
            .into_iter()
            .filter(|c| !sq8.contains(c))
            .collect();
        self.restrict(&rest)
    }

    /// True iff every relation mentions only Sq^8 or only Sq^16 coordinates.
    pub fn splits(&self) -> bool {
        self.sq8().relations.len() + self.sq16().relations.len() == self.relations.len()
    }

    pub fn names(&self) -> Vec<&str> {
        self.vars.iter().map(|&v| self.table.name(v)).collect()
    }

    pub fn dim(&self) -> usize {
        self.vars.len()
    }

    pub fn position(&self, name: &str) -> Option<usize> {
        self.names().iter().position(|&n| n == name)
    }

    /// Values for the whole variable table, unlisted variables set to 0.
    pub fn embed(&self, p: &Point) -> Result<Vec<bool>, Error> {
        if p.len() != self.vars.len() {
            return Err(Error::PointLength {
                expected: self.vars.len(),
                got: p.len(),
            });
        }
        let mut full = vec![false; self.table.len()];
        for (&v, &x) in self.vars.iter().zip(&p.0) {
            full[v.index()] = x;
        }
        Ok(full)
    }

    pub fn contains(&self, p: &Point) -> Result<bool, Error> {
        let full = self.embed(p)?;
        Ok(self.relations.iter().all(|r| !r.eval(&full)))
    }

    /// All F2 points in lexicographic order of the value vector.
    pub fn points(&self, exec: Exec) -> Vec<Point> {
        let k = self.vars.len();
        let all: Vec<Point> = (0..1u64 << k)
            .map(|m| Point((0..k).map(|i| m >> (k - 1 - i) & 1 == 1).collect()))
            .collect();
        exec.filter(all, |p| self.contains(p).unwrap_or(false))
    }

    /// Table in the `   1 : [ 0, 0,  0]` layout.
    pub fn table(&self, points: &[Point], style: TableStyle) -> String {
        format_table(&self.names(), points, style)
    }
}

/// Column layout for point tables.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum TableStyle {
    /// Each column as wide as its header: `[a1,a2,a13]` / `[ 0, 0,  1]`.
    Compact,
    /// Every column as wide as the widest header, closed by ` ]`.
    Padded,
}

impl TableStyle {
    pub fn for_case(case: Case) -> Self {
        match case {
            Case::General => TableStyle::Padded,
            Case::Symmetric | Case::BOnly => TableStyle::Compact,
        }
    }
}

pub fn format_table(names: &[&str], points: &[Point], style: TableStyle) -> String {
    let widest = names.iter().map(|n| n.len()).max().unwrap_or(1);
    let width = |n: &str| match style {
        TableStyle::Compact => n.len(),
        TableStyle::Padded => widest,
    };
    let close = match style {
        TableStyle::Compact => "]",
        TableStyle::Padded => " ]",
    };
    let header: Vec<String> = names
        .iter()
        .map(|n| format!("{n:>w$}", w = width(n)))
        .collect();
    let mut out = format!("       [{}{close}\n", header.join(","));
    for (i, p) in points.iter().enumerate() {
        let cells: Vec<String> = names
            .iter()
            .zip(&p.0)
            .map(|(n, &b)| format!("{:>w$}", u8::from(b), w = width(n)))
            .collect();
        out.push_str(&format!("{:>4} : [{}{close}\n", i + 1, cells.join(",")));
    }
    out
}

/// Map between varieties given by one source polynomial per target coordinate.
#[derive(Clone, Debug)]
pub struct CoordinateMap {
    pub name: &'static str,
    pub source: Case,
    pub target: Case,
    /// Target coordinate names in free-variable order.
    pub targets: Vec<&'static str>,
    pub images: Vec<Poly>,
}

impl CoordinateMap {
    pub fn apply(&self, source: &Variety, p: &Point) -> Result<Point, Error> {
        let full = source.embed(p)?;
        Ok(Point(self.images.iter().map(|q| q.eval(&full)).collect()))
    }

    pub fn image(&self, name: &str) -> Option<&Poly> {
        self.targets
            .iter()
            .position(|&t| t == name)
            .map(|i| &self.images[i])
    }

    fn derive(
        name: &'static str,
        source: &Reduction,
        target: Case,
        locate: impl Fn(&Housing) -> (MilnorExponent, MilnorExponent),
    ) -> Result<Self, Error> {
        let hs = housing(target);
        let images = hs
            .iter()
            .map(|h| {
                let (x, y) = locate(h);
                action_entry(source, h.op, x, y)
            })
            .collect::<Result<_, _>>()?;
        Ok(Self {
            name,
            source: source.case,
            target,
            targets: hs.iter().map(|h| h.var).collect(),
            images,
        })
    }

    /// Inclusion of symmetric actions among all actions: each general
    /// coordinate read off the symmetric action.
    pub fn sym_to_gen(sym: &Reduction) -> Result<Self, Error> {
        Self::derive("sym_to_gen", sym, Case::General, |h| (h.source, h.target))
    }

    /// The action on the quotient B(2) = A(2)/A(2)Q2.
    pub fn q(gen: &Reduction) -> Result<Self, Error> {
        Self::derive("q", gen, Case::BOnly, |h| (h.source, h.target))
    }

    /// The action on the submodule Im Q2, desuspended to B(2).
    pub fn s(gen: &Reduction) -> Result<Self, Error> {
        Self::derive("s", gen, Case::BOnly, |h| {
            (
                q2_mult(h.source).expect("B(2) source"),
                q2_mult(h.target).expect("B(2) target"),
            )
        })
    }
}

/// Membership in V_Q: the general action preserves Im Q2 iff a60 = 0.
pub fn vq_member(gen: &Variety, p: &Point) -> Result<bool, Error> {
    let i = gen
        .position("a60")
        .ok_or_else(|| Error::UnknownVariable("a60".into()))?;
    if p.len() != gen.dim() {
        return Err(Error::PointLength {
            expected: gen.dim(),
            got: p.len(),
        });
    }
    Ok(!p.0[i])
}

/// f(a1, a2, a13, z) = z(a2 + a2 a13) + a2 + a1 a2 + a1 a13 + a2 a13.
fn affine_f_value(a1: bool, a2: bool, a13: bool, z: bool) -> bool {
    (z & (a2 ^ (a2 & a13))) ^ a2 ^ (a1 & a2) ^ (a1 & a13) ^ (a2 & a13)
}

/// Parameterization of the symmetric Sq^8 points by F2^4:
/// (a1, a2, a13, z) -> (a1, a2, a13, z + f, f).
pub fn affine_f(q: [bool; 4]) -> [bool; 5] {
    let [a1, a2, a13, z] = q;
    let f = affine_f_value(a1, a2, a13, z);
    [a1, a2, a13, z ^ f, f]
}

/// Inverse of [`affine_f`]: (a1, a2, a13, a23, b1) -> (a1, a2, a13, a23 + b1).
pub fn affine_g(p: [bool; 5]) -> [bool; 4] {
    let [a1, a2, a13, a23, b1] = p;
    [a1, a2, a13, a23 ^ b1]
}

/// Coordinates of `p` (a point of `v`) at the free variables of `sub`.
pub fn project(v: &Variety, sub: &Variety, p: &Point) -> Result<Point, Error> {
    sub.names()
        .iter()
        .map(|n| {
            v.position(n)
                .map(|i| p.0[i])
                .ok_or_else(|| Error::UnknownVariable(n.to_string()))
        })
        .collect::<Result<_, _>>()
        .map(Point)
}

/// A Sq^8 point of V_B with the Sq^8 points of V_sym inducing it.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Fiber {
    pub b: Point,
    pub lifts: Vec<Point>,
}

/// The fibers of q ∘ sym_to_gen on the Sq^8 parts, one per Sq^8 point of V_B.
pub fn sq8_fibers(
    sym: &Reduction,
    gen: &Reduction,
    b: &Reduction,
    exec: Exec,
) -> Result<Vec<Fiber>, Error> {
    let (vs, vg, vb) = (Variety::of(sym), Variety::of(gen), Variety::of(b));
    let (vs8, vb8) = (vs.sq8(), vb.sq8());
    let incl = CoordinateMap::sym_to_gen(sym)?;
    let q = CoordinateMap::q(gen)?;
    let sym_points = vs.points(exec);
    let images = exec.map(&sym_points, |p| -> Result<(Point, Point), Error> {
        let img = q.apply(&vg, &incl.apply(&vs, p)?)?;
        Ok((project(&vb, &vb8, &img)?, project(&vs, &vs8, p)?))
    });
    let images = images.into_iter().collect::<Result<Vec<_>, _>>()?;
    Ok(vb8
        .points(exec)
        .into_iter()
        .map(|bp| {
            let mut lifts: Vec<Point> = images
                .iter()
                .filter(|(i, _)| *i == bp)
                .map(|(_, s)| s.clone())
                .collect();
            lifts.sort();
            lifts.dedup();
            Fiber { b: bp, lifts }
        })
        .collect())
}
