//! Module-definition files: a graded list of generators followed by the
//! Sq^i action on each, with 0-based generator indices.
//!
//! Generators are the Milnor basis elements of the algebra, ordered by degree
//! and then by this crate's within-degree basis order.

use std::fmt;
use std::str::FromStr;

use serde::Serialize;

use crate::duality::duality_map;
use crate::error::Error;
use crate::family::{BitFamily, MAX_OP};
use crate::milnor::Algebra;
use crate::pipeline::{reduction, verify_adem, Case, Reduction};
use crate::polymat::{ActionMatrix, BitMatrix};
use crate::variety::{CoordinateMap, Point, Variety};

/// `Sq^op` applied to generator `generator` hits the listed generators.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ActionLine {
    pub generator: usize,
    pub op: usize,
    pub targets: Vec<usize>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ModdefFile {
    pub degrees: Vec<usize>,
    pub actions: Vec<ActionLine>,
}

/// Degree of each generator and its position within that degree's basis.
fn generator_layout(alg: Algebra) -> Vec<(usize, usize)> {
    (0..=alg.top_degree())
        .flat_map(|n| (0..alg.dim(n)).map(move |k| (n, k)))
        .collect()
}

/// Global index of the first generator of each degree.
fn degree_offsets(alg: Algebra) -> Vec<usize> {
    (0..=alg.top_degree())
        .scan(0, |acc, n| {
            let start = *acc;
            *acc += alg.dim(n);
            Some(start)
        })
        .collect()
}

impl ModdefFile {
    /// The action lines of a concrete family, one per nonzero `Sq^i` on a generator.
    pub fn from_family(fam: &BitFamily) -> Self {
        let alg = fam.algebra();
        let top = alg.top_degree();
        let offsets = degree_offsets(alg);
        let layout = generator_layout(alg);
        let actions = layout
            .iter()
            .enumerate()
            .flat_map(|(g, &(d, k))| {
                let offsets = &offsets;
                (1..=top - d).filter_map(move |i| {
                    let m = fam.get(i, d);
                    let targets: Vec<usize> = (0..m.cols())
                        .filter(|&c| m.get(k, c))
                        .map(|c| offsets[d + i] + c)
                        .collect();
                    (!targets.is_empty()).then_some(ActionLine {
                        generator: g,
                        op: i,
                        targets,
                    })
                })
            })
            .collect();
        Self {
            degrees: layout.iter().map(|&(d, _)| d).collect(),
            actions,
        }
    }

    /// The concrete family described by the file; Sq^0 acts as the identity.
    pub fn to_family(&self, alg: Algebra) -> Result<BitFamily, Error> {
        let layout = generator_layout(alg);
        if self.degrees != layout.iter().map(|&(d, _)| d).collect::<Vec<_>>() {
            return Err(Error::Moddef(format!(
                "degrees do not match the {} generators of {alg:?}",
                layout.len()
            )));
        }
        let top = alg.top_degree();
        let mut rows: Vec<Vec<Vec<u32>>> = (0..=MAX_OP)
            .map(|_| (0..=top).map(|n| vec![0; alg.dim(n)]).collect())
            .collect();
        for line in &self.actions {
            let &(d, k) = layout
                .get(line.generator)
                .ok_or_else(|| Error::Moddef(format!("unknown generator {}", line.generator)))?;
            if line.op == 0 || d + line.op > top {
                return Err(Error::Moddef(format!(
                    "Sq^{} out of range on generator {}",
                    line.op, line.generator
                )));
            }
            for &t in &line.targets {
                match layout.get(t) {
                    Some(&(dt, c)) if dt == d + line.op => rows[line.op][d][k] ^= 1 << c,
                    _ => {
                        return Err(Error::Moddef(format!(
                            "target {t} not in degree {}",
                            d + line.op
                        )))
                    }
                }
            }
        }
        let mut fam = BitFamily::known(alg);
        for (i, per_degree) in rows.into_iter().enumerate().skip(1) {
            for (n, masks) in per_degree.into_iter().enumerate() {
                let cols = if n + i <= top { alg.dim(n + i) } else { 0 };
                fam.set(i, n, BitMatrix::from_masks(cols, masks));
            }
        }
        Ok(fam)
    }
}

impl fmt::Display for ModdefFile {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "{}", self.degrees.len())?;
        for (i, d) in self.degrees.iter().enumerate() {
            let sep = if (i + 1) % 10 == 0 { "\n" } else { " " };
            write!(f, "{d}{sep}")?;
        }
        f.write_str("\n\n")?;
        for g in 0..self.degrees.len() {
            for line in self.actions.iter().filter(|l| l.generator == g) {
                write!(f, "{} {}", line.generator, line.op)?;
                for t in &line.targets {
                    write!(f, " {t}")?;
                }
                f.write_str("\n")?;
            }
            f.write_str("\n")?;
        }
        f.write_str("\n")
    }
}

impl FromStr for ModdefFile {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self, Error> {
        let num = |t: &str| {
            t.parse::<usize>()
                .map_err(|_| Error::Moddef(format!("bad number '{t}'")))
        };
        let mut lines = s.lines();
        let count = num(lines
            .next()
            .ok_or_else(|| Error::Moddef("empty file".into()))?
            .trim())?;
        let mut degrees = Vec::with_capacity(count);
        for line in lines.by_ref() {
            if degrees.len() == count {
                if !line.trim().is_empty() {
                    return Err(Error::Moddef("missing blank line after the degrees".into()));
                }
                break;
            }
            for t in line.split_whitespace() {
                degrees.push(num(t)?);
            }
        }
        if degrees.len() != count {
            return Err(Error::Moddef(format!(
                "expected {count} degrees, found {}",
                degrees.len()
            )));
        }
        if degrees.windows(2).any(|w| w[0] > w[1]) {
            return Err(Error::Moddef("degrees are not weakly increasing".into()));
        }
        let mut actions = Vec::new();
        for line in lines.filter(|l| !l.trim().is_empty()) {
            let nums = line
                .split_whitespace()
                .map(num)
                .collect::<Result<Vec<_>, _>>()?;
            let [generator, op, ref targets @ ..] = nums[..] else {
                return Err(Error::Moddef(format!("short action line '{line}'")));
            };
            if generator >= count || targets.iter().any(|&t| t >= count) {
                return Err(Error::Moddef(format!("index out of range in '{line}'")));
            }
            if targets
                .iter()
                .any(|&t| degrees[t] != degrees[generator] + op)
            {
                return Err(Error::Moddef(format!("target degree mismatch in '{line}'")));
            }
            actions.push(ActionLine {
                generator,
                op,
                targets: targets.to_vec(),
            });
        }
        Ok(Self { degrees, actions })
    }
}

/// The module-definition file of a point of a case's variety.
pub fn export_moddef(red: &Reduction, p: &Point) -> Result<ModdefFile, Error> {
    if !red.on_variety(&p.0)? {
        return Err(Error::OffVariety);
    }
    Ok(ModdefFile::from_family(&red.numeric_family(&p.0)?))
}

/// Parse a file and check every Adem relation on the action it describes.
pub fn moddef_satisfies_adem(text: &str, alg: Algebra) -> Result<bool, Error> {
    verify_adem(&text.parse::<ModdefFile>()?.to_family(alg)?)
}

/// The two published actions: the symmetric action with every coordinate
/// zero and the B(2) action with every coordinate zero, with their duals.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct LiteratureReport {
    pub symmetric_zero: Point,
    pub symmetric_zero_dual: Point,
    pub b_zero: Point,
    pub b_zero_dual: Point,
    /// q applied to the general action of the symmetric zero point.
    pub q_of_symmetric_zero: Point,
    pub q_of_symmetric_zero_is_b_zero: bool,
}

pub fn literature_actions() -> Result<LiteratureReport, Error> {
    let (sym, gen, b) = (
        reduction(Case::Symmetric)?,
        reduction(Case::General)?,
        reduction(Case::BOnly)?,
    );
    let (vs, vg, vb) = (Variety::of(sym), Variety::of(gen), Variety::of(b));
    let (zs, zb) = (Point::zero(vs.dim()), Point::zero(vb.dim()));
    let incl = CoordinateMap::sym_to_gen(sym)?;
    let q = CoordinateMap::q(gen)?;
    let q_of_symmetric_zero = q.apply(&vg, &incl.apply(&vs, &zs)?)?;
    Ok(LiteratureReport {
        symmetric_zero_dual: duality_map(sym)?.apply(&vs, &zs)?,
        b_zero_dual: duality_map(b)?.apply(&vb, &zb)?,
        q_of_symmetric_zero_is_b_zero: q_of_symmetric_zero == zb,
        q_of_symmetric_zero,
        symmetric_zero: zs,
        b_zero: zb,
    })
}
