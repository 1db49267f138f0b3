//! The three-stage reduction of generic Sq^8 / Sq^16 actions to a variety.
//!
//! 1. Fill Sq^8 with fresh variables, derive Sq^9..Sq^15, collect the Adem
//!    residuals that only involve Sq^i for i <= 15, and eliminate variables
//!    with the linear ones.
//! 2. Add a generic Sq^16, derive Sq^17..Sq^23, collect every Adem residual
//!    and eliminate linearly again.
//! 3. Reduce modulo x^2 = x and eliminate variables that occur in a relation
//!    as a term but never as a factor.

use std::collections::BTreeSet;
use std::fmt;
use std::str::FromStr;
use std::sync::OnceLock;

use serde::Serialize;

use crate::error::Error;
use crate::exec::Exec;
use crate::family::{adem_triples, AdemPass, AdemTriple, BitFamily, PolyFamily};
use crate::milnor::{basis, Algebra, Part};
use crate::poly::{linear_rref, safe, LinearBasis, Poly, SubstMap, Var, VarTable};
use crate::polymat::{ActionMatrix, BitMatrix, PolyMatrix};

/// Which family of actions is being classified.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize)]
pub enum Case {
    /// Symmetric A-module structures on A(2).
    Symmetric,
    /// All A-module structures on A(2).
    General,
    /// A-module structures on B(2).
    BOnly,
}

impl Case {
    pub const ALL: [Case; 3] = [Case::Symmetric, Case::General, Case::BOnly];

    pub fn name(self) -> &'static str {
        match self {
            Case::Symmetric => "sym",
            Case::General => "gen",
            Case::BOnly => "b",
        }
    }

    pub fn algebra(self) -> Algebra {
        match self {
            Case::Symmetric | Case::General => Algebra::A2,
            Case::BOnly => Algebra::B2,
        }
    }

    /// Variable groups in increasing elimination precedence.
    fn groups(self) -> &'static [(char, usize)] {
        match self {
            Case::Symmetric => &[('a', 28), ('b', 66), ('c', 1), ('d', 24)],
            Case::General => &[('a', 124), ('b', 26)],
            Case::BOnly => &[('a', 28), ('c', 1)],
        }
    }

    pub fn var_table(self) -> VarTable {
        VarTable::from_groups(self.groups())
    }

    /// Prefixes of the variables that parameterize Sq^8.
    pub fn sq8_prefixes(self) -> &'static [char] {
        match self {
            Case::Symmetric => &['a', 'b'],
            Case::General | Case::BOnly => &['a'],
        }
    }
}

impl fmt::Display for Case {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Case {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self, Error> {
        match s {
            "sym" | "symmetric" => Ok(Case::Symmetric),
            "gen" | "general" => Ok(Case::General),
            "b" | "B" | "b2" | "B2" => Ok(Case::BOnly),
            _ => Err(Error::UnknownCase(s.to_string())),
        }
    }
}

fn bdim(n: isize) -> usize {
    if n < 0 {
        0
    } else {
        basis(n as usize, Part::BPart).len()
    }
}

/// Hands out the variables `x1, x2, ...` of one group in order.
struct Filler<'a> {
    table: &'a VarTable,
    prefix: char,
    next: usize,
}

impl<'a> Filler<'a> {
    fn new(table: &'a VarTable, prefix: char) -> Self {
        Self {
            table,
            prefix,
            next: 0,
        }
    }

    fn matrix(&mut self, rows: usize, cols: usize) -> PolyMatrix {
        PolyMatrix::from_fn(rows, cols, |_, _| {
            self.next += 1;
            let name = format!("{}{}", self.prefix, self.next);
            Poly::var(
                self.table
                    .var(&name)
                    .expect("variable table covers the generic fill"),
            )
        })
    }

    fn finish(self, expected: usize) -> usize {
        assert_eq!(
            self.next, expected,
            "generic fill of '{}' variables",
            self.prefix
        );
        self.next
    }
}

/// Generic Sq^g on B-part blocks: `X_n: B_n -> B_{n+g}` for n = 0..=16.
fn b_blocks(filler: &mut Filler<'_>, g: isize) -> Vec<PolyMatrix> {
    (0..=16)
        .map(|n| filler.matrix(bdim(n), bdim(n + g)))
        .collect()
}

/// Symmetric block assembly `[[X_n, Y_n], [0, X_{n-7}]]` for n = 0..=top.
fn symmetric_blocks(
    x: &[PolyMatrix],
    y: &[PolyMatrix],
    g: isize,
) -> Result<Vec<PolyMatrix>, Error> {
    (0..=23isize)
        .map(|n| {
            let pick = |v: &[PolyMatrix], k: isize, rows: usize, cols: usize| {
                usize::try_from(k)
                    .ok()
                    .and_then(|k| v.get(k).cloned())
                    .unwrap_or_else(|| PolyMatrix::zeros(rows, cols))
            };
            let ul = pick(x, n, bdim(n), bdim(n + g));
            let ur = pick(y, n, bdim(n), bdim(n + g - 7));
            let lr = pick(x, n - 7, bdim(n - 7), bdim(n + g - 7));
            PolyMatrix::assemble_block(&ul, &ur, &lr)
        })
        .collect()
}

/// The generic Sq^8 and Sq^16 matrices of a case, indexed by source degree.
#[derive(Clone, Debug)]
pub struct Generic {
    pub case: Case,
    pub table: VarTable,
    pub sq8: Vec<PolyMatrix>,
    pub sq16: Vec<PolyMatrix>,
}

impl Generic {
    pub fn new(case: Case) -> Result<Self, Error> {
        let table = case.var_table();
        let alg = case.algebra();
        let top = alg.top_degree();
        let full = |f: &mut Filler<'_>, g: usize| -> Vec<PolyMatrix> {
            (0..=top)
                .map(|n| f.matrix(alg.dim(n), if n + g <= top { alg.dim(n + g) } else { 0 }))
                .collect()
        };
        let (sq8, sq16) = match case {
            Case::Symmetric => {
                let mut fa = Filler::new(&table, 'a');
                let m = b_blocks(&mut fa, 8);
                fa.finish(28);
                let mut fb = Filler::new(&table, 'b');
                let nn = b_blocks(&mut fb, 1);
                fb.finish(66);
                let mut fc = Filler::new(&table, 'c');
                let k = b_blocks(&mut fc, 16);
                fc.finish(1);
                let mut fd = Filler::new(&table, 'd');
                let l = b_blocks(&mut fd, 9);
                fd.finish(24);
                (symmetric_blocks(&m, &nn, 8)?, symmetric_blocks(&k, &l, 16)?)
            }
            Case::General => {
                let mut fa = Filler::new(&table, 'a');
                let s8 = full(&mut fa, 8);
                fa.finish(124);
                let mut fb = Filler::new(&table, 'b');
                let s16 = full(&mut fb, 16);
                fb.finish(26);
                (s8, s16)
            }
            Case::BOnly => {
                let mut fa = Filler::new(&table, 'a');
                let s8 = full(&mut fa, 8);
                fa.finish(28);
                let mut fc = Filler::new(&table, 'c');
                let s16 = full(&mut fc, 16);
                fc.finish(1);
                (s8, s16)
            }
        };
        Ok(Self {
            case,
            table,
            sq8,
            sq16,
        })
    }

    /// The family with only Sq^0..Sq^15 filled in from the generic Sq^8.
    pub fn family_sq8(&self) -> Result<PolyFamily, Error> {
        let mut fam = PolyFamily::known(self.case.algebra());
        for (n, m) in self.sq8.iter().enumerate() {
            fam.set(8, n, m.clone());
        }
        fam.derive_from(8)?;
        Ok(fam)
    }

    /// Concrete action for an assignment of every generic variable.
    pub fn numeric_family(&self, values: &[bool]) -> Result<BitFamily, Error> {
        let mut fam = BitFamily::known(self.case.algebra());
        for (g, ms) in [(8, &self.sq8), (16, &self.sq16)] {
            for (n, m) in ms.iter().enumerate() {
                fam.set(g, n, m.eval(values));
            }
            fam.derive_from(g)?;
        }
        Ok(fam)
    }
}

/// Counts recorded for one pass over the Adem relations.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct StepLog {
    pub label: String,
    /// Entries of all nonzero residual matrices, zero entries included.
    pub raw_entries: usize,
    /// Nonzero residual entries before deduplication.
    pub raw_nonzero: usize,
    /// Distinct nonzero relations.
    pub distinct: usize,
    /// Distinct relations of total degree 1.
    pub linear: usize,
    /// Size of the reduced basis of the linear relations.
    pub rref: usize,
}

struct PassOutcome {
    log: StepLog,
    distinct: BTreeSet<Poly>,
    basis: LinearBasis,
}

fn adem_pass(
    fam: &PolyFamily,
    triples: &[AdemTriple],
    nvars: usize,
    exec: Exec,
    label: String,
) -> Result<PassOutcome, Error> {
    let residuals = exec.map(triples, |t| fam.residual(t));
    let mut raw_entries = 0;
    let mut raw_nonzero = 0;
    let mut distinct = BTreeSet::new();
    for m in residuals {
        let m = m?;
        if m.is_zero() {
            continue;
        }
        raw_entries += m.entries().len();
        for p in m.entries().iter().filter(|p| !p.is_zero()) {
            raw_nonzero += 1;
            distinct.insert(p.clone());
        }
    }
    let linear: Vec<Poly> = distinct.iter().filter(|p| p.is_linear()).cloned().collect();
    let basis = linear_rref(&linear, nvars)?;
    let log = StepLog {
        label,
        raw_entries,
        raw_nonzero,
        distinct: distinct.len(),
        linear: linear.len(),
        rref: basis.len(),
    };
    Ok(PassOutcome {
        log,
        distinct,
        basis,
    })
}

fn substitute_family(fam: &PolyFamily, m: &SubstMap) -> PolyFamily {
    fam.map(|x| x.substitute(m))
}

/// One safe substitution of the nonlinear stage.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Elimination {
    pub var: String,
    /// 1-based index into the relations entering the nonlinear stage.
    pub relation: usize,
}

/// Outcome of the full reduction for one case.
#[derive(Clone, Debug)]
pub struct Reduction {
    pub case: Case,
    pub table: VarTable,
    pub generic: Generic,
    /// Surviving coordinates in increasing index order.
    pub free: Vec<Var>,
    /// Distinct nonzero boolean-normal relations among the free variables.
    pub relations: Vec<Poly>,
    /// Every variable written in the free ones, boolean-normal.
    pub dictionary: SubstMap,
    /// The action with coordinates in the free variables.
    pub family: PolyFamily,
    /// The action after the linear stages.
    pub linear_family: PolyFamily,
    /// Relations entering the nonlinear stage, boolean-normal, indexed from 1.
    pub penultimate: Vec<Poly>,
    pub eliminations: Vec<Elimination>,
    pub log: Vec<StepLog>,
}

/// Eliminate variables by safe substitution, scanning from the highest
/// precedence variable down and restarting after every elimination. Among
/// the relations able to eliminate a variable the shortest is used, ties
/// going to the lowest index.
pub fn nonlinear_eliminate(
    relations: &mut [Poly],
    dictionary: &mut SubstMap,
    nvars: usize,
) -> Vec<(Var, usize)> {
    let mut steps = Vec::new();
    loop {
        let pick = (0..nvars).rev().map(|i| Var(i as u16)).find_map(|v| {
            relations
                .iter()
                .enumerate()
                .filter(|(_, r)| safe(v, r))
                .min_by_key(|(i, r)| (r.num_terms(), *i))
                .map(|(i, _)| (v, i))
        });
        let Some((v, i)) = pick else { break };
        let mut sub = SubstMap::identity(nvars);
        sub.set(v, relations[i].add(&Poly::var(v)));
        for r in relations.iter_mut() {
            *r = r.substitute(&sub).boolean_nf();
        }
        *dictionary = dictionary.map_images(|p| p.substitute(&sub).boolean_nf());
        steps.push((v, i));
    }
    steps
}

/// Run the full reduction for a case.
pub fn run_case(case: Case, exec: Exec) -> Result<Reduction, Error> {
    let generic = Generic::new(case)?;
    let table = generic.table.clone();
    let nvars = table.len();
    let alg = case.algebra();
    let top = alg.top_degree();
    let mut dictionary = SubstMap::identity(nvars);
    let mut log = Vec::new();

    let apply = |fam: &mut PolyFamily, dict: &mut SubstMap, b: &LinearBasis| {
        *fam = substitute_family(fam, b.substitution());
        *dict = dict.map_images(|p| b.nf(p));
    };

    let mut fam = generic.family_sq8()?;
    let low = adem_triples(top, AdemPass::below_sixteen());
    let repeat_low = case != Case::Symmetric;
    for round in 1.. {
        let out = adem_pass(&fam, &low, nvars, exec, format!("sq8 pass {round}"))?;
        apply(&mut fam, &mut dictionary, &out.basis);
        let done = !repeat_low || out.basis.is_empty();
        log.push(out.log);
        if done {
            break;
        }
        if round > nvars {
            return Err(Error::NonStabilizing(round));
        }
    }

    for (n, m) in generic.sq16.iter().enumerate() {
        fam.set(16, n, m.substitute(&dictionary));
    }
    fam.derive_from(16)?;
    let full = adem_triples(top, AdemPass::full(top));
    let repeat_full = case != Case::Symmetric;
    let mut last = BTreeSet::new();
    for round in 1.. {
        let out = adem_pass(&fam, &full, nvars, exec, format!("sq16 pass {round}"))?;
        apply(&mut fam, &mut dictionary, &out.basis);
        last = out
            .distinct
            .iter()
            .map(|p| out.basis.nf(p))
            .filter(|p| !p.is_zero())
            .collect();
        let done = !repeat_full || out.basis.is_empty();
        log.push(out.log);
        if done {
            break;
        }
        if round > nvars {
            return Err(Error::NonStabilizing(round));
        }
    }

    let linear_family = fam;
    let mut rels: Vec<Poly> = last.into_iter().map(|p| p.boolean_nf()).collect();
    let penultimate = rels.clone();
    let steps = nonlinear_eliminate(&mut rels, &mut dictionary, nvars);
    let eliminations = steps
        .iter()
        .map(|&(v, i)| Elimination {
            var: table.name(v).to_string(),
            relation: i + 1,
        })
        .collect();

    let relations: Vec<Poly> = rels
        .into_iter()
        .filter(|p| !p.is_zero())
        .collect::<BTreeSet<_>>()
        .into_iter()
        .collect();
    let free: Vec<Var> = table.vars().filter(|&v| dictionary.is_fixed(v)).collect();
    let family = linear_family.map(|m| m.map_entries(|p| p.substitute(&dictionary).boolean_nf()));
    log.push(StepLog {
        label: "nonlinear".into(),
        raw_entries: 0,
        raw_nonzero: 0,
        distinct: penultimate.len(),
        linear: penultimate.iter().filter(|p| p.is_linear()).count(),
        rref: steps.len(),
    });

    Ok(Reduction {
        case,
        table,
        generic,
        free,
        relations,
        dictionary,
        family,
        linear_family,
        penultimate,
        eliminations,
        log,
    })
}

/// The reduction of a case, computed once per process.
pub fn reduction(case: Case) -> Result<&'static Reduction, Error> {
    static CACHE: [OnceLock<Result<Reduction, Error>>; 3] =
        [OnceLock::new(), OnceLock::new(), OnceLock::new()];
    let slot = &CACHE[case as usize];
    slot.get_or_init(|| run_case(case, Exec::default()))
        .as_ref()
        .map_err(Clone::clone)
}

impl Reduction {
    pub fn free_names(&self) -> Vec<&str> {
        self.free.iter().map(|&v| self.table.name(v)).collect()
    }

    /// Values of every variable when the free ones take the given values.
    pub fn full_assignment(&self, free_values: &[bool]) -> Result<Vec<bool>, Error> {
        if free_values.len() != self.free.len() {
            return Err(Error::PointLength {
                expected: self.free.len(),
                got: free_values.len(),
            });
        }
        let mut base = vec![false; self.table.len()];
        for (&v, &x) in self.free.iter().zip(free_values) {
            base[v.index()] = x;
        }
        Ok(self
            .dictionary
            .images()
            .iter()
            .map(|p| p.eval(&base))
            .collect())
    }

    /// True iff the free values satisfy every residual relation.
    pub fn on_variety(&self, free_values: &[bool]) -> Result<bool, Error> {
        let full = self.full_assignment(free_values)?;
        Ok(self.relations.iter().all(|r| !r.eval(&full)))
    }

    /// The concrete action at a point, rebuilt from the generic matrices.
    pub fn numeric_family(&self, free_values: &[bool]) -> Result<BitFamily, Error> {
        self.generic
            .numeric_family(&self.full_assignment(free_values)?)
    }

    /// The dictionary as `<index, name, value>` rows in reference-index order.
    pub fn dictionary_rows(&self) -> Vec<(usize, String, String)> {
        let mut rows: Vec<_> = self
            .table
            .vars()
            .map(|v| {
                let value = self.table.magma(self.dictionary.get(v)).to_string();
                (
                    self.table.reversed_index(v),
                    self.table.name(v).to_string(),
                    value,
                )
            })
            .collect();
        rows.sort_by_key(|r| r.0);
        rows
    }
}

/// Check every Adem relation on a concrete action.
pub fn verify_adem(fam: &BitFamily) -> Result<bool, Error> {
    let top = fam.top();
    fam.satisfies(&adem_triples(top, AdemPass::full(top)))
}

/// True iff every Sq^i maps the Q2-multiples into the Q2-multiples, i.e. the
/// block from the r3 = 1 rows to the r3 = 0 columns vanishes everywhere.
pub fn preserves_q2_image(fam: &BitFamily) -> bool {
    let top = fam.top();
    (0..=crate::family::MAX_OP).all(|i| {
        (0..=top).all(|n| {
            let m: &BitMatrix = fam.get(i, n);
            if m.cols() == 0 {
                return true;
            }
            let b_rows = bdim(n as isize);
            let b_cols = bdim((n + i) as isize);
            let mask = if b_cols >= 32 {
                u32::MAX
            } else {
                (1u32 << b_cols) - 1
            };
            (b_rows..m.rows()).all(|r| m.row_mask(r) & mask == 0)
        })
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn generic_shapes_and_placements() {
        let g = Generic::new(Case::Symmetric).unwrap();
        let t = &g.table;
        let m7 = &g.sq8[7];
        assert_eq!((m7.rows(), m7.cols()), (4, 3));
        let bottom: Vec<String> = (0..3)
            .map(|c| t.canonical(m7.get(3, c)).to_string())
            .collect();
        assert_eq!(bottom, ["0", "a1", "a2"]);
        let m8 = &g.sq8[8];
        let last: Vec<String> = (0..4)
            .map(|c| t.canonical(m8.get(2, c)).to_string())
            .collect();
        assert_eq!(last, ["0", "a3", "a4", "a5"]);
        let row0: Vec<String> = (0..3)
            .map(|c| t.canonical(g.sq8[0].get(0, c)).to_string())
            .collect();
        assert_eq!(row0, ["a1", "a2", "b1"]);
        let s16: Vec<String> = (0..4)
            .map(|c| t.canonical(g.sq16[0].get(0, c)).to_string())
            .collect();
        assert_eq!(s16, ["c1", "d1", "d2", "d3"]);
        let col: Vec<String> = (0..4)
            .map(|r| t.canonical(g.sq16[7].get(r, 0)).to_string())
            .collect();
        assert_eq!(col, ["d22", "d23", "d24", "c1"]);

        let gen = Generic::new(Case::General).unwrap();
        let q2_row: Vec<String> = (0..3)
            .map(|c| gen.table.canonical(gen.sq8[7].get(3, c)).to_string())
            .collect();
        assert_eq!(q2_row, ["a60", "a61", "a62"]);
        let b = Generic::new(Case::BOnly).unwrap();
        assert_eq!((b.sq16[0].rows(), b.sq16[0].cols()), (1, 1));
    }

    #[test]
    fn case_names_round_trip() {
        for c in Case::ALL {
            assert_eq!(c.name().parse::<Case>().unwrap(), c);
        }
        assert!("x".parse::<Case>().is_err());
    }
}
