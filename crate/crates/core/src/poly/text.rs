//! Text forms of polynomials.
//!
//! The canonical form lists terms by descending degree and then by ascending
//! variable list, with factors in ascending order: `a1*a2 + a13 + 1`.
//! The reference-system form lists terms in descending lex order with the
//! highest-precedence factor first: `a13*a2*a1 + a13 + 1`.

use std::cmp::Ordering;
use std::fmt;

use super::{Monomial, Poly, Var, VarTable};
use crate::error::Error;

pub struct CanonicalDisplay<'a> {
    pub(super) table: &'a VarTable,
    pub(super) poly: &'a Poly,
}

pub struct MagmaDisplay<'a> {
    pub(super) table: &'a VarTable,
    pub(super) poly: &'a Poly,
}

/// (variable, exponent) pairs of a monomial in the given order.
fn powers(m: &Monomial, descending: bool) -> Vec<(Var, usize)> {
    let mut out: Vec<(Var, usize)> = Vec::new();
    for &v in m.vars() {
        match out.last_mut() {
            Some((w, e)) if *w == v => *e += 1,
            _ => out.push((v, 1)),
        }
    }
    if descending {
        out.reverse();
    }
    out
}

fn write_monomial(
    f: &mut fmt::Formatter<'_>,
    table: &VarTable,
    m: &Monomial,
    descending: bool,
) -> fmt::Result {
    if m.degree() == 0 {
        return f.write_str("1");
    }
    for (i, (v, e)) in powers(m, descending).into_iter().enumerate() {
        if i > 0 {
            f.write_str("*")?;
        }
        f.write_str(table.name(v))?;
        if e > 1 {
            write!(f, "^{e}")?;
        }
    }
    Ok(())
}

fn write_terms<'m>(
    f: &mut fmt::Formatter<'_>,
    table: &VarTable,
    terms: impl Iterator<Item = &'m Monomial>,
    descending: bool,
) -> fmt::Result {
    let mut any = false;
    for m in terms {
        if any {
            f.write_str(" + ")?;
        }
        write_monomial(f, table, m, descending)?;
        any = true;
    }
    if !any {
        f.write_str("0")?;
    }
    Ok(())
}

fn canonical_cmp(a: &Monomial, b: &Monomial) -> Ordering {
    b.degree()
        .cmp(&a.degree())
        .then_with(|| a.vars().cmp(b.vars()))
}

/// Lex order with the highest-precedence variable most significant.
pub fn lex_cmp(a: &Monomial, b: &Monomial) -> Ordering {
    let (pa, pb) = (powers(a, true), powers(b, true));
    for (x, y) in pa.iter().zip(&pb) {
        let o = x.0.cmp(&y.0).then(x.1.cmp(&y.1));
        if o != Ordering::Equal {
            return o;
        }
    }
    pa.len().cmp(&pb.len())
}

impl fmt::Display for CanonicalDisplay<'_> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut terms: Vec<&Monomial> = self.poly.terms().iter().collect();
        terms.sort_by(|a, b| canonical_cmp(a, b));
        write_terms(f, self.table, terms.into_iter(), false)
    }
}

impl fmt::Display for MagmaDisplay<'_> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut terms: Vec<&Monomial> = self.poly.terms().iter().collect();
        terms.sort_by(|a, b| lex_cmp(b, a));
        write_terms(f, self.table, terms.into_iter(), true)
    }
}

/// Parse `term + term + ...` where a term is `1`, `0`, or a `*`-product of
/// variables, each optionally raised to `^k`.
pub(super) fn parse(table: &VarTable, input: &str) -> Result<Poly, Error> {
    let err = |reason: &str| Error::Parse {
        input: input.to_string(),
        reason: reason.to_string(),
    };
    let mut out = Poly::zero();
    for term in input.split('+') {
        let term = term.trim();
        if term.is_empty() {
            return Err(err("empty term"));
        }
        let mut vars = Vec::new();
        let mut coeff = true;
        for factor in term.split('*') {
            let factor = factor.trim();
            let (base, exp) = match factor.split_once('^') {
                Some((b, e)) => (
                    b.trim(),
                    e.trim().parse::<usize>().map_err(|_| err("bad exponent"))?,
                ),
                None => (factor, 1),
            };
            match base {
                "1" => {}
                "0" => coeff = false,
                name => {
                    let v = table.var(name)?;
                    vars.extend(std::iter::repeat_n(v, exp));
                }
            }
        }
        if coeff {
            out.add_assign(&Poly::monomial(Monomial::from_vars(vars)));
        }
    }
    Ok(out)
}
