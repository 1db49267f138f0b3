//! Polynomials over F2 in named variables.
//!
//! A [`Poly`] is the set of monomials with coefficient 1. Monomials are sorted
//! multisets of variables, so squares survive until [`Poly::boolean_nf`] is
//! applied.

mod linear;
mod text;

use std::collections::HashMap;
use std::fmt;

use smallvec::SmallVec;

use crate::error::Error;

pub use linear::{linear_rref, LinearBasis};
pub use text::{CanonicalDisplay, MagmaDisplay};

/// Index of a variable in a [`VarTable`]. A larger index means higher
/// elimination precedence.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Var(pub u16);

impl Var {
    pub fn index(self) -> usize {
        self.0 as usize
    }
}

/// Ordered, uniquely named variables.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct VarTable {
    names: Vec<String>,
    lookup: HashMap<String, Var>,
}

impl VarTable {
    pub fn new<S: Into<String>>(names: impl IntoIterator<Item = S>) -> Self {
        let names: Vec<String> = names.into_iter().map(Into::into).collect();
        let lookup: HashMap<_, _> = names
            .iter()
            .enumerate()
            .map(|(i, n)| (n.clone(), Var(i as u16)))
            .collect();
        assert_eq!(lookup.len(), names.len(), "variable names must be unique");
        Self { names, lookup }
    }

    /// Variables `x1..xn` for each `(x, n)` group, groups in increasing precedence.
    pub fn from_groups(groups: &[(char, usize)]) -> Self {
        Self::new(
            groups
                .iter()
                .flat_map(|&(c, n)| (1..=n).map(move |i| format!("{c}{i}"))),
        )
    }

    pub fn len(&self) -> usize {
        self.names.len()
    }

    pub fn is_empty(&self) -> bool {
        self.names.is_empty()
    }

    pub fn name(&self, v: Var) -> &str {
        &self.names[v.index()]
    }

    pub fn var(&self, name: &str) -> Result<Var, Error> {
        self.lookup
            .get(name)
            .copied()
            .ok_or_else(|| Error::UnknownVariable(name.to_string()))
    }

    pub fn vars(&self) -> impl Iterator<Item = Var> + '_ {
        (0..self.names.len()).map(|i| Var(i as u16))
    }

    /// Reference-system index: the highest-precedence variable is 1.
    pub fn reversed_index(&self, v: Var) -> usize {
        self.names.len() - v.index()
    }

    pub fn parse(&self, s: &str) -> Result<Poly, Error> {
        text::parse(self, s)
    }

    pub fn canonical<'a>(&'a self, p: &'a Poly) -> CanonicalDisplay<'a> {
        CanonicalDisplay {
            table: self,
            poly: p,
        }
    }

    pub fn magma<'a>(&'a self, p: &'a Poly) -> MagmaDisplay<'a> {
        MagmaDisplay {
            table: self,
            poly: p,
        }
    }
}

/// Product of variables, stored as a sorted list with repeats.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Default)]
pub struct Monomial(SmallVec<[Var; 6]>);

impl Monomial {
    pub fn one() -> Self {
        Self(SmallVec::new())
    }

    pub fn from_vars(vars: impl IntoIterator<Item = Var>) -> Self {
        let mut v: SmallVec<[Var; 6]> = vars.into_iter().collect();
        v.sort_unstable();
        Self(v)
    }

    pub fn degree(&self) -> usize {
        self.0.len()
    }

    pub fn vars(&self) -> &[Var] {
        &self.0
    }

    pub fn contains(&self, v: Var) -> bool {
        self.0.binary_search(&v).is_ok()
    }

    pub fn is_squarefree(&self) -> bool {
        self.0.windows(2).all(|w| w[0] != w[1])
    }

    fn mul(&self, other: &Self) -> Self {
        let (a, b) = (&self.0, &other.0);
        let mut out = SmallVec::with_capacity(a.len() + b.len());
        let (mut i, mut j) = (0, 0);
        while i < a.len() && j < b.len() {
            if a[i] <= b[j] {
                out.push(a[i]);
                i += 1;
            } else {
                out.push(b[j]);
                j += 1;
            }
        }
        out.extend_from_slice(&a[i..]);
        out.extend_from_slice(&b[j..]);
        Self(out)
    }

    fn squarefree(&self) -> Self {
        let mut v = self.0.clone();
        v.dedup();
        Self(v)
    }
}

impl PartialOrd for Monomial {
    fn partial_cmp(&self, other: &Self) -> Option<std::cmp::Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for Monomial {
    /// Graded, then lexicographic on the sorted variable list.
    fn cmp(&self, other: &Self) -> std::cmp::Ordering {
        self.degree()
            .cmp(&other.degree())
            .then_with(|| self.0.cmp(&other.0))
    }
}

/// Polynomial over F2: the strictly increasing list of its monomials.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Default, PartialOrd, Ord)]
pub struct Poly {
    terms: Vec<Monomial>,
}

impl Poly {
    pub fn zero() -> Self {
        Self::default()
    }

    pub fn one() -> Self {
        Self {
            terms: vec![Monomial::one()],
        }
    }

    pub fn constant(bit: bool) -> Self {
        if bit {
            Self::one()
        } else {
            Self::zero()
        }
    }

    pub fn var(v: Var) -> Self {
        Self {
            terms: vec![Monomial::from_vars([v])],
        }
    }

    pub fn monomial(m: Monomial) -> Self {
        Self { terms: vec![m] }
    }

    /// Sum of the given monomials with mod-2 cancellation.
    pub fn from_monomials(ms: impl IntoIterator<Item = Monomial>) -> Self {
        let mut terms: Vec<Monomial> = ms.into_iter().collect();
        cancel_sorted(&mut terms);
        Self { terms }
    }

    pub fn terms(&self) -> &[Monomial] {
        &self.terms
    }

    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_one(&self) -> bool {
        self.terms.len() == 1 && self.terms[0].degree() == 0
    }

    /// Total degree; the zero polynomial has degree `None`.
    pub fn degree(&self) -> Option<usize> {
        self.terms.last().map(Monomial::degree)
    }

    pub fn is_linear(&self) -> bool {
        self.degree() == Some(1)
    }

    pub fn has_term(&self, m: &Monomial) -> bool {
        self.terms.binary_search(m).is_ok()
    }

    pub fn constant_term(&self) -> bool {
        self.terms.first().is_some_and(|m| m.degree() == 0)
    }

    /// Variables occurring in the polynomial, sorted.
    pub fn vars(&self) -> Vec<Var> {
        let mut v: Vec<Var> = self
            .terms
            .iter()
            .flat_map(|m| m.0.iter().copied())
            .collect();
        v.sort_unstable();
        v.dedup();
        v
    }

    pub fn mentions(&self, v: Var) -> bool {
        self.terms.iter().any(|m| m.contains(v))
    }

    pub fn add(&self, other: &Self) -> Self {
        let (a, b) = (&self.terms, &other.terms);
        let mut out = Vec::with_capacity(a.len() + b.len());
        let (mut i, mut j) = (0, 0);
        while i < a.len() && j < b.len() {
            match a[i].cmp(&b[j]) {
                std::cmp::Ordering::Less => {
                    out.push(a[i].clone());
                    i += 1;
                }
                std::cmp::Ordering::Greater => {
                    out.push(b[j].clone());
                    j += 1;
                }
                std::cmp::Ordering::Equal => {
                    i += 1;
                    j += 1;
                }
            }
        }
        out.extend_from_slice(&a[i..]);
        out.extend_from_slice(&b[j..]);
        Self { terms: out }
    }

    pub fn add_assign(&mut self, other: &Self) {
        if other.is_zero() {
            return;
        }
        *self = self.add(other);
    }

    pub fn mul(&self, other: &Self) -> Self {
        if self.is_zero() || other.is_zero() {
            return Self::zero();
        }
        if self.is_one() {
            return other.clone();
        }
        if other.is_one() {
            return self.clone();
        }
        let mut terms = Vec::with_capacity(self.num_terms() * other.num_terms());
        for a in &self.terms {
            for b in &other.terms {
                terms.push(a.mul(b));
            }
        }
        cancel_sorted(&mut terms);
        Self { terms }
    }

    /// Reduction modulo x^2 + x for every variable.
    pub fn boolean_nf(&self) -> Self {
        if self.terms.iter().all(Monomial::is_squarefree) {
            return self.clone();
        }
        Self::from_monomials(self.terms.iter().map(Monomial::squarefree))
    }

    pub fn is_boolean_normal(&self) -> bool {
        self.terms.iter().all(Monomial::is_squarefree)
    }

    /// Evaluate with one value per variable of the table, indexed by [`Var`].
    pub fn eval(&self, values: &[bool]) -> bool {
        self.terms
            .iter()
            .filter(|m| m.0.iter().all(|v| values[v.index()]))
            .count()
            % 2
            == 1
    }

    /// Evaluate with a partial assignment; an unassigned variable is an error.
    pub fn evaluate(
        &self,
        table: &VarTable,
        value: impl Fn(Var) -> Option<bool>,
    ) -> Result<bool, Error> {
        let mut acc = false;
        for m in &self.terms {
            let mut t = true;
            for &v in m.vars() {
                t &= value(v).ok_or_else(|| Error::UnknownVariable(table.name(v).to_string()))?;
            }
            acc ^= t;
        }
        Ok(acc)
    }

    /// Image under a ring homomorphism given by variable images.
    pub fn substitute(&self, map: &SubstMap) -> Self {
        let mut terms = Vec::new();
        for m in &self.terms {
            if m.0.iter().all(|&v| map.is_fixed(v)) {
                terms.push(m.clone());
                continue;
            }
            let mut prod = Poly::one();
            for &v in m.vars() {
                prod = prod.mul(map.get(v));
                if prod.is_zero() {
                    break;
                }
            }
            terms.extend(prod.terms);
        }
        cancel_sorted(&mut terms);
        Self { terms }
    }

    /// If `v` occurs alone as a term and divides no other term, return the
    /// rest of the polynomial (so that the relation reads v = rest).
    pub fn solve_for(&self, v: Var) -> Option<Poly> {
        safe(v, self).then(|| self.add(&Poly::var(v)))
    }
}

/// True iff `{v}` is a term of `r` and `v` divides no term of degree > 1.
pub fn safe(v: Var, r: &Poly) -> bool {
    r.has_term(&Monomial::from_vars([v]))
        && !r.terms.iter().any(|m| m.degree() > 1 && m.contains(v))
}

fn cancel_sorted(terms: &mut Vec<Monomial>) {
    terms.sort_unstable();
    let mut out: Vec<Monomial> = Vec::with_capacity(terms.len());
    for t in terms.drain(..) {
        if out.last() == Some(&t) {
            out.pop();
        } else {
            out.push(t);
        }
    }
    *terms = out;
}

impl fmt::Display for Poly {
    /// Index-based rendering (`x3*x7 + 1`) for debugging without a table.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return f.write_str("0");
        }
        for (i, m) in self.terms.iter().rev().enumerate() {
            if i > 0 {
                f.write_str(" + ")?;
            }
            if m.degree() == 0 {
                f.write_str("1")?;
            }
            for (k, v) in m.vars().iter().enumerate() {
                if k > 0 {
                    f.write_str("*")?;
                }
                write!(f, "x{}", v.0)?;
            }
        }
        Ok(())
    }
}

/// Total assignment variable -> polynomial, i.e. a ring endomorphism.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SubstMap {
    images: Vec<Poly>,
}

impl SubstMap {
    pub fn identity(n: usize) -> Self {
        Self {
            images: (0..n).map(|i| Poly::var(Var(i as u16))).collect(),
        }
    }

    pub fn from_images(images: Vec<Poly>) -> Self {
        Self { images }
    }

    pub fn len(&self) -> usize {
        self.images.len()
    }

    pub fn is_empty(&self) -> bool {
        self.images.is_empty()
    }

    pub fn get(&self, v: Var) -> &Poly {
        &self.images[v.index()]
    }

    pub fn set(&mut self, v: Var, p: Poly) {
        self.images[v.index()] = p;
    }

    pub fn images(&self) -> &[Poly] {
        &self.images
    }

    pub fn is_fixed(&self, v: Var) -> bool {
        let img = &self.images[v.index()];
        img.terms.len() == 1 && img.terms[0].0.as_slice() == [v]
    }

    pub fn apply(&self, p: &Poly) -> Poly {
        p.substitute(self)
    }

    /// `self ∘ inner`: first `inner`, then `self`.
    pub fn compose(&self, inner: &SubstMap) -> SubstMap {
        Self {
            images: inner.images.iter().map(|p| p.substitute(self)).collect(),
        }
    }

    /// Apply `f` to every image.
    pub fn map_images(&self, f: impl Fn(&Poly) -> Poly) -> SubstMap {
        Self {
            images: self.images.iter().map(f).collect(),
        }
    }

    pub fn is_idempotent(&self) -> bool {
        self.compose(self) == *self
    }

    /// Apply the map on top of itself until the images stop changing. A
    /// cyclic dependency never settles and is reported after `max_rounds`.
    pub fn close_idempotent(&self, max_rounds: usize) -> Result<SubstMap, Error> {
        let mut m = self.clone();
        for _ in 0..max_rounds {
            let next = self.compose(&m);
            if next == m {
                return Ok(m);
            }
            m = next;
        }
        Err(Error::NonStabilizing(max_rounds))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn table() -> VarTable {
        VarTable::from_groups(&[('x', 4)])
    }

    #[test]
    fn ring_basics() {
        let t = table();
        let x = t.parse("x1").unwrap();
        assert!(x.add(&x).is_zero());
        assert_eq!(x.mul(&Poly::one()), x);
        let x1 = t.parse("x1 + 1").unwrap();
        assert_eq!(x1.mul(&x1), t.parse("x1^2 + 1").unwrap());
    }

    #[test]
    fn boolean_normal_form() {
        let t = table();
        assert!(t.parse("x1^2 + x1").unwrap().boolean_nf().is_zero());
        assert_eq!(
            t.parse("x1^2*x2").unwrap().boolean_nf(),
            t.parse("x1*x2").unwrap()
        );
        assert_eq!(
            t.parse("x3^2 + x3*x2").unwrap().boolean_nf(),
            t.parse("x3 + x2*x3").unwrap()
        );
    }

    #[test]
    fn safety() {
        let t = table();
        let x = t.var("x1").unwrap();
        assert!(safe(x, &t.parse("x1 + x2*x3").unwrap()));
        assert!(!safe(x, &t.parse("x1*x2 + x3").unwrap()));
        assert!(!safe(x, &t.parse("x1 + x1*x2").unwrap()));
        assert_eq!(
            t.parse("x1 + x2*x3 + 1").unwrap().solve_for(x),
            Some(t.parse("x2*x3 + 1").unwrap())
        );
    }

    #[test]
    fn evaluation() {
        let t = table();
        let p = t.parse("x1 + x2").unwrap();
        assert!(!p.eval(&[true, true, false, false]));
        assert!(p.eval(&[true, false, false, false]));
        let err = p.evaluate(&t, |v| (v.index() == 0).then_some(true));
        assert_eq!(err, Err(Error::UnknownVariable("x2".into())));
    }

    #[test]
    fn substitution_and_closure() {
        let t = table();
        let id = SubstMap::identity(4);
        assert_eq!(id.close_idempotent(8).unwrap(), id);
        let mut m = SubstMap::identity(4);
        m.set(t.var("x1").unwrap(), t.parse("x2").unwrap());
        assert_eq!(m.close_idempotent(8).unwrap(), m);
        let mut chain = SubstMap::identity(4);
        chain.set(t.var("x4").unwrap(), t.parse("x3 + 1").unwrap());
        chain.set(t.var("x3").unwrap(), t.parse("x2*x1").unwrap());
        let closed = chain.close_idempotent(8).unwrap();
        assert!(closed.is_idempotent());
        assert_eq!(
            closed.get(t.var("x4").unwrap()),
            &t.parse("x1*x2 + 1").unwrap()
        );
        let mut cyc = SubstMap::identity(4);
        cyc.set(t.var("x1").unwrap(), t.parse("x2").unwrap());
        cyc.set(t.var("x2").unwrap(), t.parse("x1").unwrap());
        assert_eq!(cyc.close_idempotent(8), Err(Error::NonStabilizing(8)));
    }
}
