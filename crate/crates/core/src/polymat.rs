//! Matrices for right actions: row = source basis element, column = target
//! basis element. The operator product `Sq^a Sq^b` on degree n is the matrix
//! product `Sq(b, n) · Sq(a, n + b)`.

use std::fmt;

use crate::error::Error;
use crate::poly::{Poly, SubstMap, VarTable};

/// Operations the Adem and derivation machinery needs from a matrix type.
pub trait ActionMatrix: Clone + Send + Sync {
    fn zeros(rows: usize, cols: usize) -> Self;
    fn identity(n: usize) -> Self;
    /// Matrix with a 1 wherever `bit(row, col)` holds.
    fn from_pattern(rows: usize, cols: usize, bit: impl Fn(usize, usize) -> bool) -> Self;
    fn rows(&self) -> usize;
    fn cols(&self) -> usize;
    /// `self` followed by `then`, i.e. the matrix product `self · then`.
    fn compose(&self, then: &Self) -> Result<Self, Error>;
    fn add_assign(&mut self, other: &Self) -> Result<(), Error>;
    fn is_zero(&self) -> bool;
}

/// Matrix with polynomial entries, stored row-major.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PolyMatrix {
    rows: usize,
    cols: usize,
    entries: Vec<Poly>,
}

impl PolyMatrix {
    pub fn from_rows(rows: Vec<Vec<Poly>>) -> Self {
        let r = rows.len();
        let c = rows.first().map_or(0, Vec::len);
        assert!(rows.iter().all(|row| row.len() == c), "ragged rows");
        Self {
            rows: r,
            cols: c,
            entries: rows.into_iter().flatten().collect(),
        }
    }

    pub fn from_fn(rows: usize, cols: usize, f: impl FnMut(usize, usize) -> Poly) -> Self {
        let mut f = f;
        let mut entries = Vec::with_capacity(rows * cols);
        for r in 0..rows {
            for c in 0..cols {
                entries.push(f(r, c));
            }
        }
        Self {
            rows,
            cols,
            entries,
        }
    }

    pub fn get(&self, r: usize, c: usize) -> &Poly {
        &self.entries[r * self.cols + c]
    }

    pub fn set(&mut self, r: usize, c: usize, p: Poly) {
        self.entries[r * self.cols + c] = p;
    }

    pub fn entries(&self) -> &[Poly] {
        &self.entries
    }

    pub fn map_entries(&self, f: impl Fn(&Poly) -> Poly) -> Self {
        Self {
            rows: self.rows,
            cols: self.cols,
            entries: self.entries.iter().map(f).collect(),
        }
    }

    pub fn substitute(&self, m: &SubstMap) -> Self {
        self.map_entries(|p| p.substitute(m))
    }

    /// Evaluate every entry at an F2 point given per variable.
    pub fn eval(&self, values: &[bool]) -> BitMatrix {
        BitMatrix::from_pattern(self.rows, self.cols, |r, c| self.get(r, c).eval(values))
    }

    /// Block matrix `[[upper_left, upper_right], [0, lower_right]]`.
    pub fn assemble_block(
        upper_left: &PolyMatrix,
        upper_right: &PolyMatrix,
        lower_right: &PolyMatrix,
    ) -> Result<Self, Error> {
        let top = upper_left.rows;
        let left = upper_left.cols;
        if upper_right.rows != top {
            return Err(Error::ShapeMismatch(
                top,
                left,
                upper_right.rows,
                upper_right.cols,
            ));
        }
        if lower_right.cols != upper_right.cols {
            return Err(Error::ShapeMismatch(
                upper_right.rows,
                upper_right.cols,
                lower_right.rows,
                lower_right.cols,
            ));
        }
        let rows = top + lower_right.rows;
        let cols = left + upper_right.cols;
        Ok(Self::from_fn(rows, cols, |r, c| {
            match (r < top, c < left) {
                (true, true) => upper_left.get(r, c).clone(),
                (true, false) => upper_right.get(r, c - left).clone(),
                (false, true) => Poly::zero(),
                (false, false) => lower_right.get(r - top, c - left).clone(),
            }
        }))
    }

    pub fn display<'a>(&'a self, table: &'a VarTable) -> MatrixDisplay<'a> {
        MatrixDisplay { m: self, table }
    }
}

/// Bracketed rows with space-separated, right-aligned entries.
pub struct MatrixDisplay<'a> {
    m: &'a PolyMatrix,
    table: &'a VarTable,
}

impl fmt::Display for MatrixDisplay<'_> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let cells: Vec<String> = self
            .m
            .entries
            .iter()
            .map(|p| self.table.magma(p).to_string())
            .collect();
        let width = cells.iter().map(String::len).max().unwrap_or(0);
        for r in 0..self.m.rows {
            f.write_str("[")?;
            for c in 0..self.m.cols {
                write!(
                    f,
                    "{:>w$}",
                    cells[r * self.m.cols + c],
                    w = width + usize::from(c > 0)
                )?;
            }
            writeln!(f, "]")?;
        }
        Ok(())
    }
}

impl ActionMatrix for PolyMatrix {
    fn zeros(rows: usize, cols: usize) -> Self {
        Self {
            rows,
            cols,
            entries: vec![Poly::zero(); rows * cols],
        }
    }

    fn identity(n: usize) -> Self {
        Self::from_fn(n, n, |r, c| Poly::constant(r == c))
    }

    fn from_pattern(rows: usize, cols: usize, bit: impl Fn(usize, usize) -> bool) -> Self {
        Self::from_fn(rows, cols, |r, c| Poly::constant(bit(r, c)))
    }

    fn rows(&self) -> usize {
        self.rows
    }

    fn cols(&self) -> usize {
        self.cols
    }

    fn compose(&self, then: &Self) -> Result<Self, Error> {
        if self.cols != then.rows {
            return Err(Error::ShapeMismatch(
                self.rows, self.cols, then.rows, then.cols,
            ));
        }
        let mut out = Self::zeros(self.rows, then.cols);
        for r in 0..self.rows {
            for k in 0..self.cols {
                let a = self.get(r, k);
                if a.is_zero() {
                    continue;
                }
                for c in 0..then.cols {
                    let b = then.get(k, c);
                    if !b.is_zero() {
                        out.entries[r * then.cols + c].add_assign(&a.mul(b));
                    }
                }
            }
        }
        Ok(out)
    }

    fn add_assign(&mut self, other: &Self) -> Result<(), Error> {
        if (self.rows, self.cols) != (other.rows, other.cols) {
            return Err(Error::ShapeMismatch(
                self.rows, self.cols, other.rows, other.cols,
            ));
        }
        for (a, b) in self.entries.iter_mut().zip(&other.entries) {
            a.add_assign(b);
        }
        Ok(())
    }

    fn is_zero(&self) -> bool {
        self.entries.iter().all(Poly::is_zero)
    }
}

/// Matrix over F2 with each row packed into a bit mask (at most 32 columns).
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct BitMatrix {
    cols: usize,
    rows: Vec<u32>,
}

impl BitMatrix {
    pub fn get(&self, r: usize, c: usize) -> bool {
        self.rows[r] >> c & 1 == 1
    }

    pub fn row_mask(&self, r: usize) -> u32 {
        self.rows[r]
    }

    pub fn from_masks(cols: usize, rows: Vec<u32>) -> Self {
        assert!(cols <= 32);
        Self { cols, rows }
    }
}

impl ActionMatrix for BitMatrix {
    fn zeros(rows: usize, cols: usize) -> Self {
        assert!(cols <= 32);
        Self {
            cols,
            rows: vec![0; rows],
        }
    }

    fn identity(n: usize) -> Self {
        Self::from_pattern(n, n, |r, c| r == c)
    }

    fn from_pattern(rows: usize, cols: usize, bit: impl Fn(usize, usize) -> bool) -> Self {
        assert!(cols <= 32);
        let rows = (0..rows)
            .map(|r| {
                (0..cols)
                    .filter(|&c| bit(r, c))
                    .fold(0u32, |m, c| m | 1 << c)
            })
            .collect();
        Self { cols, rows }
    }

    fn rows(&self) -> usize {
        self.rows.len()
    }

    fn cols(&self) -> usize {
        self.cols
    }

    fn compose(&self, then: &Self) -> Result<Self, Error> {
        if self.cols != then.rows.len() {
            return Err(Error::ShapeMismatch(
                self.rows.len(),
                self.cols,
                then.rows.len(),
                then.cols,
            ));
        }
        let rows = self
            .rows
            .iter()
            .map(|&mask| {
                let mut acc = 0;
                let mut m = mask;
                while m != 0 {
                    let k = m.trailing_zeros() as usize;
                    acc ^= then.rows[k];
                    m &= m - 1;
                }
                acc
            })
            .collect();
        Ok(Self {
            cols: then.cols,
            rows,
        })
    }

    fn add_assign(&mut self, other: &Self) -> Result<(), Error> {
        if (self.rows.len(), self.cols) != (other.rows.len(), other.cols) {
            return Err(Error::ShapeMismatch(
                self.rows.len(),
                self.cols,
                other.rows.len(),
                other.cols,
            ));
        }
        self.rows
            .iter_mut()
            .zip(&other.rows)
            .for_each(|(a, b)| *a ^= b);
        Ok(())
    }

    fn is_zero(&self) -> bool {
        self.rows.iter().all(|&m| m == 0)
    }
}
