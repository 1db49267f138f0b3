//! Milnor basis of A(2) and of the quotient B(2) = A(2)//E[Q2].
//!
//! An element Sq(r1,r2,r3) of A(2) has 0 <= r1 <= 7, 0 <= r2 <= 3, 0 <= r3 <= 1
//! and degree r1 + 3 r2 + 7 r3. B(2) keeps the elements with r3 = 0.

use std::fmt;
use std::sync::OnceLock;

use serde::{Deserialize, Serialize};

use crate::error::Error;

/// Top degree of A(2).
pub const A2_TOP: usize = 23;
/// Top degree of B(2).
pub const B2_TOP: usize = 16;
/// Largest degree accepted by [`basis`]; anything above yields an empty list.
pub const MAX_QUERY_DEGREE: usize = 39;

/// Exponent triple naming the Milnor basis element Sq(r1,r2,r3).
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub struct MilnorExponent {
    pub r1: u8,
    pub r2: u8,
    pub r3: u8,
}

impl MilnorExponent {
    pub const ONE: Self = Self {
        r1: 0,
        r2: 0,
        r3: 0,
    };
    pub const Q2: Self = Self {
        r1: 0,
        r2: 0,
        r3: 1,
    };
    pub const TOP: Self = Self {
        r1: 7,
        r2: 3,
        r3: 1,
    };

    pub fn new(r1: u8, r2: u8, r3: u8) -> Result<Self, Error> {
        if r1 > 7 || r2 > 3 || r3 > 1 {
            return Err(Error::InvalidExponent(r1, r2, r3));
        }
        Ok(Self { r1, r2, r3 })
    }

    pub(crate) const fn raw(r1: u8, r2: u8, r3: u8) -> Self {
        Self { r1, r2, r3 }
    }

    pub fn degree(self) -> usize {
        self.r1 as usize + 3 * self.r2 as usize + 7 * self.r3 as usize
    }

    pub fn in_b_part(self) -> bool {
        self.r3 == 0
    }

    /// The same exponent with r3 cleared (the B(2) element it projects to).
    pub fn b_part(self) -> Self {
        Self { r3: 0, ..self }
    }

    /// Complement against the top element: (7-r1, 3-r2, 1-r3).
    pub fn complement(self) -> Self {
        Self::raw(7 - self.r1, 3 - self.r2, 1 - self.r3)
    }

    /// Complement inside B(2): (7-r1, 3-r2, 0).
    pub fn complement_b(self) -> Self {
        Self::raw(7 - self.r1, 3 - self.r2, 0)
    }
}

impl fmt::Display for MilnorExponent {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.r3 == 0 {
            write!(f, "Sq({},{})", self.r1, self.r2)
        } else {
            write!(f, "Sq({},{},{})", self.r1, self.r2, self.r3)
        }
    }
}

/// Which slice of A(2) a graded basis covers.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum Part {
    /// All of A(2): the r3 = 0 block followed by the r3 = 1 block.
    Full,
    /// Elements with r3 = 0, which also form the basis of B(2).
    BPart,
    /// Elements with r3 = 1, i.e. B(2)·Q2.
    QPart,
}

struct Tables {
    full: Vec<Vec<MilnorExponent>>,
    b: Vec<Vec<MilnorExponent>>,
    q: Vec<Vec<MilnorExponent>>,
}

fn tables() -> &'static Tables {
    static TABLES: OnceLock<Tables> = OnceLock::new();
    TABLES.get_or_init(|| {
        let block = |n: usize, r3: u8| -> Vec<MilnorExponent> {
            let shift = 7 * r3 as usize;
            (0..=3u8)
                .filter_map(|r2| {
                    let r1 = n.checked_sub(shift + 3 * r2 as usize)?;
                    (r1 <= 7).then(|| MilnorExponent::raw(r1 as u8, r2, r3))
                })
                .collect()
        };
        let b: Vec<_> = (0..=MAX_QUERY_DEGREE).map(|n| block(n, 0)).collect();
        let q: Vec<_> = (0..=MAX_QUERY_DEGREE).map(|n| block(n, 1)).collect();
        let full = b
            .iter()
            .zip(&q)
            .map(|(x, y)| x.iter().chain(y).copied().collect())
            .collect();
        Tables { full, b, q }
    })
}

/// Ordered basis of the given degree; empty outside the support.
pub fn basis(degree: usize, part: Part) -> &'static [MilnorExponent] {
    let t = tables();
    let table = match part {
        Part::Full => &t.full,
        Part::BPart => &t.b,
        Part::QPart => &t.q,
    };
    table.get(degree).map_or(&[], Vec::as_slice)
}

/// C(m, n) mod 2 by Lucas' theorem.
pub fn binom_mod2(m: u32, n: u32) -> bool {
    n <= m && (n & !m) == 0
}

/// Raw term list of the index scan for Sq^a · Sq(r), one entry per odd
/// coefficient found; duplicates would mean a coefficient of 2.
pub fn sq_act_terms(a: u8, r: MilnorExponent) -> Vec<MilnorExponent> {
    assert!(a <= 7, "sq_act is only defined for a <= 7");
    let (a, r1, r2, r3) = (a as i32, r.r1 as i32, r.r2 as i32, r.r3 as i32);
    let mut out = Vec::new();
    for j in 0..=r2.min(a / 4) {
        for i in 0..=r1.min((a - 4 * j) / 2) {
            if a - 2 * i - 4 * j < 0 {
                continue;
            }
            let n1 = a + r1 - 3 * i - 4 * j;
            let n2 = r2 + i - j;
            let n3 = r3 + j;
            let odd = binom_mod2(n1 as u32, (r1 - i) as u32)
                && binom_mod2(n2 as u32, i as u32)
                && binom_mod2(n3 as u32, j as u32);
            if odd {
                out.push(MilnorExponent::raw(n1 as u8, n2 as u8, n3 as u8));
            }
        }
    }
    out
}

/// Sq^a · Sq(r) in A(2) as a mod-2 set of basis elements, sorted.
pub fn sq_act(a: u8, r: MilnorExponent) -> Vec<MilnorExponent> {
    let mut terms = sq_act_terms(a, r);
    terms.sort();
    let mut out: Vec<MilnorExponent> = Vec::with_capacity(terms.len());
    for t in terms {
        if out.last() == Some(&t) {
            out.pop();
        } else {
            out.push(t);
        }
    }
    out
}

/// Q2 · Sq(r), which is Sq(r1,r2,1) when r3 = 0 and zero otherwise.
pub fn q2_mult(r: MilnorExponent) -> Option<MilnorExponent> {
    (r.r3 == 0).then_some(MilnorExponent { r3: 1, ..r })
}

/// The algebra whose self-action is being extended.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum Algebra {
    A2,
    B2,
}

impl Algebra {
    pub fn top_degree(self) -> usize {
        match self {
            Algebra::A2 => A2_TOP,
            Algebra::B2 => B2_TOP,
        }
    }

    pub fn part(self) -> Part {
        match self {
            Algebra::A2 => Part::Full,
            Algebra::B2 => Part::BPart,
        }
    }

    pub fn basis(self, degree: usize) -> &'static [MilnorExponent] {
        basis(degree, self.part())
    }

    pub fn dim(self, degree: usize) -> usize {
        self.basis(degree).len()
    }

    pub fn total_dim(self) -> usize {
        (0..=self.top_degree()).map(|n| self.dim(n)).sum()
    }

    pub fn index_of(self, r: MilnorExponent) -> Option<usize> {
        self.basis(r.degree()).iter().position(|&x| x == r)
    }

    /// Sq^a acting on the basis element r; in B(2) terms divisible by Q2 vanish.
    pub fn act(self, a: u8, r: MilnorExponent) -> Vec<MilnorExponent> {
        let mut terms = sq_act(a, r);
        if self == Algebra::B2 {
            terms.retain(|t| t.r3 == 0);
        }
        terms
    }

    /// The complement map pairing degree n with degree top - n.
    pub fn complement(self, r: MilnorExponent) -> MilnorExponent {
        match self {
            Algebra::A2 => r.complement(),
            Algebra::B2 => r.complement_b(),
        }
    }
}
