//! Families of Steenrod square matrices Sq(i, n): A_n -> A_{n+i}, the
//! derivation of Sq^9..Sq^15 and Sq^17..Sq^23 from Sq^8 and Sq^16, and Adem
//! residuals.

use crate::error::Error;
use crate::milnor::{binom_mod2, Algebra};
use crate::polymat::{ActionMatrix, BitMatrix, PolyMatrix};

/// Largest operation degree tracked.
pub const MAX_OP: usize = 23;

/// Sq^i on every degree n of the algebra, for 0 <= i <= 23.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Family<M> {
    algebra: Algebra,
    sq: Vec<Vec<M>>,
}

pub type PolyFamily = Family<PolyMatrix>;
pub type BitFamily = Family<BitMatrix>;

impl<M: ActionMatrix> Family<M> {
    /// Sq^0..Sq^7 from the Milnor product; every higher square is zero.
    pub fn known(algebra: Algebra) -> Self {
        let top = algebra.top_degree();
        let sq = (0..=MAX_OP)
            .map(|i| {
                (0..=top)
                    .map(|n| {
                        let src = algebra.basis(n);
                        let dst = if n + i <= top {
                            algebra.basis(n + i)
                        } else {
                            &[]
                        };
                        if i > 7 {
                            return M::zeros(src.len(), dst.len());
                        }
                        let images: Vec<_> = src.iter().map(|&r| algebra.act(i as u8, r)).collect();
                        M::from_pattern(src.len(), dst.len(), |row, col| {
                            images[row].contains(&dst[col])
                        })
                    })
                    .collect()
            })
            .collect();
        Self { algebra, sq }
    }

    pub fn algebra(&self) -> Algebra {
        self.algebra
    }

    pub fn top(&self) -> usize {
        self.algebra.top_degree()
    }

    pub fn get(&self, i: usize, n: usize) -> &M {
        &self.sq[i][n]
    }

    pub fn set(&mut self, i: usize, n: usize, m: M) {
        let old = &self.sq[i][n];
        assert_eq!(
            (old.rows(), old.cols()),
            (m.rows(), m.cols()),
            "Sq({i},{n}) shape"
        );
        self.sq[i][n] = m;
    }

    pub fn map<N: ActionMatrix>(&self, f: impl Fn(&M) -> N) -> Family<N> {
        Family {
            algebra: self.algebra,
            sq: self
                .sq
                .iter()
                .map(|row| row.iter().map(&f).collect())
                .collect(),
        }
    }

    /// Sum of products `Sq(p, n) · Sq(q, n + p)` over the given pairs.
    fn sum_of_products(&self, n: usize, pairs: &[(usize, usize)]) -> Result<M, Error> {
        let (p0, q0) = pairs[0];
        let mut acc = self.get(p0, n).compose(self.get(q0, n + p0))?;
        for &(p, q) in &pairs[1..] {
            acc.add_assign(&self.get(p, n).compose(self.get(q, n + p))?)?;
        }
        Ok(acc)
    }

    /// Fill Sq^{g+1}..Sq^{g+7} from Sq^g (g = 8 or 16) via the Adem relations
    /// for Sq^1 Sq^g, Sq^2 Sq^g and Sq^4 Sq^g.
    pub fn derive_from(&mut self, g: usize) -> Result<(), Error> {
        let top = self.top();
        let recipes: [&[(usize, usize)]; 7] = [
            &[(g, 1)],
            &[(g, 2), (1, g + 1)],
            &[(g + 2, 1)],
            &[(g, 4), (1, g + 3), (2, g + 2)],
            &[(g + 4, 1)],
            &[(g + 4, 2), (1, g + 5)],
            &[(g + 6, 1)],
        ];
        for (d, pairs) in recipes.iter().enumerate() {
            let i = g + 1 + d;
            if i > MAX_OP {
                break;
            }
            for n in 0..=top {
                if n + i > top {
                    continue;
                }
                let m = self.sum_of_products(n, pairs)?;
                self.set(i, n, m);
            }
        }
        Ok(())
    }

    /// Residual of the Adem relation for `Sq^a Sq^b` on degree n.
    pub fn residual(&self, t: &AdemTriple) -> Result<M, Error> {
        let mut m = self.get(t.b, t.n).compose(self.get(t.a, t.n + t.b))?;
        for &k in &t.terms {
            m.add_assign(&self.get(k, t.n).compose(self.get(t.a + t.b - k, t.n + k))?)?;
        }
        Ok(m)
    }

    /// True iff every residual of the given triples vanishes.
    pub fn satisfies(&self, triples: &[AdemTriple]) -> Result<bool, Error> {
        for t in triples {
            if !self.residual(t)?.is_zero() {
                return Ok(false);
            }
        }
        Ok(true)
    }
}

/// One instance of the Adem relation `Sq^a Sq^b = Σ_k C(b-k-1, a-2k) Sq^{a+b-k} Sq^k`
/// on source degree n; `terms` lists the k with odd coefficient.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct AdemTriple {
    pub a: usize,
    pub b: usize,
    pub n: usize,
    pub terms: Vec<usize>,
}

/// Which Adem relations a pass visits.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct AdemPass {
    pub max_b: usize,
    pub max_a: Option<usize>,
    /// If set, skip relations whose right side needs `Sq^i` with i above it.
    pub available: Option<usize>,
}

impl AdemPass {
    /// Relations whose right side only involves Sq^i for i <= 15.
    pub fn below_sixteen() -> Self {
        Self {
            max_b: 15,
            max_a: Some(15),
            available: Some(15),
        }
    }

    /// Every relation reaching at most the top degree.
    pub fn full(top: usize) -> Self {
        Self {
            max_b: top,
            max_a: None,
            available: None,
        }
    }

    /// Relations among squares of degree at most 7.
    pub fn low() -> Self {
        Self {
            max_b: 7,
            max_a: None,
            available: Some(7),
        }
    }
}

/// Enumerate the Adem triples of a pass over an algebra with the given top degree.
pub fn adem_triples(top: usize, pass: AdemPass) -> Vec<AdemTriple> {
    let mut out = Vec::new();
    for b in 1..=pass.max_b {
        let a_hi = pass.max_a.map_or(2 * b - 1, |m| m.min(2 * b - 1));
        for a in 1..=a_hi {
            if a + b > top {
                continue;
            }
            let odd = |k: usize| binom_mod2((b - k - 1) as u32, (a - 2 * k) as u32);
            if let Some(avail) = pass.available {
                // k <= avail always holds here since k <= a/2 < b <= 15.
                if (0..=a / 2).any(|k| odd(k) && !(a + b - k <= avail && k <= avail)) {
                    continue;
                }
            }
            let terms: Vec<usize> = (0..=a / 2).filter(|&k| odd(k)).collect();
            for n in 0..=top - a - b {
                out.push(AdemTriple {
                    a,
                    b,
                    n,
                    terms: terms.clone(),
                });
            }
        }
    }
    out
}
