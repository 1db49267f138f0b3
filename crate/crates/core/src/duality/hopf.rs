//! Finite check of the coproduct identity for the top class of a truncated
//! dual Steenrod algebra F2[ξ1..ξk]/(ξi^(2^ni)).
//!
//! With ψ(ξj) = Σ_i ξ_{j-i}^(2^i) ⊗ ξi and χ(ξj) = Σ_{i<j} ξ_{j-i}^(2^i) χ(ξi),
//! the check compares ψ(top) with Σ χ(ξ(R')) ⊗ ξ(R'') and with
//! Σ ξ(R') ⊗ χ(ξ(R'')), the sums running over R' + R'' = top.

use std::collections::BTreeSet;
use std::fmt;
use std::str::FromStr;

use serde::Serialize;

use crate::error::Error;

/// Truncation heights (n1, ..., nk); ξi vanishes when ni = 0.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Profile(Vec<u32>);

impl Profile {
    pub fn new(heights: Vec<u32>) -> Result<Self, Error> {
        if heights.is_empty() {
            return Err(Error::Profile("empty profile".into()));
        }
        if heights.iter().any(|&n| n > 15) {
            return Err(Error::Profile("heights above 15 are not supported".into()));
        }
        Ok(Self(heights))
    }

    pub fn heights(&self) -> &[u32] {
        &self.0
    }

    fn len(&self) -> usize {
        self.0.len()
    }

    /// Exponent bound 2^ni for ξi (1-based); indices beyond k give 1, so ξi = 0.
    fn bound(&self, i: usize) -> u32 {
        self.0.get(i.wrapping_sub(1)).map_or(1, |&n| 1 << n)
    }

    fn top(&self) -> Mono {
        Mono(self.0.iter().map(|&n| (1u32 << n) - 1).collect())
    }
}

impl FromStr for Profile {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self, Error> {
        let heights = s
            .split(',')
            .map(|t| {
                t.trim()
                    .parse::<u32>()
                    .map_err(|_| Error::Profile(format!("bad height '{t}'")))
            })
            .collect::<Result<Vec<_>, _>>()?;
        Self::new(heights)
    }
}

impl fmt::Display for Profile {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s: Vec<String> = self.0.iter().map(u32::to_string).collect();
        f.write_str(&s.join(","))
    }
}

/// Exponent vector of ξ1^e1 ... ξk^ek.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
struct Mono(Vec<u32>);

impl Mono {
    fn one(k: usize) -> Self {
        Self(vec![0; k])
    }

    /// ξj^e (with ξ0 = 1), or None when it vanishes in the quotient.
    fn xi_power(p: &Profile, j: usize, e: u32) -> Option<Self> {
        let mut m = Self::one(p.len());
        if e == 0 || j == 0 {
            return Some(m);
        }
        if j > p.len() || e >= p.bound(j) {
            return None;
        }
        m.0[j - 1] = e;
        Some(m)
    }

    fn mul(&self, other: &Self, p: &Profile) -> Option<Self> {
        let mut out = Vec::with_capacity(self.0.len());
        for (i, (a, b)) in self.0.iter().zip(&other.0).enumerate() {
            let e = a + b;
            if e >= p.bound(i + 1) {
                return None;
            }
            out.push(e);
        }
        Some(Self(out))
    }
}

impl fmt::Display for Mono {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self
            .0
            .iter()
            .enumerate()
            .filter(|(_, &e)| e > 0)
            .map(|(i, &e)| {
                if e == 1 {
                    format!("x{}", i + 1)
                } else {
                    format!("x{}^{e}", i + 1)
                }
            })
            .collect();
        if parts.is_empty() {
            f.write_str("1")
        } else {
            f.write_str(&parts.join("*"))
        }
    }
}

fn toggle<T: Ord>(set: &mut BTreeSet<T>, x: T) {
    if !set.remove(&x) {
        set.insert(x);
    }
}

type Elem = BTreeSet<Mono>;
type Tensor = BTreeSet<(Mono, Mono)>;

fn elem_mul(a: &Elem, b: &Elem, p: &Profile) -> Elem {
    let mut out = Elem::new();
    for x in a {
        for y in b {
            if let Some(m) = x.mul(y, p) {
                toggle(&mut out, m);
            }
        }
    }
    out
}

fn tensor_mul(a: &Tensor, b: &Tensor, p: &Profile) -> Tensor {
    let mut out = Tensor::new();
    for (x1, x2) in a {
        for (y1, y2) in b {
            if let (Some(l), Some(r)) = (x1.mul(y1, p), x2.mul(y2, p)) {
                toggle(&mut out, (l, r));
            }
        }
    }
    out
}

fn single(m: Option<Mono>) -> Elem {
    m.into_iter().collect()
}

/// χ(ξ0), ..., χ(ξk) in the quotient.
fn chi_generators(p: &Profile) -> Vec<Elem> {
    let k = p.len();
    let mut chi: Vec<Elem> = vec![single(Some(Mono::one(k)))];
    for j in 1..=k {
        let mut acc = Elem::new();
        for (i, c) in chi.iter().enumerate() {
            let coef = single(Mono::xi_power(p, j - i, 1 << i));
            for m in elem_mul(&coef, c, p) {
                toggle(&mut acc, m);
            }
        }
        chi.push(acc);
    }
    chi
}

fn chi_mono(m: &Mono, chi: &[Elem], p: &Profile) -> Elem {
    let mut acc = single(Some(Mono::one(p.len())));
    for (j, &e) in m.0.iter().enumerate() {
        for _ in 0..e {
            acc = elem_mul(&acc, &chi[j + 1], p);
        }
    }
    acc
}

fn psi_top(p: &Profile) -> Tensor {
    let k = p.len();
    let one = Mono::one(k);
    let mut acc: Tensor = [(one.clone(), one)].into_iter().collect();
    for (idx, &e) in p.top().0.iter().enumerate() {
        let j = idx + 1;
        let mut psi = Tensor::new();
        for i in 0..=j {
            if let (Some(l), Some(r)) = (Mono::xi_power(p, j - i, 1 << i), Mono::xi_power(p, i, 1))
            {
                toggle(&mut psi, (l, r));
            }
        }
        for _ in 0..e {
            acc = tensor_mul(&acc, &psi, p);
        }
    }
    acc
}

/// Every R' <= top componentwise.
fn splittings(top: &Mono) -> Vec<(Mono, Mono)> {
    let mut out = vec![(Vec::new(), Vec::new())];
    for &t in &top.0 {
        out = out
            .into_iter()
            .flat_map(|(a, b): (Vec<u32>, Vec<u32>)| {
                (0..=t).map(move |x| {
                    let mut a2 = a.clone();
                    let mut b2 = b.clone();
                    a2.push(x);
                    b2.push(t - x);
                    (a2, b2)
                })
            })
            .collect();
    }
    out.into_iter().map(|(a, b)| (Mono(a), Mono(b))).collect()
}

/// Outcome of the check, with a sample of the difference when it fails.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct HopfReport {
    pub profile: Profile,
    pub left: bool,
    pub right: bool,
    pub holds: bool,
    /// Up to ten terms of ψ(top) minus the failing sum, as `x ⊗ y`.
    pub difference: Vec<String>,
}

pub fn hopf_identity_check(p: &Profile) -> HopfReport {
    let chi = chi_generators(p);
    let psi = psi_top(p);
    let mut left = Tensor::new();
    let mut right = Tensor::new();
    for (r1, r2) in splittings(&p.top()) {
        for m in chi_mono(&r1, &chi, p) {
            toggle(&mut left, (m, r2.clone()));
        }
        for m in chi_mono(&r2, &chi, p) {
            toggle(&mut right, (r1.clone(), m));
        }
    }
    let diff = |other: &Tensor| -> Vec<String> {
        psi.symmetric_difference(other)
            .take(10)
            .map(|(a, b)| format!("{a} ⊗ {b}"))
            .collect()
    };
    let (l, r) = (psi == left, psi == right);
    let difference = if !l {
        diff(&left)
    } else if !r {
        diff(&right)
    } else {
        Vec::new()
    };
    HopfReport {
        profile: p.clone(),
        left: l,
        right: r,
        holds: l && r,
        difference,
    }
}
