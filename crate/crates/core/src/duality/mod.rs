//! Conjugation χ(Sq^a), the complement map θ, and the induced duality on
//! each variety.

use crate::error::Error;
use crate::exec::Exec;
use crate::family::{BitFamily, Family, PolyFamily};
use crate::milnor::{Algebra, MilnorExponent};
use crate::pipeline::{Case, Reduction};
use crate::polymat::{ActionMatrix, BitMatrix};
use crate::variety::{housing, CoordinateMap, Point, Variety};

pub mod hopf;

/// Highest square whose conjugate is needed to read off the coordinates.
pub const MAX_CONJUGATE: usize = 16;

/// χ(Sq^a) for a <= 16 via χ(Sq^a) = Σ_{k<a} Sq^{a-k} χ(Sq^k); `norm`
/// is applied to every new matrix.
pub fn antipode_family<M: ActionMatrix>(
    fam: &Family<M>,
    norm: impl Fn(M) -> M,
) -> Result<Family<M>, Error> {
    let top = fam.top();
    let mut chi = fam.clone();
    for a in 2..=MAX_CONJUGATE {
        for j in 0..=top {
            if j + a > top {
                continue;
            }
            let mut acc = fam.get(a, j).clone();
            for k in 1..a {
                acc.add_assign(&chi.get(k, j).compose(fam.get(a - k, j + k))?)?;
            }
            chi.set(a, j, norm(acc));
        }
    }
    Ok(chi)
}

/// Conjugates of a symbolic family, reduced modulo x^2 = x.
pub fn antipode_poly(fam: &PolyFamily) -> Result<PolyFamily, Error> {
    antipode_family(fam, |m| m.map_entries(|p| p.boolean_nf()))
}

/// Conjugates of a concrete family.
pub fn antipode_bits(fam: &BitFamily) -> Result<BitFamily, Error> {
    antipode_family(fam, |m: BitMatrix| m)
}

/// Complement of a Milnor exponent against the top class of the algebra.
pub fn theta(alg: Algebra, r: MilnorExponent) -> Result<MilnorExponent, Error> {
    let ok = match alg {
        Algebra::A2 => r.r1 <= 7 && r.r2 <= 3 && r.r3 <= 1,
        Algebra::B2 => r.r1 <= 7 && r.r2 <= 3 && r.r3 == 0,
    };
    if !ok {
        return Err(Error::InvalidExponent(r.r1, r.r2, r.r3));
    }
    Ok(alg.complement(r))
}

/// Read the dual coordinates from a conjugate family: the image of the
/// coordinate housed at `Sq(y)` in `Sq^i Sq(x)` is the coefficient of θ(x)
/// in χ(Sq^i) θ(y).
fn read_dual<M: ActionMatrix, T>(
    case: Case,
    chi: &Family<M>,
    entry: impl Fn(&M, usize, usize) -> T,
) -> Result<Vec<T>, Error> {
    let alg = case.algebra();
    let top = alg.top_degree();
    housing(case)
        .iter()
        .map(|h| {
            let k = h.source.degree();
            let (tx, ty) = (theta(alg, h.source)?, theta(alg, h.target)?);
            let m = chi.get(h.op, top - k - h.op);
            let row = alg
                .index_of(ty)
                .ok_or(Error::InvalidExponent(ty.r1, ty.r2, ty.r3))?;
            let col = alg
                .index_of(tx)
                .ok_or(Error::InvalidExponent(tx.r1, tx.r2, tx.r3))?;
            Ok(entry(m, row, col))
        })
        .collect()
}

/// The duality D on a variety as polynomial images of the free coordinates.
pub fn duality_map(red: &Reduction) -> Result<CoordinateMap, Error> {
    let chi = antipode_poly(&red.family)?;
    let images = read_dual(red.case, &chi, |m, r, c| m.get(r, c).clone())?;
    Ok(CoordinateMap {
        name: "D",
        source: red.case,
        target: red.case,
        targets: housing(red.case).iter().map(|h| h.var).collect(),
        images,
    })
}

/// Dual point computed from the concrete action at the point, without the
/// symbolic map.
pub fn dual_point_numeric(red: &Reduction, p: &Point) -> Result<Point, Error> {
    let fam = red.numeric_family(&p.0)?;
    let chi = antipode_bits(&fam)?;
    Ok(Point(read_dual(red.case, &chi, |m, r, c| m.get(r, c))?))
}

/// Image of a point under D; errors if the point is off the variety.
pub fn dual_point(variety: &Variety, map: &CoordinateMap, p: &Point) -> Result<Point, Error> {
    if !variety.contains(p)? {
        return Err(Error::OffVariety);
    }
    map.apply(variety, p)
}

/// Fixed points of D, in lexicographic order.
pub fn self_dual_points(variety: &Variety, map: &CoordinateMap, exec: Exec) -> Vec<Point> {
    exec.filter(variety.points(exec), |p| {
        map.apply(variety, p).as_ref() == Ok(p)
    })
}

/// Check D_B q = s D_gen and D_B s = q D_gen on every point of V_Q.
pub fn duality_exchanges_s_q(
    gen: &Variety,
    d_gen: &CoordinateMap,
    b: &Variety,
    d_b: &CoordinateMap,
    q: &CoordinateMap,
    s: &CoordinateMap,
    exec: Exec,
) -> Result<bool, Error> {
    let vq: Vec<Point> = gen
        .points(exec)
        .into_iter()
        .filter(|p| crate::variety::vq_member(gen, p).unwrap_or(false))
        .collect();
    let checks = exec.map(&vq, |p| -> Result<bool, Error> {
        let dp = d_gen.apply(gen, p)?;
        let lhs1 = d_b.apply(b, &q.apply(gen, p)?)?;
        let rhs1 = s.apply(gen, &dp)?;
        let lhs2 = d_b.apply(b, &s.apply(gen, p)?)?;
        let rhs2 = q.apply(gen, &dp)?;
        Ok(lhs1 == rhs1 && lhs2 == rhs2)
    });
    checks.into_iter().try_fold(true, |acc, c| Ok(acc && c?))
}
