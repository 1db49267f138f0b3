//! Algebraic invariants of polynomials, substitutions, linear reduction and
//! matrices, checked on random inputs.

use a2var::duality::hopf::Profile;
use a2var::poly::{linear_rref, safe, Monomial};
use a2var::{ActionMatrix, BitMatrix, Point, Poly, PolyMatrix, SubstMap, Var, VarTable};
use proptest::prelude::*;

const NVARS: usize = 6;

fn monomial(max_degree: usize) -> impl Strategy<Value = Monomial> {
    prop::collection::vec(0..NVARS as u16, 0..=max_degree)
        .prop_map(|vs| Monomial::from_vars(vs.into_iter().map(Var)))
}

fn poly() -> impl Strategy<Value = Poly> {
    prop::collection::vec(monomial(3), 0..6).prop_map(Poly::from_monomials)
}

fn linear_poly() -> impl Strategy<Value = Poly> {
    prop::collection::vec(monomial(1), 0..4).prop_map(Poly::from_monomials)
}

fn point() -> impl Strategy<Value = Vec<bool>> {
    prop::collection::vec(any::<bool>(), NVARS)
}

fn subst() -> impl Strategy<Value = SubstMap> {
    prop::collection::vec(poly(), NVARS).prop_map(SubstMap::from_images)
}

/// A map sending each variable to a polynomial in lower-index variables, or
/// to itself.
fn triangular_subst() -> impl Strategy<Value = SubstMap> {
    (
        prop::collection::vec(poly(), NVARS),
        prop::collection::vec(any::<bool>(), NVARS),
    )
        .prop_map(|(ps, keep)| {
            let images = ps
                .into_iter()
                .zip(keep)
                .enumerate()
                .map(|(i, (p, k))| {
                    let lower = Poly::from_monomials(
                        p.terms()
                            .iter()
                            .filter(|m| m.vars().iter().all(|v| v.index() < i))
                            .cloned(),
                    );
                    if k {
                        Poly::var(Var(i as u16))
                    } else {
                        lower
                    }
                })
                .collect();
            SubstMap::from_images(images)
        })
}

fn poly_matrix(rows: usize, cols: usize) -> impl Strategy<Value = PolyMatrix> {
    prop::collection::vec(poly(), rows * cols)
        .prop_map(move |es| PolyMatrix::from_fn(rows, cols, |r, c| es[r * cols + c].clone()))
}

proptest! {
    #[test]
    fn addition_is_an_abelian_group(p in poly(), q in poly(), r in poly()) {
        prop_assert_eq!(p.add(&q), q.add(&p));
        prop_assert_eq!(p.add(&q).add(&r), p.add(&q.add(&r)));
        prop_assert!(p.add(&p).is_zero());
        prop_assert_eq!(p.add(&Poly::zero()), p.clone());
    }

    #[test]
    fn multiplication_is_a_commutative_ring(p in poly(), q in poly(), r in poly()) {
        prop_assert_eq!(p.mul(&q), q.mul(&p));
        prop_assert_eq!(p.mul(&q).mul(&r), p.mul(&q.mul(&r)));
        prop_assert_eq!(p.mul(&q.add(&r)), p.mul(&q).add(&p.mul(&r)));
        prop_assert_eq!(p.mul(&Poly::one()), p.clone());
    }

    #[test]
    fn evaluation_is_a_ring_map(p in poly(), q in poly(), x in point()) {
        prop_assert_eq!(p.add(&q).eval(&x), p.eval(&x) ^ q.eval(&x));
        prop_assert_eq!(p.mul(&q).eval(&x), p.eval(&x) & q.eval(&x));
    }

    #[test]
    fn boolean_normal_form_keeps_values(p in poly(), x in point()) {
        let nf = p.boolean_nf();
        prop_assert!(nf.is_boolean_normal());
        prop_assert_eq!(nf.eval(&x), p.eval(&x));
        prop_assert_eq!(nf.boolean_nf(), nf.clone());
    }

    #[test]
    fn substitution_is_a_ring_map(p in poly(), q in poly(), m in subst(), x in point()) {
        prop_assert_eq!(p.add(&q).substitute(&m), p.substitute(&m).add(&q.substitute(&m)));
        prop_assert_eq!(p.mul(&q).substitute(&m), p.substitute(&m).mul(&q.substitute(&m)));
        let images: Vec<bool> = m.images().iter().map(|f| f.eval(&x)).collect();
        prop_assert_eq!(p.substitute(&m).eval(&x), p.eval(&images));
    }

    #[test]
    fn closure_is_idempotent(m in triangular_subst(), p in poly()) {
        let f = m.close_idempotent(NVARS + 1).unwrap();
        prop_assert!(f.is_idempotent());
        let once = p.substitute(&f);
        prop_assert_eq!(once.substitute(&f), once);
        for i in 0..NVARS {
            let v = Var(i as u16);
            if m.is_fixed(v) {
                prop_assert!(f.is_fixed(v));
            }
        }
    }

    #[test]
    fn row_reduction_is_canonical(rels in prop::collection::vec(linear_poly(), 0..8), p in poly()) {
        let Ok(basis) = linear_rref(&rels, NVARS) else {
            return Ok(());
        };
        let mut reversed = rels.clone();
        reversed.reverse();
        let other = linear_rref(&reversed, NVARS).unwrap();
        prop_assert_eq!(basis.rows(), other.rows());
        for r in &rels {
            prop_assert!(basis.nf(r).is_zero());
        }
        for (row, &pivot) in basis.rows().iter().zip(basis.pivots()) {
            prop_assert!(row.mentions(pivot));
            prop_assert!(row.vars().iter().all(|&v| v <= pivot));
            for (other_row, &q) in basis.rows().iter().zip(basis.pivots()) {
                if q != pivot {
                    prop_assert!(!other_row.mentions(pivot));
                }
            }
        }
        let nf = basis.nf(&p);
        prop_assert_eq!(basis.nf(&nf), nf.clone());
        for &pivot in basis.pivots() {
            prop_assert!(!nf.mentions(pivot));
        }
    }

    #[test]
    fn composition_is_associative(a in poly_matrix(2, 3), b in poly_matrix(3, 2), c in poly_matrix(2, 2), x in point()) {
        let left = a.compose(&b).unwrap().compose(&c).unwrap();
        let right = a.compose(&b.compose(&c).unwrap()).unwrap();
        prop_assert_eq!(left.eval(&x), right.eval(&x));
        let bits = a.eval(&x).compose(&b.eval(&x)).unwrap();
        prop_assert_eq!(a.compose(&b).unwrap().eval(&x), bits);
    }

    #[test]
    fn bit_matrices_compose_like_boolean_products(
        a in prop::collection::vec(0u32..16, 3),
        b in prop::collection::vec(0u32..8, 4),
    ) {
        let (ma, mb) = (BitMatrix::from_masks(4, a.clone()), BitMatrix::from_masks(3, b.clone()));
        let prod = ma.compose(&mb).unwrap();
        for (r, row) in a.iter().enumerate() {
            for c in 0..3 {
                let want = (0..4).filter(|&k| row >> k & 1 == 1 && b[k] >> c & 1 == 1).count() % 2 == 1;
                prop_assert_eq!(prod.get(r, c), want);
            }
        }
        prop_assert!(ma.compose(&BitMatrix::identity(4)).unwrap() == ma);
    }

    #[test]
    fn point_text_round_trips(bits in prop::collection::vec(any::<bool>(), 1..20)) {
        let p = Point(bits);
        prop_assert_eq!(p.to_string().parse::<Point>().unwrap(), p);
    }

    #[test]
    fn profile_text_round_trips(hs in prop::collection::vec(0u32..6, 1..5)) {
        let p = Profile::new(hs).unwrap();
        prop_assert_eq!(p.to_string().parse::<Profile>().unwrap(), p);
    }

    #[test]
    fn canonical_text_round_trips(p in poly()) {
        let table = VarTable::from_groups(&[('x', NVARS)]);
        let nf = p.boolean_nf();
        prop_assert_eq!(table.parse(&table.canonical(&nf).to_string()).unwrap(), nf.clone());
        prop_assert_eq!(table.parse(&table.magma(&nf).to_string()).unwrap(), nf);
    }
}

#[test]
fn listed_safe_substitutions() {
    let t = VarTable::new(["x", "y", "z"]);
    let x = t.var("x").unwrap();
    assert!(safe(x, &t.parse("x + y*z").unwrap()));
    assert!(!safe(x, &t.parse("x*y + z").unwrap()));
    assert!(!safe(x, &t.parse("x + x*y").unwrap()));
}

#[test]
fn listed_ring_identities() {
    let t = VarTable::new(["x", "y"]);
    let x = t.parse("x").unwrap();
    let x1 = t.parse("x + 1").unwrap();
    assert!(x.add(&x).is_zero());
    assert_eq!(x.mul(&Poly::one()), x);
    assert_eq!(x1.mul(&x1), t.parse("x^2 + 1").unwrap());
    assert!(t.parse("x^2 + x").unwrap().boolean_nf().is_zero());
    assert_eq!(
        t.parse("x^2*y").unwrap().boolean_nf(),
        t.parse("x*y").unwrap()
    );
}
