use proptest::prelude::*;
use rbundle::dspace::{
    basis, basis_d0, dim_bigraded, normal_form, raw_monomials, BigradedForm, Mono,
};
use rbundle::foundation::Poly;
use rbundle::{Field, Matrix, Scalar};

/// Dimension of the `(a, b)` piece computed as raw monomials minus the rank of
/// the ideal `(x1 u0, x2 u0, x1 u2 - x2 u1)` in that bidegree.
fn dim_by_ideal(a: u32, b: u32) -> usize {
    let raw = raw_monomials(a, b);
    if a == 0 || b == 0 {
        return raw.len();
    }
    let f = Field::Rational;
    let index = |m: Mono| raw.iter().position(|r| *r == m).unwrap();
    let mut rows = Vec::new();
    for m in raw_monomials(a - 1, b - 1) {
        let shift = |d: [u8; 6]| std::array::from_fn::<u8, 6, _>(|i| m[i] + d[i]);
        for g in [[0, 1, 0, 1, 0, 0], [0, 0, 1, 1, 0, 0]] {
            let mut row = vec![f.zero(); raw.len()];
            row[index(shift(g))] = f.one();
            rows.push(row);
        }
        let mut row = vec![f.zero(); raw.len()];
        row[index(shift([0, 1, 0, 0, 0, 1]))] = f.one();
        row[index(shift([0, 0, 1, 0, 1, 0]))] = -f.one();
        rows.push(row);
    }
    raw.len() - Matrix::from_rows(f, rows).rank()
}

fn chi(a: u32, b: u32) -> usize {
    let n = (a + b) as usize;
    (n + 1) * (n + 2) / 2
}

#[test]
fn dimension_is_euler_characteristic() {
    for a in 0..=4 {
        for b in 0..=4 {
            assert_eq!(dim_bigraded(a, b), chi(a, b), "({a}, {b})");
            assert_eq!(dim_by_ideal(a, b), chi(a, b), "({a}, {b})");
        }
    }
}

#[test]
fn generators_reduce_to_zero() {
    let f = Field::Rational;
    let m = |e: Mono| Poly::monomial(e, f.one());
    assert!(BigradedForm::new(1, 1, &m([0, 1, 0, 1, 0, 0]))
        .unwrap()
        .is_zero());
    assert!(BigradedForm::new(1, 1, &m([0, 0, 1, 1, 0, 0]))
        .unwrap()
        .is_zero());
    let rel = m([0, 1, 0, 0, 0, 1]).sub(&m([0, 0, 1, 0, 1, 0]));
    assert!(BigradedForm::new(1, 1, &rel).unwrap().is_zero());
}

#[test]
fn d0_basis_counts() {
    // sections of the blow-up in bidegree (a, b): forms of degree a in x
    // times degree b in v, modulo x1 v2 - x2 v1
    for a in 0..=3u32 {
        for b in 0..=3u32 {
            let raw = ((a + 1) * (a + 2) / 2 * (b + 1)) as usize;
            let relations = if a >= 1 && b >= 1 {
                (a * (a + 1) / 2 * b) as usize
            } else {
                0
            };
            assert_eq!(basis_d0(a, b).len(), raw - relations, "({a}, {b})");
        }
    }
}

fn form(a: u32, b: u32) -> impl Strategy<Value = Poly<6>> {
    let monos = raw_monomials(a, b);
    prop::collection::vec((0..monos.len(), -3i64..=3), 0..6).prop_map(move |terms| {
        let f = Field::Rational;
        let mut p = Poly::zero(f);
        for (i, c) in terms {
            p.add_term(monos[i], f.from_i64(c));
        }
        p
    })
}

proptest! {
    #[test]
    fn normal_form_is_idempotent_and_lands_in_basis(a in 0u32..4, b in 0u32..4) {
        let normal = basis(a, b);
        for m in raw_monomials(a, b) {
            if let Some(n) = normal_form(m) {
                prop_assert_eq!(normal_form(n), Some(n));
                prop_assert!(normal.contains(&n));
            }
        }
    }

    #[test]
    fn reduction_is_multiplicative(p in form(1, 2), q in form(2, 1)) {
        let (fp, fq) = (BigradedForm::new(1, 2, &p).unwrap(), BigradedForm::new(2, 1, &q).unwrap());
        let direct = BigradedForm::new(3, 3, &p.mul(&q)).unwrap();
        prop_assert_eq!(fp.mul(&fq), direct);
    }

    #[test]
    fn restrictions_agree_on_l(p in form(2, 2)) {
        let g = BigradedForm::new(2, 2, &p).unwrap();
        prop_assert_eq!(g.to_d0().to_l(), g.to_d1().to_l());
    }

    #[test]
    fn restrictions_are_ring_maps(p in form(1, 1), q in form(1, 2)) {
        let (f, g) = (BigradedForm::new(1, 1, &p).unwrap(), BigradedForm::new(1, 2, &q).unwrap());
        prop_assert_eq!(f.mul(&g).to_d1(), f.to_d1().mul(&g.to_d1()));
        prop_assert_eq!(f.mul(&g).to_d0(), f.to_d0().mul(&g.to_d0()));
    }

    #[test]
    fn evaluation_respects_the_ideal(p in form(2, 1), u in prop::array::uniform3(-3i64..=3)) {
        // on D1, x = [1:0:0]; the reduced and unreduced forms agree there
        let f = Field::Rational;
        let g = BigradedForm::new(2, 1, &p).unwrap();
        let u: [Scalar; 3] = u.map(|v| f.from_i64(v));
        let point = [f.one(), f.zero(), f.zero(), u[0].clone(), u[1].clone(), u[2].clone()];
        prop_assert_eq!(g.eval_d1(&u), p.eval(&point));
    }
}
