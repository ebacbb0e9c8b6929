use proptest::prelude::*;
use rbundle::{Field, Matrix, Scalar};

const P: u64 = 7;

fn fp(v: &[Vec<u64>]) -> Matrix {
    let f = Field::prime(P).unwrap();
    Matrix::from_rows(
        f,
        v.iter()
            .map(|r| r.iter().map(|&x| f.from_i64(x as i64)).collect())
            .collect(),
    )
}

fn rat(v: &[Vec<i64>]) -> Matrix {
    let f = Field::Rational;
    Matrix::from_rows(
        f,
        v.iter()
            .map(|r| r.iter().map(|&x| f.from_i64(x)).collect())
            .collect(),
    )
}

/// Determinant mod P by permutation expansion, on plain integers.
fn leibniz_mod(m: &[Vec<u64>]) -> u64 {
    let n = m.len();
    let mut perm: Vec<usize> = (0..n).collect();
    let mut total = 0u64;
    permute(&mut perm, 0, &mut |p| {
        let inversions = (0..n)
            .flat_map(|i| (i + 1..n).map(move |j| (i, j)))
            .filter(|&(i, j)| p[i] > p[j])
            .count();
        let prod = (0..n).fold(1u64, |acc, i| acc * m[i][p[i]] % P);
        total = if inversions % 2 == 0 {
            (total + prod) % P
        } else {
            (total + P - prod) % P
        };
    });
    total
}

fn permute(p: &mut Vec<usize>, k: usize, visit: &mut impl FnMut(&[usize])) {
    if k == p.len() {
        visit(p);
        return;
    }
    for i in k..p.len() {
        p.swap(k, i);
        permute(p, k + 1, visit);
        p.swap(k, i);
    }
}

fn subsets(n: usize, k: usize) -> Vec<Vec<usize>> {
    (0u32..1 << n)
        .filter(|s| s.count_ones() as usize == k)
        .map(|s| (0..n).filter(|i| s >> i & 1 == 1).collect())
        .collect()
}

/// Rank as the size of the largest nonvanishing minor.
fn rank_by_minors(m: &[Vec<u64>]) -> usize {
    let (r, c) = (m.len(), m[0].len());
    (1..=r.min(c))
        .rev()
        .find(|&k| {
            subsets(r, k).iter().any(|rows| {
                subsets(c, k).iter().any(|cols| {
                    let sub: Vec<Vec<u64>> = rows
                        .iter()
                        .map(|&i| cols.iter().map(|&j| m[i][j]).collect())
                        .collect();
                    leibniz_mod(&sub) != 0
                })
            })
        })
        .unwrap_or(0)
}

fn matrix_fp(max: usize) -> impl Strategy<Value = Vec<Vec<u64>>> {
    (1..=max, 1..=max)
        .prop_flat_map(|(r, c)| prop::collection::vec(prop::collection::vec(0..P, c), r))
}

fn square_q(n: usize) -> impl Strategy<Value = Vec<Vec<i64>>> {
    prop::collection::vec(prop::collection::vec(-4i64..=4, n), n)
}

proptest! {
    #[test]
    fn rank_matches_minors(m in matrix_fp(4)) {
        prop_assert_eq!(fp(&m).rank(), rank_by_minors(&m));
    }

    #[test]
    fn det_matches_leibniz(m in (1usize..=4).prop_flat_map(|n| prop::collection::vec(prop::collection::vec(0..P, n), n))) {
        let f = Field::prime(P).unwrap();
        prop_assert_eq!(fp(&m).det(), f.from_i64(leibniz_mod(&m) as i64));
    }

    #[test]
    fn kernel_has_complementary_dimension(m in matrix_fp(5)) {
        let a = fp(&m);
        let kernel = a.kernel_basis();
        prop_assert_eq!(kernel.len(), a.cols() - a.rank());
        for v in &kernel {
            prop_assert!(a.mul_vec(v).iter().all(Scalar::is_zero));
        }
    }

    #[test]
    fn rank_invariant_under_invertible_factors(m in square_q(4), p in square_q(4), q in square_q(4)) {
        let (a, p, q) = (rat(&m), rat(&p), rat(&q));
        prop_assume!(!p.det().is_zero() && !q.det().is_zero());
        prop_assert_eq!(p.mul(&a).mul(&q).rank(), a.rank());
        prop_assert_eq!(a.transpose().rank(), a.rank());
    }

    #[test]
    fn det_is_multiplicative(m in square_q(3), n in square_q(3)) {
        let (a, b) = (rat(&m), rat(&n));
        prop_assert_eq!(a.mul(&b).det(), &a.det() * &b.det());
    }

    #[test]
    fn inverse_is_two_sided(m in square_q(3)) {
        let a = rat(&m);
        match a.inverse() {
            Some(inv) => {
                let id = Matrix::identity(Field::Rational, 3);
                prop_assert_eq!(a.mul(&inv), id.clone());
                prop_assert_eq!(inv.mul(&a), id);
            }
            None => prop_assert!(a.det().is_zero()),
        }
    }

    #[test]
    fn solve_returns_a_solution(m in square_q(3), rhs in prop::collection::vec(-4i64..=4, 3)) {
        let a = rat(&m);
        let b: Vec<Scalar> = rhs.iter().map(|&x| Field::Rational.from_i64(x)).collect();
        if let Some(x) = a.solve(&b) {
            prop_assert_eq!(a.mul_vec(&x), b);
        } else {
            prop_assert!(a.rank() < 3);
        }
    }

    #[test]
    fn prime_field_matches_integer_arithmetic(x in 0u64..P, y in 0u64..P) {
        let f = Field::prime(P).unwrap();
        let (a, b) = (f.from_i64(x as i64), f.from_i64(y as i64));
        prop_assert_eq!(&a + &b, f.from_i64(((x + y) % P) as i64));
        prop_assert_eq!(&a * &b, f.from_i64((x * y % P) as i64));
        prop_assert_eq!(&a - &b, f.from_i64(((x + P - y) % P) as i64));
        if y != 0 {
            let inv = b.inv().unwrap();
            prop_assert_eq!(&b * &inv, f.one());
        }
    }

    #[test]
    fn rationals_parse_and_print(n in -50i64..50, d in 1i64..20) {
        let f = Field::Rational;
        let s = f.parse(&format!("{n}/{d}")).unwrap();
        prop_assert_eq!(f.parse(&s.to_string()).unwrap(), s.clone());
        prop_assert_eq!(&s * &f.from_i64(d), f.from_i64(n));
    }
}

#[test]
fn rejects_bad_primes() {
    assert!(Field::prime(9).is_err());
    assert!(Field::prime(2).is_err());
    assert!(Field::prime(1 << 31).is_err());
    assert!(Field::prime(2_147_483_647).is_ok());
}
