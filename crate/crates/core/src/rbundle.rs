//! The matrix `Phi(A, B)` presenting an R-bundle on `D(p)`, the geometry of
//! its support, equivalence of R-bundles and stabilizers of the conic `C1`.

use std::collections::HashMap;
use std::fmt;

use serde::Serialize;

use crate::dspace::{BigradedForm, BinaryForm, D0Form, FormU, Mono, U0, U1, U2, X0};
use crate::foundation::{Field, Matrix, Poly, Scalar};
use crate::moduli::{eliminate_y1, tangent_and_normal, Direction, PointP2, SheafMatrix};
use crate::Error;

/// `Phi = [[e11, e12], [e21, e22]]`; the first column has bidegree `(0,1)`,
/// the second `(1,1)`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PhiMatrix {
    e11: BigradedForm,
    e21: BigradedForm,
    e12: BigradedForm,
    e22: BigradedForm,
}

fn linear_u_coeffs(f: &FormU) -> [Scalar; 3] {
    [U0, U1, U2].map(|v| {
        let mut m = [0u8; 6];
        m[v] = 1;
        f.poly().coeff(&m)
    })
}

fn mono(entries: &[(usize, u8)]) -> Mono {
    let mut m = [0; 6];
    for &(i, e) in entries {
        m[i] += e;
    }
    m
}

impl PhiMatrix {
    pub fn new(
        e11: BigradedForm,
        e21: BigradedForm,
        e12: BigradedForm,
        e22: BigradedForm,
    ) -> Result<Self, Error> {
        for (name, e, want) in [
            ("e11", &e11, (0, 1)),
            ("e21", &e21, (0, 1)),
            ("e12", &e12, (1, 1)),
            ("e22", &e22, (1, 1)),
        ] {
            if e.bidegree() != want {
                return Err(Error::InvalidPhi(format!(
                    "{name} has bidegree {:?}, expected {want:?}",
                    e.bidegree()
                )));
            }
        }
        let f = e11.field();
        if [&e21, &e12, &e22].iter().any(|e| e.field() != f) {
            return Err(Error::InvalidPhi("entries over different fields".into()));
        }
        let phi = PhiMatrix { e11, e21, e12, e22 };
        let rows = vec![
            linear_u_coeffs(&phi.e11.to_d1()).to_vec(),
            linear_u_coeffs(&phi.e21.to_d1()).to_vec(),
        ];
        if Matrix::from_rows(f, rows).rank() < 2 {
            return Err(Error::InvalidPhi(
                "first column is not two independent linear forms on D1".into(),
            ));
        }
        Ok(phi)
    }

    pub fn field(&self) -> Field {
        self.e11.field()
    }

    pub fn e11(&self) -> &BigradedForm {
        &self.e11
    }

    pub fn e21(&self) -> &BigradedForm {
        &self.e21
    }

    pub fn e12(&self) -> &BigradedForm {
        &self.e12
    }

    pub fn e22(&self) -> &BigradedForm {
        &self.e22
    }

    /// `[e11, e21, e12, e22]`.
    pub fn entries(&self) -> [&BigradedForm; 4] {
        [&self.e11, &self.e21, &self.e12, &self.e22]
    }

    /// `e11*e22 - e21*e12`, of bidegree `(1, 2)`.
    pub fn det(&self) -> BigradedForm {
        self.e11.mul(&self.e22).sub(&self.e21.mul(&self.e12))
    }

    /// The four entries evaluated at a point of `D1`.
    pub fn eval_d1(&self, u: &[Scalar; 3]) -> [Scalar; 4] {
        self.entries().map(|e| e.eval_d1(u))
    }

    pub fn pullback(&self, aut: &AutomorphismL) -> PhiMatrix {
        let images = aut.u_images(self.field());
        PhiMatrix {
            e11: self.e11.substitute_u(&images),
            e21: self.e21.substitute_u(&images),
            e12: self.e12.substitute_u(&images),
            e22: self.e22.substitute_u(&images),
        }
    }
}

impl fmt::Display for PhiMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "[[{}, {}], [{}, {}]]",
            self.e11, self.e12, self.e21, self.e22
        )
    }
}

/// Builds `Phi(A', B)` without requiring `B` to be normal. Tangent directions
/// give a matrix whose entries all vanish at `q`.
pub fn build_phi_unchecked(a: &SheafMatrix, b: &Direction) -> Result<PhiMatrix, Error> {
    let s = a.special_coefficients()?;
    let f = a.field();
    let u = |v: usize| Poly::<6>::var(f, v);
    let x0u0 = Poly::monomial(mono(&[(X0, 1), (U0, 1)]), f.one());
    let lin = |main: usize, c: Scalar| u(main).add(&u(U0).scale(&c));
    let quad = |y1: &crate::dspace::FormX, y2: &crate::dspace::FormX, c: Scalar| {
        u(U1)
            .mul(&y1.to_poly())
            .add(&u(U2).mul(&y2.to_poly()))
            .add(&x0u0.scale(&c))
    };
    let e11 = BigradedForm::new(0, 1, &lin(U1, b.xi0()))?;
    let e21 = BigradedForm::new(0, 1, &lin(U2, b.eta0()))?;
    let e12 = BigradedForm::new(1, 1, &quad(&s.y1(), &s.y2(), b.xi00()))?;
    let e22 = BigradedForm::new(1, 1, &quad(&s.w1(), &s.w2(), b.eta00()))?;
    PhiMatrix::new(e11, e21, e12, e22)
}

/// `Phi(A', B)` for a normal direction `B` at a special matrix `A'`.
pub fn build_phi(a: &SheafMatrix, b: &Direction) -> Result<PhiMatrix, Error> {
    let (tangent, _) = tangent_and_normal(a, b)?;
    if tangent {
        return Err(Error::TangentDirection);
    }
    build_phi_unchecked(a, b)
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize)]
pub enum BoundaryClass {
    TwoPoints,
    OnePoint,
    WholeLine,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize)]
pub enum ConicClass {
    Smooth,
    TwoLines,
    DoubleLine,
    /// `c1` vanishes identically; impossible for a matrix built from a normal direction.
    Zero,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SupportReport {
    /// Determinant on `D0`, bidegree `(1,2)`.
    pub c0: D0Form,
    /// Determinant on `D1`, the conic `C1`.
    pub c1: FormU,
    /// `C0` restricted to `L`.
    pub boundary: BinaryForm,
    pub boundary_class: BoundaryClass,
    /// Points of `C0 ∩ L` defined over the ground field, as `[0:u1:u2]`.
    pub boundary_roots: Vec<PointP2>,
    pub conic_class: ConicClass,
    pub contains_l: bool,
    /// The common zero of `e11, e21` on `D1`.
    pub q: PointP2,
    /// When `C1 = L + L1`, the point where `L1` meets `L`.
    pub p_b: Option<PointP2>,
}

fn binary_roots(b: &BinaryForm) -> Vec<PointP2> {
    if b.is_zero() {
        return Vec::new();
    }
    let f = b.poly().field();
    let c = b.coeffs();
    let (a2, a1, a0) = (&c[0], &c[1], &c[2]);
    let mut out = Vec::new();
    if a2.is_zero() {
        // u2 * (a1*u1 + a0*u2)
        out.push(PointP2::new([f.zero(), f.one(), f.zero()]).expect("nonzero"));
        if !a1.is_zero() {
            out.extend(PointP2::new([f.zero(), -a0, a1.clone()]));
        }
    } else if let Some(r) = b.discriminant().sqrt() {
        let two_a = &f.from_i64(2) * a2;
        for root in [&(-a1) + &r, &(-a1) - &r] {
            let t = root.checked_div(&two_a).expect("a2 nonzero");
            out.extend(PointP2::new([f.zero(), t, f.one()]));
        }
    }
    out.dedup();
    out
}

fn boundary_class(b: &BinaryForm) -> BoundaryClass {
    if b.is_zero() {
        BoundaryClass::WholeLine
    } else if b.discriminant().is_zero() {
        BoundaryClass::OnePoint
    } else {
        BoundaryClass::TwoPoints
    }
}

pub fn conic_class(c1: &FormU) -> ConicClass {
    match c1.doubled_symmetric_matrix().rank() {
        3 => ConicClass::Smooth,
        2 => ConicClass::TwoLines,
        1 => ConicClass::DoubleLine,
        _ => ConicClass::Zero,
    }
}

fn restrict_to_d1(phi: &PhiMatrix) -> [FormU; 4] {
    phi.entries().map(|e| e.to_d1())
}

/// The conic `C1`: the determinant of `Phi` on `D1`.
pub fn conic(phi: &PhiMatrix) -> FormU {
    let [e11, e21, e12, e22] = restrict_to_d1(phi);
    e11.mul(&e22).sub(&e21.mul(&e12))
}

/// The common zero `q` of the first column on `D1`.
pub fn point_q(phi: &PhiMatrix) -> PointP2 {
    let [e11, e21, _, _] = restrict_to_d1(phi);
    let l1 = crate::dspace::FormX::new(1, linear_u_coeffs(&e11).to_vec()).expect("three");
    let l2 = crate::dspace::FormX::new(1, linear_u_coeffs(&e21).to_vec()).expect("three");
    crate::moduli::common_zero_of(&l1, &l2).expect("validated independent")
}

pub fn support_report(phi: &PhiMatrix) -> SupportReport {
    let d0 = phi.entries().map(|e| e.to_d0());
    let c0 = d0[0].mul(&d0[3]).sub(&d0[1].mul(&d0[2]));
    let c1 = conic(phi);
    let boundary = c0.to_l();
    let contains_l = c1.divisible_by_u0();
    let p_b = if contains_l && !c1.is_zero() {
        let [_, m1, m2, ..] = c1.quadric_coeffs();
        PointP2::new([phi.field().zero(), m2, -m1])
    } else {
        None
    };
    SupportReport {
        boundary_class: boundary_class(&boundary),
        boundary_roots: binary_roots(&boundary),
        conic_class: conic_class(&c1),
        contains_l,
        q: point_q(phi),
        p_b,
        c0,
        c1,
        boundary,
    }
}

/// Points of `D1` where all four entries of `Phi` vanish.
pub fn singular_locus_d1(phi: &PhiMatrix) -> Vec<PointP2> {
    let q = point_q(phi);
    let vals = phi.eval_d1(q.coords());
    if vals.iter().all(Scalar::is_zero) {
        vec![q]
    } else {
        Vec::new()
    }
}

/// The automorphism of `D(p)` acting on `D1` by the substitution
/// `u0 -> alpha*u0, u1 -> u1 + beta*u0, u2 -> u2 + gamma*u0`; it is the
/// identity on `L` and on `D0`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct AutomorphismL {
    pub alpha: Scalar,
    pub beta: Scalar,
    pub gamma: Scalar,
}

impl AutomorphismL {
    pub fn new(alpha: Scalar, beta: Scalar, gamma: Scalar) -> Result<Self, Error> {
        if alpha.is_zero() {
            return Err(Error::DivisionByZero);
        }
        Ok(AutomorphismL { alpha, beta, gamma })
    }

    pub fn identity(field: Field) -> Self {
        AutomorphismL {
            alpha: field.one(),
            beta: field.zero(),
            gamma: field.zero(),
        }
    }

    pub fn is_identity(&self) -> bool {
        self.alpha.is_one() && self.beta.is_zero() && self.gamma.is_zero()
    }

    /// The matrix `[[alpha, beta, gamma], [0, 1, 0], [0, 0, 1]]`.
    pub fn matrix(&self) -> Matrix {
        let f = self.alpha.field();
        Matrix::from_rows(
            f,
            vec![
                vec![self.alpha.clone(), self.beta.clone(), self.gamma.clone()],
                vec![f.zero(), f.one(), f.zero()],
                vec![f.zero(), f.zero(), f.one()],
            ],
        )
    }

    fn u_images(&self, f: Field) -> [Poly<6>; 3] {
        let u = |v: usize| Poly::<6>::var(f, v);
        [
            u(U0).scale(&self.alpha),
            u(U1).add(&u(U0).scale(&self.beta)),
            u(U2).add(&u(U0).scale(&self.gamma)),
        ]
    }

    pub fn pullback_form(&self, c: &FormU) -> FormU {
        c.substitute(&self.u_images(c.field()))
    }

    /// The point map `u -> (alpha*u0, u1 + beta*u0, u2 + gamma*u0)`.
    pub fn map_point(&self, u: &[Scalar; 3]) -> [Scalar; 3] {
        [
            &self.alpha * &u[0],
            &u[1] + &(&self.beta * &u[0]),
            &u[2] + &(&self.gamma * &u[0]),
        ]
    }

    /// `self` followed by `other` on points.
    pub fn then(&self, other: &AutomorphismL) -> AutomorphismL {
        AutomorphismL {
            alpha: &other.alpha * &self.alpha,
            beta: &self.beta + &(&other.beta * &self.alpha),
            gamma: &self.gamma + &(&other.gamma * &self.alpha),
        }
    }

    pub fn inverse(&self) -> AutomorphismL {
        let ai = self.alpha.inv().expect("alpha nonzero");
        AutomorphismL {
            beta: -(&self.beta * &ai),
            gamma: -(&self.gamma * &ai),
            alpha: ai,
        }
    }
}

impl fmt::Display for AutomorphismL {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "(alpha={}, beta={}, gamma={})",
            self.alpha, self.beta, self.gamma
        )
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Equivalence {
    pub alpha: Scalar,
    pub automorphism: AutomorphismL,
}

/// Decides whether `B1` and `B2` give equivalent R-bundles over `A'`.
///
/// On success the automorphism is checked symbolically: after clearing `y1`
/// from `A'` (and moving both directions along), pulling `Phi(A', B1)` back
/// along it gives exactly `Phi(A', B2)`.
pub fn equivalent(
    a: &SheafMatrix,
    b1: &Direction,
    b2: &Direction,
) -> Result<Option<Equivalence>, Error> {
    let (t1, n1) = tangent_and_normal(a, b1)?;
    let (t2, n2) = tangent_and_normal(a, b2)?;
    if t1 || t2 {
        return Err(Error::TangentDirection);
    }
    let Some(alpha) = n1.ratio_to(&n2) else {
        return Ok(None);
    };
    let (reduced, h) = eliminate_y1(a)?;
    let b1 = h.act_direction(b1);
    let b2 = h.act_direction(b2);
    let automorphism = AutomorphismL {
        beta: &b2.xi0() - &(&alpha * &b1.xi0()),
        gamma: &b2.eta0() - &(&alpha * &b1.eta0()),
        alpha: alpha.clone(),
    };
    let phi1 = build_phi(&reduced, &b1)?;
    let phi2 = build_phi(&reduced, &b2)?;
    if phi1.pullback(&automorphism) != phi2 {
        return Err(Error::WitnessMismatch);
    }
    Ok(Some(Equivalence {
        alpha,
        automorphism,
    }))
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize)]
pub enum StabilizerClass {
    /// Smooth conic meeting `L` in two points: the identity and a central symmetry.
    OrderTwo,
    /// Two lines meeting `L` in two distinct points: a copy of `k*`.
    MultiplicativeGroup,
    /// Smooth conic tangent to `L`.
    Trivial,
    /// Two lines through one point of `L`: `{±1} x k`, transitive on `C1 \ L`.
    AdditiveTransitive,
    /// A double line not equal to `L`: a two-dimensional group.
    DoubleLine,
    /// `C1 = L + L1`: transitive on `L1 \ L`.
    ContainsLTransitive,
}

/// The stabilizer of a conic, described by a parametrization.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum StabilizerGroup {
    Finite(Vec<AutomorphismL>),
    /// `alpha -> (alpha, (1 - alpha) * w)`.
    Multiplicative {
        w: [Scalar; 2],
    },
    /// `(alpha, (1 - alpha) * w + t * k)` for `alpha = ±1` or, if `all_alpha`, any `alpha`.
    Affine {
        w: [Scalar; 2],
        k: [Scalar; 2],
        all_alpha: bool,
    },
    /// `(alpha, beta, gamma)` with `m1*beta + m2*gamma = (1 - alpha) * m0`.
    Hyperplane {
        m: [Scalar; 3],
    },
}

fn dot2(a: &[Scalar; 2], b: &[Scalar; 2]) -> Scalar {
    &(&a[0] * &b[0]) + &(&a[1] * &b[1])
}

fn axpy(s: &Scalar, w: &[Scalar; 2], t: &Scalar, k: &[Scalar; 2]) -> [Scalar; 2] {
    [&(s * &w[0]) + &(t * &k[0]), &(s * &w[1]) + &(t * &k[1])]
}

fn primitive_root(p: u64) -> u64 {
    let mut factors = Vec::new();
    let mut n = p - 1;
    let mut d = 2;
    while d * d <= n {
        if n.is_multiple_of(d) {
            factors.push(d);
            while n.is_multiple_of(d) {
                n /= d;
            }
        }
        d += 1;
    }
    if n > 1 {
        factors.push(n);
    }
    let f = Field::Prime(p);
    (2..p)
        .find(|&g| {
            let g = f.from_i64(g as i64);
            factors
                .iter()
                .all(|&q| !g.pow(((p - 1) / q) as u32).is_one())
        })
        .unwrap_or(1)
}

impl StabilizerGroup {
    pub fn contains(&self, g: &AutomorphismL) -> bool {
        let f = g.alpha.field();
        let one_minus = &f.one() - &g.alpha;
        let bg = [g.beta.clone(), g.gamma.clone()];
        match self {
            StabilizerGroup::Finite(list) => g.is_identity() || list.contains(g),
            StabilizerGroup::Multiplicative { w } => bg == axpy(&one_minus, w, &f.zero(), w),
            StabilizerGroup::Affine { w, k, all_alpha } => {
                if !*all_alpha && !(g.alpha.is_one() || (-&g.alpha).is_one()) {
                    return false;
                }
                // (beta, gamma) - (1 - alpha) w must be a multiple of k
                let r = axpy(&one_minus, w, &f.zero(), w);
                let d = [&bg[0] - &r[0], &bg[1] - &r[1]];
                (&(&d[0] * &k[1]) - &(&d[1] * &k[0])).is_zero()
            }
            StabilizerGroup::Hyperplane { m } => {
                let lhs = &(&m[1] * &g.beta) + &(&m[2] * &g.gamma);
                lhs == &one_minus * &m[0]
            }
        }
    }

    /// Number of elements over `F_p`; `None` over `Q` for infinite groups.
    pub fn order(&self, field: Field) -> Option<u64> {
        if let StabilizerGroup::Finite(list) = self {
            return Some(1 + list.len() as u64);
        }
        let p = field.order()?;
        Some(match self {
            StabilizerGroup::Finite(_) => unreachable!(),
            StabilizerGroup::Multiplicative { .. } => p - 1,
            StabilizerGroup::Affine {
                all_alpha: false, ..
            } => 2 * p,
            StabilizerGroup::Affine {
                all_alpha: true, ..
            } => p * (p - 1),
            StabilizerGroup::Hyperplane { m } => {
                if m[1].is_zero() && m[2].is_zero() {
                    p * p * (p - 1)
                } else {
                    p * (p - 1)
                }
            }
        })
    }

    /// A generating set over `F_p`, or a few representative elements over `Q`.
    pub fn generators(&self, field: Field) -> Vec<AutomorphismL> {
        let alphas: Vec<Scalar> = match field.order() {
            Some(p) => vec![field.from_i64(primitive_root(p) as i64)],
            None => vec![field.from_i64(-1), field.from_i64(2)],
        };
        let z = field.zero();
        let one = field.one();
        let make = |alpha: &Scalar, bg: [Scalar; 2]| {
            let [beta, gamma] = bg;
            AutomorphismL {
                alpha: alpha.clone(),
                beta,
                gamma,
            }
        };
        let mut out = match self {
            StabilizerGroup::Finite(list) => list.clone(),
            StabilizerGroup::Multiplicative { w } => alphas
                .iter()
                .map(|a| make(a, axpy(&(&one - a), w, &z, w)))
                .collect(),
            StabilizerGroup::Affine { w, k, all_alpha } => {
                let mut v = vec![make(&one, k.clone())];
                if *all_alpha {
                    v.extend(alphas.iter().map(|a| make(a, axpy(&(&one - a), w, &z, w))));
                } else {
                    let m1 = -&one;
                    v.push(make(&m1, axpy(&field.from_i64(2), w, &z, w)));
                }
                v
            }
            StabilizerGroup::Hyperplane { m } => {
                if m[1].is_zero() && m[2].is_zero() {
                    let mut v = vec![
                        make(&one, [one.clone(), z.clone()]),
                        make(&one, [z.clone(), one.clone()]),
                    ];
                    v.extend(alphas.iter().map(|a| make(a, [z.clone(), z.clone()])));
                    v
                } else {
                    let mm = [m[1].clone(), m[2].clone()];
                    // particular solution v with m.v = m0, kernel direction k with m.k = 0
                    let vsol = if !mm[0].is_zero() {
                        [m[0].checked_div(&mm[0]).expect("nonzero"), z.clone()]
                    } else {
                        [z.clone(), m[0].checked_div(&mm[1]).expect("nonzero")]
                    };
                    let k = [mm[1].clone(), -&mm[0]];
                    let mut v = vec![make(&one, k)];
                    v.extend(
                        alphas
                            .iter()
                            .map(|a| make(a, axpy(&(&one - a), &vsol, &z, &vsol))),
                    );
                    v
                }
            }
        };
        out.retain(|g| !g.is_identity());
        out
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct OrbitCounts {
    /// Nonsingular `F_p`-points of `C1` off `L`.
    pub points: u64,
    pub orbits: u64,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct OrbitReport {
    pub stabilizer_class: StabilizerClass,
    pub group: StabilizerGroup,
    pub stabilizer_generators: Vec<AutomorphismL>,
    /// Group order over `F_p`, or over `Q` when finite.
    pub group_order: Option<u64>,
    pub orbit_description: String,
    pub orbit_counts: Option<OrbitCounts>,
    pub p_b: Option<PointP2>,
}

/// Largest prime for which orbit counts are enumerated.
pub const ORBIT_COUNT_LIMIT: u64 = 1000;

/// Solves `phi^*(c1) = lambda * c1` over all automorphisms fixing `L`.
///
/// Write `c1 = Q(u1,u2) + u0*(m1 u1 + m2 u2) + m0 u0^2`. When `Q != 0` the
/// substitution fixes `Q`, forcing `lambda = 1`, and the `u0`-linear and
/// `u0^2` parts give `M (beta,gamma) = (1-alpha) m` and
/// `Q(beta,gamma) + alpha m.(beta,gamma) + (alpha^2 - 1) m0 = 0`, with `M`
/// the doubled matrix of `Q`. When `Q = 0`, `lambda = alpha`.
pub fn stabilizer_orbits(c1: &FormU) -> Result<OrbitReport, Error> {
    if c1.is_zero() {
        return Err(Error::DegenerateConic);
    }
    let field = c1.field();
    let [m0, m1, m2, q11, q12, q22] = c1.quadric_coeffs();
    let two = field.from_i64(2);
    let m = [m1.clone(), m2.clone()];
    let big_m = Matrix::from_rows(
        field,
        vec![
            vec![&two * &q11, q12.clone()],
            vec![q12.clone(), &two * &q22],
        ],
    );
    let mut p_b = None;
    let (class, group) = if q11.is_zero() && q12.is_zero() && q22.is_zero() {
        if !(m1.is_zero() && m2.is_zero()) {
            p_b = PointP2::new([field.zero(), m2.clone(), -&m1]);
        }
        (
            StabilizerClass::ContainsLTransitive,
            StabilizerGroup::Hyperplane { m: [m0, m1, m2] },
        )
    } else if !big_m.det().is_zero() {
        let w_vec = big_m.solve(&m).expect("invertible");
        let w = [w_vec[0].clone(), w_vec[1].clone()];
        let s = dot2(&m, &w);
        if s == &two * &m0 {
            (
                StabilizerClass::MultiplicativeGroup,
                StabilizerGroup::Multiplicative { w },
            )
        } else {
            let g = AutomorphismL {
                alpha: -field.one(),
                beta: &two * &w[0],
                gamma: &two * &w[1],
            };
            (StabilizerClass::OrderTwo, StabilizerGroup::Finite(vec![g]))
        }
    } else {
        match big_m.solve(&m) {
            None => (
                StabilizerClass::Trivial,
                StabilizerGroup::Finite(Vec::new()),
            ),
            Some(w0) => {
                let w = [w0[0].clone(), w0[1].clone()];
                let kv = &big_m.kernel_basis()[0];
                let k = [kv[0].clone(), kv[1].clone()];
                let s = dot2(&m, &w);
                if s == &two * &m0 {
                    (
                        StabilizerClass::DoubleLine,
                        StabilizerGroup::Affine {
                            w,
                            k,
                            all_alpha: true,
                        },
                    )
                } else {
                    (
                        StabilizerClass::AdditiveTransitive,
                        StabilizerGroup::Affine {
                            w,
                            k,
                            all_alpha: false,
                        },
                    )
                }
            }
        }
    };
    let generators = group.generators(field);
    let orbit_counts = match field.order() {
        Some(p) if p <= ORBIT_COUNT_LIMIT => Some(count_orbits(c1, &generators)),
        _ => None,
    };
    let orbit_description = describe(class, p_b.as_ref());
    Ok(OrbitReport {
        stabilizer_class: class,
        group_order: group.order(field),
        stabilizer_generators: generators,
        group,
        orbit_description,
        orbit_counts,
        p_b,
    })
}

fn describe(class: StabilizerClass, p_b: Option<&PointP2>) -> String {
    match class {
        StabilizerClass::OrderTwo => {
            "stabilizer {id, central symmetry}; each orbit on C1 \\ L has two points".into()
        }
        StabilizerClass::MultiplicativeGroup => {
            "stabilizer isomorphic to k*; two orbits on the smooth part of C1 \\ L, one per line".into()
        }
        StabilizerClass::Trivial => {
            "trivial stabilizer; distinct points of C1 \\ L give inequivalent R-bundles".into()
        }
        StabilizerClass::AdditiveTransitive => {
            "one-dimensional stabilizer acting transitively on C1 \\ L; a single class".into()
        }
        StabilizerClass::DoubleLine => {
            "C1 is a double line; two-dimensional stabilizer, no smooth points".into()
        }
        StabilizerClass::ContainsLTransitive => match p_b {
            Some(p) => format!(
                "C1 = L + L1 with L1 meeting L at p_B = {p}; stabilizer transitive on L1 \\ L, a single class for this C1"
            ),
            None => "C1 = 2L; every automorphism fixing L stabilizes it".into(),
        },
    }
}

fn count_orbits(c1: &FormU, generators: &[AutomorphismL]) -> OrbitCounts {
    let f = c1.field();
    let s = c1.doubled_symmetric_matrix();
    let elements: Vec<Scalar> = f.elements().expect("prime field").collect();
    let mut points: Vec<[Scalar; 3]> = Vec::new();
    for u1 in &elements {
        for u2 in &elements {
            let u = [f.one(), u1.clone(), u2.clone()];
            if !c1.eval(&u).is_zero() {
                continue;
            }
            if s.mul_vec(&u).iter().all(Scalar::is_zero) {
                continue;
            }
            points.push(u);
        }
    }
    let index: HashMap<[Scalar; 3], usize> = points
        .iter()
        .cloned()
        .enumerate()
        .map(|(i, u)| (u, i))
        .collect();
    let mut parent: Vec<usize> = (0..points.len()).collect();
    fn find(parent: &mut [usize], mut i: usize) -> usize {
        while parent[i] != i {
            parent[i] = parent[parent[i]];
            i = parent[i];
        }
        i
    }
    for (i, u) in points.iter().enumerate() {
        for g in generators {
            let v = g.map_point(u);
            let inv = v[0].inv().expect("u0 stays nonzero");
            let key = v.map(|c| c * &inv);
            let j = *index
                .get(&key)
                .expect("stabilizer preserves the smooth locus");
            let (ri, rj) = (find(&mut parent, i), find(&mut parent, j));
            if ri != rj {
                parent[ri] = rj;
            }
        }
    }
    let orbits = (0..points.len())
        .filter(|&i| find(&mut parent, i) == i)
        .count();
    OrbitCounts {
        points: points.len() as u64,
        orbits: orbits as u64,
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn q() -> Field {
        Field::Rational
    }

    fn nodal(f: Field) -> SheafMatrix {
        SheafMatrix::from_i64(
            f,
            [0, 1, 0],
            [0, 0, 1],
            [0, 0, 1, 0, 0, 1],
            [0, 1, 0, 0, 0, 0],
        )
    }

    fn cusp(f: Field) -> SheafMatrix {
        SheafMatrix::from_i64(
            f,
            [0, 1, 0],
            [0, 0, 1],
            [0, 0, 0, 0, 0, 1],
            [0, 1, 0, 0, 0, 0],
        )
    }

    fn three_lines(f: Field) -> SheafMatrix {
        SheafMatrix::from_i64(f, [0, 1, 0], [0, 0, 1], [0; 6], [0, 0, 0, 0, 1, 1])
    }

    #[test]
    fn nodal_phi_on_d1() {
        let f = q();
        let phi = build_phi(&nodal(f), &Direction::central(f, 0, 0, 1, 0)).unwrap();
        let [e11, e21, e12, e22] = restrict_to_d1(&phi);
        assert_eq!(e11.render(), "u1");
        assert_eq!(e21.render(), "u2");
        assert_eq!(e12.render(), "u0 + u2");
        assert_eq!(e22.render(), "u1");
    }

    #[test]
    fn cusp_phi_entry() {
        let f = q();
        let phi = build_phi(&cusp(f), &Direction::central(f, 0, 0, 1, 0)).unwrap();
        assert_eq!(phi.e12().render(), "x0*u0 + x2*u2");
    }

    #[test]
    fn tangent_direction_rejected() {
        let f = q();
        let t = Direction::central(f, 0, 1, 1, 0);
        assert_eq!(build_phi(&nodal(f), &t), Err(Error::TangentDirection));
        let phi = build_phi_unchecked(&nodal(f), &t).unwrap();
        assert_eq!(singular_locus_d1(&phi), vec![point_q(&phi)]);
    }

    #[test]
    fn scaling_direction_scales_u0_terms() {
        let f = q();
        let b = Direction::from_i64(
            f,
            [1, 2, 3],
            [-1, 0, 4],
            [2, 1, 0, 0, 5, 1],
            [1, 0, 0, 3, 0, 0],
        );
        let lam = f.from_i64(3);
        let p1 = build_phi(&nodal(f), &b).unwrap();
        let p3 = build_phi(&nodal(f), &b.scale(&lam)).unwrap();
        let stretch = AutomorphismL::new(lam.clone(), f.zero(), f.zero()).unwrap();
        assert_eq!(p1.pullback(&stretch), p3);
    }

    #[test]
    fn support_examples() {
        let f = q();
        let b = Direction::central(f, 0, 0, 1, 0);
        let r = support_report(&build_phi(&nodal(f), &b).unwrap());
        assert_eq!(r.boundary.render(), "u1^2 - u2^2");
        assert_eq!(r.boundary_class, BoundaryClass::TwoPoints);
        assert_eq!(r.boundary_roots.len(), 2);
        assert_eq!(r.conic_class, ConicClass::Smooth);
        assert_eq!(r.c1, FormU::quadric_i64(f, [0, 0, -1, 1, 0, -1]));
        assert_eq!(r.q, PointP2::from_i64(f, [1, 0, 0]).unwrap());
        assert!(!r.contains_l);

        let r = support_report(&build_phi(&cusp(f), &b).unwrap());
        assert_eq!(r.boundary.render(), "u1^2");
        assert_eq!(r.boundary_class, BoundaryClass::OnePoint);

        let b2 = Direction::central(f, 0, 0, 0, 1);
        let r = support_report(&build_phi(&three_lines(f), &b2).unwrap());
        assert_eq!(r.boundary_class, BoundaryClass::WholeLine);
        assert!(r.contains_l);
        assert!(r.p_b.is_some());
    }

    #[test]
    fn q_lies_on_conic_off_l() {
        let f = q();
        let b = Direction::from_i64(
            f,
            [2, 0, 1],
            [-3, 1, 1],
            [1, 0, 0, 2, 0, 0],
            [4, 1, 0, 0, 0, 0],
        );
        let phi = build_phi(&nodal(f), &b).unwrap();
        let r = support_report(&phi);
        assert_eq!(r.q, PointP2::from_i64(f, [1, -2, 3]).unwrap());
        assert!(r.c1.eval(r.q.coords()).is_zero());
        let (_, n) = tangent_and_normal(&nodal(f), &b).unwrap();
        let vals = phi.eval_d1(r.q.coords());
        assert_eq!(vals, [f.zero(), f.zero(), n.n1, n.n2]);
    }

    #[test]
    fn equivalence_examples() {
        let f = q();
        let a = nodal(f);
        let b1 = Direction::central(f, 0, 0, 1, 0);
        let e = equivalent(&a, &b1, &b1.scale(&f.from_i64(2)))
            .unwrap()
            .unwrap();
        assert_eq!(e.alpha, f.from_i64(2));
        assert!(e.automorphism.beta.is_zero() && e.automorphism.gamma.is_zero());

        let t = Direction::central(f, 0, 1, 1, 0);
        let e = equivalent(&a, &b1, &b1.add(&t)).unwrap().unwrap();
        assert_eq!(
            e.automorphism,
            AutomorphismL::new(f.one(), f.zero(), f.one()).unwrap()
        );

        let b3 = Direction::central(f, 0, 0, 0, 1);
        assert_eq!(equivalent(&a, &b1, &b3).unwrap(), None);
        assert_eq!(equivalent(&a, &b1, &t), Err(Error::TangentDirection));
    }

    #[test]
    fn equivalence_with_y1_present() {
        let f = q();
        // q1 has a01, a11, a12 all nonzero
        let a = SheafMatrix::from_i64(
            f,
            [0, 1, 0],
            [0, 0, 1],
            [0, 2, 1, 1, 3, 1],
            [0, 1, -1, 0, 2, 0],
        );
        let b1 = Direction::from_i64(
            f,
            [1, 0, 2],
            [1, 1, 0],
            [5, 0, 1, 0, 0, 2],
            [1, 2, 0, 0, 1, 0],
        );
        let t = Direction::from_i64(
            f,
            [1, 0, 0],
            [0, 0, 0],
            [2, 0, 0, 0, 0, 0],
            [1, 0, 0, 0, 0, 0],
        );
        assert!(tangent_and_normal(&a, &t).unwrap().0);
        let b2 = b1.scale(&f.from_i64(-3)).add(&t);
        let e = equivalent(&a, &b1, &b2).unwrap().unwrap();
        assert_eq!(e.alpha, f.from_i64(-3));
    }

    #[test]
    fn stabilizer_classes() {
        let f = q();
        let smooth = FormU::quadric_i64(f, [0, 0, -1, 1, 0, -1]);
        let r = stabilizer_orbits(&smooth).unwrap();
        assert_eq!(r.stabilizer_class, StabilizerClass::OrderTwo);
        assert_eq!(r.group_order, Some(2));
        let g = &r.stabilizer_generators[0];
        assert_eq!(
            g,
            &AutomorphismL::new(f.from_i64(-1), f.zero(), f.one()).unwrap()
        );
        assert_eq!(g.pullback_form(&smooth), smooth);

        let lines = FormU::quadric_i64(f, [0, 0, 0, 1, 0, -1]);
        assert_eq!(
            stabilizer_orbits(&lines).unwrap().stabilizer_class,
            StabilizerClass::MultiplicativeGroup
        );

        let tangent = FormU::quadric_i64(f, [0, 0, -1, 1, 0, 0]);
        assert_eq!(
            stabilizer_orbits(&tangent).unwrap().stabilizer_class,
            StabilizerClass::Trivial
        );

        // (u1 - u0)(u1 + u0): two lines through [0:0:1]
        let pair = FormU::quadric_i64(f, [-1, 0, 0, 1, 0, 0]);
        assert_eq!(
            stabilizer_orbits(&pair).unwrap().stabilizer_class,
            StabilizerClass::AdditiveTransitive
        );

        let double = FormU::quadric_i64(f, [1, 2, 0, 1, 0, 0]);
        assert_eq!(
            stabilizer_orbits(&double).unwrap().stabilizer_class,
            StabilizerClass::DoubleLine
        );

        let with_l = FormU::quadric_i64(f, [1, 1, 0, 0, 0, 0]);
        let r = stabilizer_orbits(&with_l).unwrap();
        assert_eq!(r.stabilizer_class, StabilizerClass::ContainsLTransitive);
        assert_eq!(r.p_b, PointP2::from_i64(f, [0, 0, 1]));

        assert_eq!(
            stabilizer_orbits(&FormU::quadric_i64(f, [0; 6])).unwrap_err(),
            Error::DegenerateConic
        );
    }

    #[test]
    fn generators_stabilize_over_fp() {
        let f = Field::prime(7).unwrap();
        let conics = [
            [0, 0, -1, 1, 0, -1],
            [0, 0, 0, 1, 0, -1],
            [0, 0, -1, 1, 0, 0],
            [-1, 0, 0, 1, 0, 0],
            [1, 2, 0, 1, 0, 0],
            [1, 1, 0, 0, 0, 0],
            [2, 1, 3, 0, 0, 0],
        ];
        for c in conics {
            let c1 = FormU::quadric_i64(f, c);
            let r = stabilizer_orbits(&c1).unwrap();
            for g in &r.stabilizer_generators {
                assert!(r.group.contains(g));
                let pulled = g.pullback_form(&c1);
                let ratio = find_ratio(&c1, &pulled).expect("generator stabilizes");
                assert!(!ratio.is_zero());
            }
        }
    }

    fn find_ratio(c: &FormU, d: &FormU) -> Option<Scalar> {
        let a = c.quadric_coeffs();
        let b = d.quadric_coeffs();
        let i = a.iter().position(|x| !x.is_zero())?;
        let r = b[i].checked_div(&a[i]).ok()?;
        a.iter().zip(&b).all(|(x, y)| &(x * &r) == y).then_some(r)
    }

    #[test]
    fn orbit_counts_over_f7() {
        let f = Field::prime(7).unwrap();
        // smooth, transverse: C1 \ L has p - 1 points, orbits of size two
        let r = stabilizer_orbits(&FormU::quadric_i64(f, [0, 0, -1, 1, 0, -1])).unwrap();
        assert_eq!(
            r.orbit_counts,
            Some(OrbitCounts {
                points: 6,
                orbits: 3
            })
        );
        // two lines: two orbits
        let r = stabilizer_orbits(&FormU::quadric_i64(f, [0, 0, 0, 1, 0, -1])).unwrap();
        assert_eq!(r.orbit_counts.unwrap().orbits, 2);
        // two lines through one point of L: one orbit
        let r = stabilizer_orbits(&FormU::quadric_i64(f, [-1, 0, 0, 1, 0, 0])).unwrap();
        assert_eq!(
            r.orbit_counts,
            Some(OrbitCounts {
                points: 14,
                orbits: 1
            })
        );
    }

    #[test]
    fn automorphism_group_laws() {
        let f = q();
        let g = AutomorphismL::new(f.from_i64(2), f.from_i64(3), f.from_i64(-1)).unwrap();
        let h = AutomorphismL::new(f.from_i64(-1), f.from_i64(1), f.from_i64(5)).unwrap();
        let u = [f.one(), f.from_i64(4), f.from_i64(7)];
        assert_eq!(g.then(&h).map_point(&u), h.map_point(&g.map_point(&u)));
        assert!(g.then(&g.inverse()).is_identity());
        let c = FormU::quadric_i64(f, [1, 2, 3, 4, 5, 6]);
        assert_eq!(g.pullback_form(&c).eval(&u), c.eval(&g.map_point(&u)));
    }
}
