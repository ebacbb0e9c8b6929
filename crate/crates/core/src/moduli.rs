//! Presenting matrices of `(3m+1)`-sheaves, the singular stratum `X8`, and
//! tangent/normal data at points of `X8`.
//!
//! A [`SheafMatrix`] `A = [[z1, q1], [z2, q2]]` has linear forms in its first
//! column and quadrics in its second. Its 18 coefficients, ordered as
//! `z1[3], z2[3], q1[6], q2[6]` in the monomial orders of
//! [`crate::dspace::ternary_monomials`], are the coordinates on the parameter
//! space `X`. A [`Direction`] is a tangent vector with the same layout.

use std::fmt;

use crate::dspace::{ternary_monomials, FormX};
use crate::foundation::{Field, Matrix, Poly, Scalar};
use crate::Error;

/// Positions of the special coefficients inside a quadric's coefficient array
/// `[x0^2, x0x1, x0x2, x1^2, x1x2, x2^2]`.
const Q_X0X1: usize = 1;
const Q_X0X2: usize = 2;
const Q_X1X1: usize = 3;
const Q_X1X2: usize = 4;
const Q_X2X2: usize = 5;

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct SheafMatrix {
    pub z1: FormX,
    pub z2: FormX,
    pub q1: FormX,
    pub q2: FormX,
}

/// A tangent vector at a point of `X`: `[[l1, c1], [l2, c2]]`.
///
/// The `x0` coefficients of `l1, l2` are the quantities written `xi0, eta0`,
/// the `x0^2` coefficients of `c1, c2` are `xi00, eta00`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Direction {
    pub l1: FormX,
    pub l2: FormX,
    pub c1: FormX,
    pub c2: FormX,
}

fn check_shape(lin: [&FormX; 2], quad: [&FormX; 2]) -> Result<(), Error> {
    if lin.iter().any(|f| f.degree() != 1) || quad.iter().any(|f| f.degree() != 2) {
        return Err(Error::NotHomogeneous(
            "first column must be linear, second column quadratic".into(),
        ));
    }
    let field = lin[0].field();
    if lin.iter().chain(quad.iter()).any(|f| f.field() != field) {
        return Err(Error::Parse("entries over different fields".into()));
    }
    Ok(())
}

fn split_coordinates(field: Field, coords: &[Scalar]) -> Result<[FormX; 4], Error> {
    if coords.len() != 18 {
        return Err(Error::Parse(format!(
            "expected 18 coordinates, got {}",
            coords.len()
        )));
    }
    let _ = field;
    Ok([
        FormX::new(1, coords[0..3].to_vec())?,
        FormX::new(1, coords[3..6].to_vec())?,
        FormX::new(2, coords[6..12].to_vec())?,
        FormX::new(2, coords[12..18].to_vec())?,
    ])
}

fn join_coordinates(parts: [&FormX; 4]) -> Vec<Scalar> {
    parts
        .iter()
        .flat_map(|f| f.coeffs().iter().cloned())
        .collect()
}

impl SheafMatrix {
    pub fn new(z1: FormX, z2: FormX, q1: FormX, q2: FormX) -> Result<Self, Error> {
        check_shape([&z1, &z2], [&q1, &q2])?;
        Ok(SheafMatrix { z1, z2, q1, q2 })
    }

    pub fn from_i64(field: Field, z1: [i64; 3], z2: [i64; 3], q1: [i64; 6], q2: [i64; 6]) -> Self {
        SheafMatrix {
            z1: FormX::from_i64(field, 1, &z1),
            z2: FormX::from_i64(field, 1, &z2),
            q1: FormX::from_i64(field, 2, &q1),
            q2: FormX::from_i64(field, 2, &q2),
        }
    }

    /// Special form `[[x1, q1], [x2, q2]]` from the ten coefficients
    /// `a01, a02, a11, a12, a22` and `b01, b02, b11, b12, b22`.
    pub fn special(field: Field, a: [Scalar; 5], b: [Scalar; 5]) -> Self {
        let quad = |c: [Scalar; 5]| {
            let [c01, c02, c11, c12, c22] = c;
            FormX::new(2, vec![field.zero(), c01, c02, c11, c12, c22]).expect("six coefficients")
        };
        SheafMatrix {
            z1: FormX::var(field, 1),
            z2: FormX::var(field, 2),
            q1: quad(a),
            q2: quad(b),
        }
    }

    pub fn from_coordinates(field: Field, coords: &[Scalar]) -> Result<Self, Error> {
        let [z1, z2, q1, q2] = split_coordinates(field, coords)?;
        Ok(SheafMatrix { z1, z2, q1, q2 })
    }

    pub fn coordinates(&self) -> Vec<Scalar> {
        join_coordinates([&self.z1, &self.z2, &self.q1, &self.q2])
    }

    pub fn field(&self) -> Field {
        self.z1.field()
    }

    /// `z1*q2 - z2*q1`.
    pub fn det(&self) -> FormX {
        self.z1.mul(&self.q2).sub(&self.z2.mul(&self.q1))
    }

    /// `A + t*B`.
    pub fn add_direction(&self, b: &Direction, t: &Scalar) -> SheafMatrix {
        SheafMatrix {
            z1: self.z1.add(&b.l1.scale(t)),
            z2: self.z2.add(&b.l2.scale(t)),
            q1: self.q1.add(&b.c1.scale(t)),
            q2: self.q2.add(&b.c2.scale(t)),
        }
    }

    pub fn change_coordinates(&self, m: &Matrix) -> SheafMatrix {
        SheafMatrix {
            z1: self.z1.change_coordinates(m),
            z2: self.z2.change_coordinates(m),
            q1: self.q1.change_coordinates(m),
            q2: self.q2.change_coordinates(m),
        }
    }

    /// `z1 = x1`, `z2 = x2` and neither quadric has an `x0^2` term, i.e.
    /// `p(A) = [1:0:0]` and `A` lies in `X8`.
    pub fn is_special(&self) -> bool {
        let f = self.field();
        self.z1 == FormX::var(f, 1)
            && self.z2 == FormX::var(f, 2)
            && self.q1.coeffs()[0].is_zero()
            && self.q2.coeffs()[0].is_zero()
    }

    /// Special form with additionally `a01 = a11 = a12 = 0` (no `y1` part).
    pub fn is_reduced_special(&self) -> bool {
        let a = self.q1.coeffs();
        self.is_special() && a[Q_X0X1].is_zero() && a[Q_X1X1].is_zero() && a[Q_X1X2].is_zero()
    }

    pub fn special_coefficients(&self) -> Result<SpecialCoefficients, Error> {
        if !self.is_special() {
            return Err(Error::NotSpecialForm);
        }
        Ok(SpecialCoefficients::from_quadrics(&self.q1, &self.q2))
    }
}

impl fmt::Display for SheafMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "[[{}, {}], [{}, {}]]",
            self.z1, self.q1, self.z2, self.q2
        )
    }
}

impl Direction {
    pub fn new(l1: FormX, l2: FormX, c1: FormX, c2: FormX) -> Result<Self, Error> {
        check_shape([&l1, &l2], [&c1, &c2])?;
        Ok(Direction { l1, l2, c1, c2 })
    }

    pub fn zero(field: Field) -> Self {
        Direction {
            l1: FormX::zero(field, 1),
            l2: FormX::zero(field, 1),
            c1: FormX::zero(field, 2),
            c2: FormX::zero(field, 2),
        }
    }

    pub fn from_i64(field: Field, l1: [i64; 3], l2: [i64; 3], c1: [i64; 6], c2: [i64; 6]) -> Self {
        Direction {
            l1: FormX::from_i64(field, 1, &l1),
            l2: FormX::from_i64(field, 1, &l2),
            c1: FormX::from_i64(field, 2, &c1),
            c2: FormX::from_i64(field, 2, &c2),
        }
    }

    /// The direction whose only nonzero coordinates are `xi0, eta0, xi00, eta00`.
    pub fn central(field: Field, xi0: i64, eta0: i64, xi00: i64, eta00: i64) -> Self {
        Self::from_i64(
            field,
            [xi0, 0, 0],
            [eta0, 0, 0],
            [xi00, 0, 0, 0, 0, 0],
            [eta00, 0, 0, 0, 0, 0],
        )
    }

    pub fn from_coordinates(field: Field, coords: &[Scalar]) -> Result<Self, Error> {
        let [l1, l2, c1, c2] = split_coordinates(field, coords)?;
        Ok(Direction { l1, l2, c1, c2 })
    }

    pub fn coordinates(&self) -> Vec<Scalar> {
        join_coordinates([&self.l1, &self.l2, &self.c1, &self.c2])
    }

    pub fn field(&self) -> Field {
        self.l1.field()
    }

    pub fn xi0(&self) -> Scalar {
        self.l1.coeffs()[0].clone()
    }

    pub fn eta0(&self) -> Scalar {
        self.l2.coeffs()[0].clone()
    }

    pub fn xi00(&self) -> Scalar {
        self.c1.coeffs()[0].clone()
    }

    pub fn eta00(&self) -> Scalar {
        self.c2.coeffs()[0].clone()
    }

    pub fn add(&self, rhs: &Direction) -> Direction {
        Direction {
            l1: self.l1.add(&rhs.l1),
            l2: self.l2.add(&rhs.l2),
            c1: self.c1.add(&rhs.c1),
            c2: self.c2.add(&rhs.c2),
        }
    }

    pub fn scale(&self, t: &Scalar) -> Direction {
        Direction {
            l1: self.l1.scale(t),
            l2: self.l2.scale(t),
            c1: self.c1.scale(t),
            c2: self.c2.scale(t),
        }
    }

    pub fn change_coordinates(&self, m: &Matrix) -> Direction {
        Direction {
            l1: self.l1.change_coordinates(m),
            l2: self.l2.change_coordinates(m),
            c1: self.c1.change_coordinates(m),
            c2: self.c2.change_coordinates(m),
        }
    }
}

impl fmt::Display for Direction {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "[[{}, {}], [{}, {}]]",
            self.l1, self.c1, self.l2, self.c2
        )
    }
}

/// The decomposition `q1 = x1*y1 + x2*y2`, `q2 = x1*w1 + x2*w2` of a special
/// matrix. The `x1*x2` monomial goes to the `x1` part, so `y2` and `w2` have no
/// `x1` term.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SpecialCoefficients {
    pub a01: Scalar,
    pub a02: Scalar,
    pub a11: Scalar,
    pub a12: Scalar,
    pub a22: Scalar,
    pub b01: Scalar,
    pub b02: Scalar,
    pub b11: Scalar,
    pub b12: Scalar,
    pub b22: Scalar,
}

impl SpecialCoefficients {
    fn from_quadrics(q1: &FormX, q2: &FormX) -> Self {
        let a = q1.coeffs();
        let b = q2.coeffs();
        SpecialCoefficients {
            a01: a[Q_X0X1].clone(),
            a02: a[Q_X0X2].clone(),
            a11: a[Q_X1X1].clone(),
            a12: a[Q_X1X2].clone(),
            a22: a[Q_X2X2].clone(),
            b01: b[Q_X0X1].clone(),
            b02: b[Q_X0X2].clone(),
            b11: b[Q_X1X1].clone(),
            b12: b[Q_X1X2].clone(),
            b22: b[Q_X2X2].clone(),
        }
    }

    fn linear(c0: &Scalar, c1: &Scalar, c2: &Scalar) -> FormX {
        FormX::new(1, vec![c0.clone(), c1.clone(), c2.clone()]).expect("three coefficients")
    }

    pub fn y1(&self) -> FormX {
        Self::linear(&self.a01, &self.a11, &self.a12)
    }

    pub fn y2(&self) -> FormX {
        Self::linear(&self.a02, &self.a01.field().zero(), &self.a22)
    }

    pub fn w1(&self) -> FormX {
        Self::linear(&self.b01, &self.b11, &self.b12)
    }

    pub fn w2(&self) -> FormX {
        Self::linear(&self.b02, &self.b01.field().zero(), &self.b22)
    }
}

/// An element `(g, h)` of `GL2 x H`, `h = [[lambda, z], [0, mu]]`, acting by `A -> g A h^-1`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GroupElement {
    g: Matrix,
    lambda: Scalar,
    mu: Scalar,
    z: FormX,
}

impl GroupElement {
    pub fn new(g: Matrix, lambda: Scalar, mu: Scalar, z: FormX) -> Result<Self, Error> {
        if g.rows() != 2 || g.cols() != 2 || g.det().is_zero() {
            return Err(Error::Parse("g must be an invertible 2x2 matrix".into()));
        }
        if lambda.is_zero() || mu.is_zero() {
            return Err(Error::Parse("lambda and mu must be nonzero".into()));
        }
        if z.degree() != 1 {
            return Err(Error::NotHomogeneous("z must be a linear form".into()));
        }
        Ok(GroupElement { g, lambda, mu, z })
    }

    pub fn identity(field: Field) -> Self {
        GroupElement {
            g: Matrix::identity(field, 2),
            lambda: field.one(),
            mu: field.one(),
            z: FormX::zero(field, 1),
        }
    }

    pub fn g(&self) -> &Matrix {
        &self.g
    }

    pub fn lambda(&self) -> &Scalar {
        &self.lambda
    }

    pub fn mu(&self) -> &Scalar {
        &self.mu
    }

    pub fn z(&self) -> &FormX {
        &self.z
    }

    pub fn is_identity(&self) -> bool {
        *self == Self::identity(self.g.field())
    }

    pub fn inverse(&self) -> GroupElement {
        let lam_inv = self.lambda.inv().expect("lambda nonzero");
        let mu_inv = self.mu.inv().expect("mu nonzero");
        GroupElement {
            g: self.g.inverse().expect("g invertible"),
            z: self.z.scale(&-(&lam_inv * &mu_inv)),
            lambda: lam_inv,
            mu: mu_inv,
        }
    }

    fn apply(&self, col1: [&FormX; 2], col2: [&FormX; 2]) -> ([FormX; 2], [FormX; 2]) {
        let lam_inv = self.lambda.inv().expect("lambda nonzero");
        let mu_inv = self.mu.inv().expect("mu nonzero");
        let shear = self.z.scale(&-(&lam_inv * &mu_inv));
        // A h^-1
        let c1: [FormX; 2] = [col1[0].scale(&lam_inv), col1[1].scale(&lam_inv)];
        let c2: [FormX; 2] = [
            col1[0].mul(&shear).add(&col2[0].scale(&mu_inv)),
            col1[1].mul(&shear).add(&col2[1].scale(&mu_inv)),
        ];
        // g (A h^-1)
        let row = |i: usize, c: &[FormX; 2]| {
            c[0].scale(self.g.get(i, 0))
                .add(&c[1].scale(self.g.get(i, 1)))
        };
        ([row(0, &c1), row(1, &c1)], [row(0, &c2), row(1, &c2)])
    }

    pub fn act(&self, a: &SheafMatrix) -> SheafMatrix {
        let ([z1, z2], [q1, q2]) = self.apply([&a.z1, &a.z2], [&a.q1, &a.q2]);
        SheafMatrix { z1, z2, q1, q2 }
    }

    /// The induced action on tangent vectors; the action is linear in `A`.
    pub fn act_direction(&self, b: &Direction) -> Direction {
        let ([l1, l2], [c1, c2]) = self.apply([&b.l1, &b.l2], [&b.c1, &b.c2]);
        Direction { l1, l2, c1, c2 }
    }
}

/// A point of `P2`, normalized so that its first nonzero coordinate is 1.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct PointP2 {
    coords: [Scalar; 3],
}

impl PointP2 {
    pub fn new(coords: [Scalar; 3]) -> Option<Self> {
        let lead = coords.iter().find(|c| !c.is_zero())?.inv().ok()?;
        Some(PointP2 {
            coords: coords.map(|c| c * &lead),
        })
    }

    pub fn from_i64(field: Field, c: [i64; 3]) -> Option<Self> {
        Self::new(c.map(|x| field.from_i64(x)))
    }

    pub fn coords(&self) -> &[Scalar; 3] {
        &self.coords
    }
}

impl fmt::Display for PointP2 {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "[{}:{}:{}]",
            self.coords[0], self.coords[1], self.coords[2]
        )
    }
}

fn cross(a: &[Scalar], b: &[Scalar]) -> [Scalar; 3] {
    [
        &(&a[1] * &b[2]) - &(&a[2] * &b[1]),
        &(&a[2] * &b[0]) - &(&a[0] * &b[2]),
        &(&a[0] * &b[1]) - &(&a[1] * &b[0]),
    ]
}

/// Common zero of two independent linear forms (the cross product of their coefficients).
pub fn common_zero_of(l1: &FormX, l2: &FormX) -> Option<PointP2> {
    PointP2::new(cross(l1.coeffs(), l2.coeffs()))
}

/// The point `p(A)` where both linear entries vanish.
pub fn common_zero(a: &SheafMatrix) -> Result<PointP2, Error> {
    common_zero_of(&a.z1, &a.z2).ok_or(Error::DependentForms)
}

pub fn is_in_x(a: &SheafMatrix) -> bool {
    common_zero(a).is_ok() && !a.det().is_zero()
}

pub fn is_in_x8(a: &SheafMatrix) -> Result<bool, Error> {
    if !is_in_x(a) {
        return Err(Error::NotInX);
    }
    let p = common_zero(a)?;
    Ok(a.q1.eval(p.coords()).is_zero() && a.q2.eval(p.coords()).is_zero())
}

/// Records how a matrix was brought to special form:
/// `A' = group . (A o M)` where `(A o M)(x) = A(M x)`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Certificate {
    pub coordinate_change: Matrix,
    pub group: GroupElement,
}

impl Certificate {
    pub fn is_identity(&self) -> bool {
        self.group.is_identity()
            && self.coordinate_change == Matrix::identity(self.coordinate_change.field(), 3)
    }

    pub fn apply(&self, a: &SheafMatrix) -> SheafMatrix {
        self.group
            .act(&a.change_coordinates(&self.coordinate_change))
    }

    pub fn transport_direction(&self, b: &Direction) -> Direction {
        self.group
            .act_direction(&b.change_coordinates(&self.coordinate_change))
    }

    /// Recovers the original matrix from the special form.
    pub fn map_back(&self, special: &SheafMatrix) -> SheafMatrix {
        let m_inv = self
            .coordinate_change
            .inverse()
            .expect("coordinate change is invertible");
        self.group.inverse().act(special).change_coordinates(&m_inv)
    }
}

/// Coordinate change `old = M new` sending `[1:0:0]` to `p`.
fn chart_to(p: &PointP2) -> Matrix {
    let f = p.coords()[0].field();
    let k = p
        .coords()
        .iter()
        .position(|c| !c.is_zero())
        .expect("points are nonzero");
    let mut m = Matrix::identity(f, 3);
    if k != 0 {
        // permutation swapping x0 and x_k
        m.set(0, 0, f.zero());
        m.set(k, k, f.zero());
        m.set(0, k, f.one());
        m.set(k, 0, f.one());
    }
    for i in 0..3 {
        m.set(i, 0, p.coords()[i].clone());
    }
    m
}

/// Column operation `col2 -= y1 * col1` clearing the `y1` part of a special matrix.
pub fn eliminate_y1(a: &SheafMatrix) -> Result<(SheafMatrix, GroupElement), Error> {
    let coeffs = a.special_coefficients()?;
    let f = a.field();
    let h = GroupElement {
        g: Matrix::identity(f, 2),
        lambda: f.one(),
        mu: f.one(),
        z: coeffs.y1(),
    };
    Ok((h.act(a), h))
}

/// Brings `A` in `X8` to the form `[[x1, x2*y2], [x2, x1*w1 + x2*w2]]` with `p = [1:0:0]`.
pub fn to_special_form(a: &SheafMatrix) -> Result<(SheafMatrix, Certificate), Error> {
    if !is_in_x8(a)? {
        return Err(Error::NotInX8);
    }
    let f = a.field();
    let p = common_zero(a)?;
    let m = chart_to(&p);
    let moved = a.change_coordinates(&m);

    // The linear entries now vanish at [1:0:0], so they are combinations of x1, x2.
    let c = Matrix::from_rows(
        f,
        vec![
            vec![moved.z1.coeffs()[1].clone(), moved.z1.coeffs()[2].clone()],
            vec![moved.z2.coeffs()[1].clone(), moved.z2.coeffs()[2].clone()],
        ],
    );
    let g = c.inverse().ok_or(Error::DependentForms)?;
    let rows = GroupElement {
        g: g.clone(),
        lambda: f.one(),
        mu: f.one(),
        z: FormX::zero(f, 1),
    };
    let normalized = rows.act(&moved);
    let (special, h) = eliminate_y1(&normalized)?;
    let group = GroupElement {
        g,
        lambda: f.one(),
        mu: f.one(),
        z: h.z,
    };
    debug_assert_eq!(group.act(&moved), special);
    Ok((
        special,
        Certificate {
            coordinate_change: m,
            group,
        },
    ))
}

/// A representative `(n1, n2)` of the class of a direction in the normal space of `X8`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct NormalCoords {
    pub n1: Scalar,
    pub n2: Scalar,
}

impl NormalCoords {
    pub fn is_zero(&self) -> bool {
        self.n1.is_zero() && self.n2.is_zero()
    }

    /// `Some(alpha)` with `other = alpha * self`, for nonzero `self` and `other`.
    pub fn ratio_to(&self, other: &NormalCoords) -> Option<Scalar> {
        if self.is_zero() || other.is_zero() {
            return None;
        }
        let alpha = if !self.n1.is_zero() {
            other.n1.checked_div(&self.n1).ok()?
        } else {
            other.n2.checked_div(&self.n2).ok()?
        };
        (&alpha * &self.n1 == other.n1 && &alpha * &self.n2 == other.n2).then_some(alpha)
    }
}

impl fmt::Display for NormalCoords {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({}, {})", self.n1, self.n2)
    }
}

/// Normal coordinates of `B` at a special matrix and whether `B` is tangent to `X8`:
/// `n1 = xi00 - a01*xi0 - a02*eta0`, `n2 = eta00 - b01*xi0 - b02*eta0`.
pub fn tangent_and_normal(a: &SheafMatrix, b: &Direction) -> Result<(bool, NormalCoords), Error> {
    let s = a.special_coefficients()?;
    let (xi0, eta0) = (b.xi0(), b.eta0());
    let n1 = &(&b.xi00() - &(&s.a01 * &xi0)) - &(&s.a02 * &eta0);
    let n2 = &(&b.eta00() - &(&s.b01 * &xi0)) - &(&s.b02 * &eta0);
    let n = NormalCoords { n1, n2 };
    Ok((n.is_zero(), n))
}

/// The two linear functionals `B -> (n1, n2)` as a `2 x 18` matrix.
pub fn tangent_system_matrix(a: &SheafMatrix) -> Result<Matrix, Error> {
    let s = a.special_coefficients()?;
    let f = a.field();
    let mut m = Matrix::zeros(f, 2, 18);
    // xi0 = 0, eta0 = 3, xi00 = 6, eta00 = 12
    m.set(0, 6, f.one());
    m.set(0, 0, -&s.a01);
    m.set(0, 3, -&s.a02);
    m.set(1, 12, f.one());
    m.set(1, 0, -&s.b01);
    m.set(1, 3, -&s.b02);
    Ok(m)
}

/// The defining equations `f_i(A) = q_i(p(A))` of `X8` as polynomials in the
/// 18 coordinates, with `p(A) = z1 x z2`.
pub fn x8_equations(field: Field) -> [Poly<18>; 2] {
    let t = |i: usize| Poly::<18>::var(field, i);
    let z1 = [t(0), t(1), t(2)];
    let z2 = [t(3), t(4), t(5)];
    let p = [
        z1[1].mul(&z2[2]).sub(&z1[2].mul(&z2[1])),
        z1[2].mul(&z2[0]).sub(&z1[0].mul(&z2[2])),
        z1[0].mul(&z2[1]).sub(&z1[1].mul(&z2[0])),
    ];
    let monos = ternary_monomials(2);
    let eq = |offset: usize| {
        let mut acc = Poly::zero(field);
        for (k, m) in monos.iter().enumerate() {
            let mut term = t(offset + k);
            for (v, &e) in m.iter().enumerate() {
                term = term.mul(&p[v].pow(e as u32));
            }
            acc = acc.add(&term);
        }
        acc
    };
    [eq(6), eq(12)]
}

/// Jacobian of the equations of `X8` at `A`, by symbolic differentiation.
pub fn x8_jacobian_oracle(a: &SheafMatrix) -> Result<Matrix, Error> {
    if !is_in_x8(a)? {
        return Err(Error::NotInX8);
    }
    let f = a.field();
    let point: [Scalar; 18] = a.coordinates().try_into().expect("eighteen coordinates");
    let eqs = x8_equations(f);
    let mut jac = Matrix::zeros(f, 2, 18);
    for (i, e) in eqs.iter().enumerate() {
        for j in 0..18 {
            jac.set(i, j, e.derivative(j).eval(&point));
        }
    }
    Ok(jac)
}

/// `(det A up to scale, p(A))`: the image of `A` in the moduli space.
pub fn quotient_invariants(a: &SheafMatrix) -> Result<(FormX, PointP2), Error> {
    if !is_in_x(a) {
        return Err(Error::NotInX);
    }
    Ok((a.det().normalized(), common_zero(a)?))
}
