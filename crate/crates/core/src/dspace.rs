//! Coordinate rings of the degenerate surface `D(p)` with `p = [1:0:0]`.
//!
//! `D(p)` sits in `P2 x P2` with coordinates `x0, x1, x2` and `u0, u1, u2`,
//! cut out by `x1*u0`, `x2*u0` and `x1*u2 - x2*u1`. Its components are
//! `D0 = {u0 = 0}`, the blow-up of the plane at `p`, and `D1 = {x1 = x2 = 0}`,
//! a plane; they meet along the line `L`.
//!
//! Ring elements are stored in the monomial normal form obtained by killing
//! `x1*u0`, `x2*u0` and rewriting `x2*u1 -> x1*u2` to exhaustion.

use std::fmt;

use crate::foundation::{Field, Poly, Scalar};
use crate::Error;

/// Exponents of `x0, x1, x2, u0, u1, u2`.
pub type Mono = [u8; 6];

pub const X0: usize = 0;
pub const X1: usize = 1;
pub const X2: usize = 2;
pub const U0: usize = 3;
pub const U1: usize = 4;
pub const U2: usize = 5;

pub const RING_NAMES: [&str; 6] = ["x0", "x1", "x2", "u0", "u1", "u2"];
/// On `D0` the fibre coordinates are written `v1, v2`.
pub const D0_NAMES: [&str; 6] = ["x0", "x1", "x2", "v0", "v1", "v2"];

fn x_degree(m: &Mono) -> u32 {
    (m[X0] + m[X1] + m[X2]) as u32
}

fn u_degree(m: &Mono) -> u32 {
    (m[U0] + m[U1] + m[U2]) as u32
}

/// Monomials of degree `d` in three variables, in graded-lex order:
/// `[x0, x1, x2]`, `[x0^2, x0x1, x0x2, x1^2, x1x2, x2^2]`, and so on.
pub fn ternary_monomials(d: u32) -> Vec<[u8; 3]> {
    let d = d as u8;
    let mut out = Vec::new();
    for i0 in (0..=d).rev() {
        for i1 in (0..=d - i0).rev() {
            out.push([i0, i1, d - i0 - i1]);
        }
    }
    out
}

/// Normal form of a single monomial of the ring of `D(p)`; `None` when it lies in the ideal.
pub fn normal_form(m: Mono) -> Option<Mono> {
    let [i0, i1, i2, j0, j1, j2] = m;
    if j0 > 0 && i1 + i2 > 0 {
        return None;
    }
    let k = i2.min(j1);
    Some([i0, i1 + k, i2 - k, j0, j1 - k, j2 + k])
}

pub fn is_normal(m: &Mono) -> bool {
    normal_form(*m) == Some(*m)
}

/// All monomials of bidegree `(a, b)`, normal or not.
pub fn raw_monomials(a: u32, b: u32) -> Vec<Mono> {
    let xs = ternary_monomials(a);
    let us = ternary_monomials(b);
    let mut out = Vec::with_capacity(xs.len() * us.len());
    for x in &xs {
        for u in &us {
            out.push([x[0], x[1], x[2], u[0], u[1], u[2]]);
        }
    }
    out
}

/// Normal-form monomial basis of the `(a, b)` piece of the ring of `D(p)`.
pub fn basis(a: u32, b: u32) -> Vec<Mono> {
    raw_monomials(a, b).into_iter().filter(is_normal).collect()
}

pub fn dim_bigraded(a: u32, b: u32) -> usize {
    basis(a, b).len()
}

fn d0_normal_form(m: Mono) -> Mono {
    let [i0, i1, i2, j0, j1, j2] = m;
    let k = i2.min(j1);
    [i0, i1 + k, i2 - k, j0, j1 - k, j2 + k]
}

/// Monomial basis of the `(a, b)` piece of the ring of `D0`, that is
/// `k[x0,x1,x2; v1,v2] / (x1 v2 - x2 v1)`.
pub fn basis_d0(a: u32, b: u32) -> Vec<Mono> {
    raw_monomials(a, b)
        .into_iter()
        .filter(|m| m[U0] == 0 && d0_normal_form(*m) == *m)
        .collect()
}

/// Monomials of degree `d` in `u0, u1, u2` (the ring of the plane `D1`).
pub fn basis_d1(d: u32) -> Vec<Mono> {
    raw_monomials(0, d)
}

/// Coordinates of `f` in the given monomial basis. Panics if `f` has a term outside it.
pub fn coordinates(poly: &Poly<6>, basis: &[Mono]) -> Vec<Scalar> {
    let mut out = vec![poly.field().zero(); basis.len()];
    for (e, c) in poly.terms() {
        let i = basis
            .iter()
            .position(|b| b == e)
            .unwrap_or_else(|| panic!("monomial {e:?} outside basis"));
        out[i] = c.clone();
    }
    out
}

/// A homogeneous form in `x0, x1, x2`, stored densely in the graded-lex order
/// of [`ternary_monomials`].
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct FormX {
    degree: u32,
    coeffs: Vec<Scalar>,
}

impl FormX {
    pub fn new(degree: u32, coeffs: Vec<Scalar>) -> Result<Self, Error> {
        let want = ternary_monomials(degree).len();
        if coeffs.len() != want {
            return Err(Error::NotHomogeneous(format!(
                "degree {degree} form needs {want} coefficients, got {}",
                coeffs.len()
            )));
        }
        Ok(FormX { degree, coeffs })
    }

    pub fn zero(field: Field, degree: u32) -> Self {
        let n = ternary_monomials(degree).len();
        FormX {
            degree,
            coeffs: vec![field.zero(); n],
        }
    }

    pub fn from_i64(field: Field, degree: u32, coeffs: &[i64]) -> Self {
        Self::new(degree, coeffs.iter().map(|&c| field.from_i64(c)).collect())
            .expect("coefficient count matches degree")
    }

    /// The coordinate function `x_i`.
    pub fn var(field: Field, i: usize) -> Self {
        let mut c = vec![field.zero(); 3];
        c[i] = field.one();
        FormX {
            degree: 1,
            coeffs: c,
        }
    }

    pub fn from_poly(poly: &Poly<6>, degree: u32) -> Result<Self, Error> {
        let monos = ternary_monomials(degree);
        let mut coeffs = vec![poly.field().zero(); monos.len()];
        for (e, c) in poly.terms() {
            let x = [e[X0], e[X1], e[X2]];
            let pos = monos.iter().position(|m| *m == x);
            match pos {
                Some(i) if u_degree(e) == 0 => coeffs[i] = c.clone(),
                _ => {
                    return Err(Error::NotHomogeneous(format!(
                        "{} is not a form of degree {degree} in x",
                        poly.render(&RING_NAMES)
                    )))
                }
            }
        }
        Ok(FormX { degree, coeffs })
    }

    pub fn to_poly(&self) -> Poly<6> {
        let mut p = Poly::zero(self.field());
        for (m, c) in ternary_monomials(self.degree).iter().zip(&self.coeffs) {
            p.add_term([m[0], m[1], m[2], 0, 0, 0], c.clone());
        }
        p
    }

    pub fn degree(&self) -> u32 {
        self.degree
    }

    pub fn coeffs(&self) -> &[Scalar] {
        &self.coeffs
    }

    pub fn field(&self) -> Field {
        self.coeffs[0].field()
    }

    pub fn coeff(&self, exps: [u8; 3]) -> Scalar {
        ternary_monomials(self.degree)
            .iter()
            .position(|m| *m == exps)
            .map(|i| self.coeffs[i].clone())
            .unwrap_or_else(|| self.field().zero())
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.iter().all(Scalar::is_zero)
    }

    pub fn add(&self, rhs: &FormX) -> FormX {
        assert_eq!(self.degree, rhs.degree);
        FormX {
            degree: self.degree,
            coeffs: self
                .coeffs
                .iter()
                .zip(&rhs.coeffs)
                .map(|(a, b)| a + b)
                .collect(),
        }
    }

    pub fn sub(&self, rhs: &FormX) -> FormX {
        self.add(&rhs.scale(&-self.field().one()))
    }

    pub fn scale(&self, c: &Scalar) -> FormX {
        FormX {
            degree: self.degree,
            coeffs: self.coeffs.iter().map(|a| a * c).collect(),
        }
    }

    pub fn mul(&self, rhs: &FormX) -> FormX {
        FormX::from_poly(
            &self.to_poly().mul(&rhs.to_poly()),
            self.degree + rhs.degree,
        )
        .expect("product of forms is a form")
    }

    pub fn eval(&self, point: &[Scalar; 3]) -> Scalar {
        let f = self.field();
        self.to_poly().eval(&[
            point[0].clone(),
            point[1].clone(),
            point[2].clone(),
            f.zero(),
            f.zero(),
            f.zero(),
        ])
    }

    /// `f(M x)`: the form expressed in new coordinates where `old = M * new`.
    pub fn change_coordinates(&self, m: &crate::Matrix) -> FormX {
        let f = self.field();
        let images: [Poly<6>; 6] = std::array::from_fn(|i| {
            if i < 3 {
                let mut p = Poly::zero(f);
                for j in 0..3 {
                    p.add_term(unit(j), m.get(i, j).clone());
                }
                p
            } else {
                Poly::var(f, i)
            }
        });
        FormX::from_poly(&self.to_poly().substitute(&images), self.degree)
            .expect("linear substitution preserves degree")
    }

    /// Scales so that the first nonzero coefficient is 1; the zero form is returned unchanged.
    pub fn normalized(&self) -> FormX {
        match self.coeffs.iter().find(|c| !c.is_zero()) {
            Some(lead) => self.scale(&lead.inv().expect("nonzero")),
            None => self.clone(),
        }
    }

    pub fn render(&self) -> String {
        self.to_poly().render(&RING_NAMES)
    }
}

fn unit(i: usize) -> Mono {
    let mut e = [0; 6];
    e[i] = 1;
    e
}

impl fmt::Display for FormX {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.render())
    }
}

/// The twist `aH + bF` of the structure sheaf of `D(p)`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct DivisorClass {
    pub a: i64,
    pub b: i64,
}

impl DivisorClass {
    pub fn new(a: i64, b: i64) -> Self {
        DivisorClass { a, b }
    }
}

impl fmt::Display for DivisorClass {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "O({}H{:+}F)", self.a, self.b)
    }
}

/// An element of the `(a, b)` piece of the ring of `D(p)` in normal form.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct BigradedForm {
    a: u32,
    b: u32,
    poly: Poly<6>,
}

fn check_bidegree(poly: &Poly<6>, a: u32, b: u32, names: &[&str; 6]) -> Result<(), Error> {
    for (e, _) in poly.terms() {
        if x_degree(e) != a || u_degree(e) != b {
            return Err(Error::NotHomogeneous(format!(
                "{} is not of bidegree ({a},{b})",
                poly.render(names)
            )));
        }
    }
    Ok(())
}

impl BigradedForm {
    /// Reduces an arbitrary bihomogeneous polynomial to normal form.
    pub fn new(a: u32, b: u32, poly: &Poly<6>) -> Result<Self, Error> {
        check_bidegree(poly, a, b, &RING_NAMES)?;
        Ok(BigradedForm {
            a,
            b,
            poly: poly.map_monomials(normal_form),
        })
    }

    pub fn zero(field: Field, a: u32, b: u32) -> Self {
        BigradedForm {
            a,
            b,
            poly: Poly::zero(field),
        }
    }

    pub fn monomial(field: Field, m: Mono) -> Self {
        Self::new(x_degree(&m), u_degree(&m), &Poly::monomial(m, field.one()))
            .expect("a monomial is bihomogeneous")
    }

    pub fn bidegree(&self) -> (u32, u32) {
        (self.a, self.b)
    }

    pub fn poly(&self) -> &Poly<6> {
        &self.poly
    }

    pub fn field(&self) -> Field {
        self.poly.field()
    }

    pub fn is_zero(&self) -> bool {
        self.poly.is_zero()
    }

    pub fn add(&self, rhs: &Self) -> Self {
        assert_eq!(self.bidegree(), rhs.bidegree(), "bidegree mismatch");
        BigradedForm {
            a: self.a,
            b: self.b,
            poly: self.poly.add(&rhs.poly),
        }
    }

    pub fn sub(&self, rhs: &Self) -> Self {
        self.add(&rhs.scale(&-self.field().one()))
    }

    pub fn scale(&self, c: &Scalar) -> Self {
        BigradedForm {
            a: self.a,
            b: self.b,
            poly: self.poly.scale(c),
        }
    }

    pub fn mul(&self, rhs: &Self) -> Self {
        BigradedForm {
            a: self.a + rhs.a,
            b: self.b + rhs.b,
            poly: self.poly.mul(&rhs.poly).map_monomials(normal_form),
        }
    }

    /// Pulls back along `u -> images(u)`, with `x` fixed, and reduces.
    pub fn substitute_u(&self, images: &[Poly<6>; 3]) -> Self {
        let f = self.field();
        let all: [Poly<6>; 6] = std::array::from_fn(|i| {
            if i < 3 {
                Poly::var(f, i)
            } else {
                images[i - 3].clone()
            }
        });
        BigradedForm::new(self.a, self.b, &self.poly.substitute(&all))
            .expect("substitution is bihomogeneous")
    }

    pub fn eval(&self, x: &[Scalar; 3], u: &[Scalar; 3]) -> Scalar {
        self.poly.eval(&[
            x[0].clone(),
            x[1].clone(),
            x[2].clone(),
            u[0].clone(),
            u[1].clone(),
            u[2].clone(),
        ])
    }

    /// Value at the point `u` of the plane `D1` (where `x = [1:0:0]`).
    pub fn eval_d1(&self, u: &[Scalar; 3]) -> Scalar {
        let f = self.field();
        self.eval(&[f.one(), f.zero(), f.zero()], u)
    }

    /// Restriction to `D0`: `u0 -> 0`, `u1, u2 -> v1, v2`.
    pub fn to_d0(&self) -> D0Form {
        D0Form {
            a: self.a,
            b: self.b,
            poly: self
                .poly
                .map_monomials(|m| (m[U0] == 0).then(|| d0_normal_form(m))),
        }
    }

    /// Restriction to `D1`: `x1, x2 -> 0`, `x0 -> 1`.
    pub fn to_d1(&self) -> FormU {
        FormU {
            degree: self.b,
            poly: self.poly.map_monomials(|m| {
                (m[X1] == 0 && m[X2] == 0).then_some([0, 0, 0, m[U0], m[U1], m[U2]])
            }),
        }
    }

    /// Restriction to the line `L`: both substitutions.
    pub fn to_l(&self) -> BinaryForm {
        self.to_d1().to_l()
    }

    pub fn restrict(&self, target: Component) -> Restricted {
        match target {
            Component::D0 => Restricted::D0(self.to_d0()),
            Component::D1 => Restricted::D1(self.to_d1()),
            Component::L => Restricted::L(self.to_l()),
        }
    }

    pub fn render(&self) -> String {
        self.poly.render(&RING_NAMES)
    }
}

impl fmt::Display for BigradedForm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.render())
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Component {
    D0,
    D1,
    L,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Restricted {
    D0(D0Form),
    D1(FormU),
    L(BinaryForm),
}

/// An element of the ring of `D0 = {x1 v2 = x2 v1} in P2 x P1`, in normal form
/// (`x2 > 0` implies `v1` absent). `v1, v2` occupy the `u1, u2` slots.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct D0Form {
    a: u32,
    b: u32,
    poly: Poly<6>,
}

impl D0Form {
    pub fn new(a: u32, b: u32, poly: &Poly<6>) -> Result<Self, Error> {
        check_bidegree(poly, a, b, &D0_NAMES)?;
        if poly.terms().any(|(e, _)| e[U0] > 0) {
            return Err(Error::NotHomogeneous("D0 forms do not involve u0".into()));
        }
        Ok(D0Form {
            a,
            b,
            poly: poly.map_monomials(|m| Some(d0_normal_form(m))),
        })
    }

    pub fn bidegree(&self) -> (u32, u32) {
        (self.a, self.b)
    }

    pub fn poly(&self) -> &Poly<6> {
        &self.poly
    }

    pub fn is_zero(&self) -> bool {
        self.poly.is_zero()
    }

    pub fn add(&self, rhs: &Self) -> Self {
        assert_eq!(self.bidegree(), rhs.bidegree(), "bidegree mismatch");
        D0Form {
            a: self.a,
            b: self.b,
            poly: self.poly.add(&rhs.poly),
        }
    }

    pub fn sub(&self, rhs: &Self) -> Self {
        assert_eq!(self.bidegree(), rhs.bidegree(), "bidegree mismatch");
        D0Form {
            a: self.a,
            b: self.b,
            poly: self.poly.sub(&rhs.poly),
        }
    }

    pub fn mul(&self, rhs: &Self) -> Self {
        D0Form {
            a: self.a + rhs.a,
            b: self.b + rhs.b,
            poly: self
                .poly
                .mul(&rhs.poly)
                .map_monomials(|m| Some(d0_normal_form(m))),
        }
    }

    /// Restriction to the exceptional line `L0 = {x1 = x2 = 0}`.
    pub fn to_l(&self) -> BinaryForm {
        BinaryForm {
            degree: self.b,
            poly: self.poly.map_monomials(|m| {
                (m[X1] == 0 && m[X2] == 0).then_some([0, 0, 0, 0, m[U1], m[U2]])
            }),
        }
    }

    pub fn render(&self) -> String {
        self.poly.render(&D0_NAMES)
    }
}

impl fmt::Display for D0Form {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.render())
    }
}

/// A form in `u0, u1, u2` on the plane `D1`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct FormU {
    degree: u32,
    poly: Poly<6>,
}

impl FormU {
    pub fn new(degree: u32, poly: &Poly<6>) -> Result<Self, Error> {
        check_bidegree(poly, 0, degree, &RING_NAMES)?;
        Ok(FormU {
            degree,
            poly: poly.clone(),
        })
    }

    /// A quadric from its coefficients on `[u0^2, u0u1, u0u2, u1^2, u1u2, u2^2]`.
    pub fn quadric(coeffs: &[Scalar; 6]) -> Self {
        let f = coeffs[0].field();
        let mut p = Poly::zero(f);
        for (m, c) in ternary_monomials(2).iter().zip(coeffs) {
            p.add_term([0, 0, 0, m[0], m[1], m[2]], c.clone());
        }
        FormU { degree: 2, poly: p }
    }

    pub fn quadric_i64(field: Field, coeffs: [i64; 6]) -> Self {
        Self::quadric(&coeffs.map(|c| field.from_i64(c)))
    }

    /// Coefficients on `[u0^2, u0u1, u0u2, u1^2, u1u2, u2^2]`.
    pub fn quadric_coeffs(&self) -> [Scalar; 6] {
        assert_eq!(self.degree, 2, "not a quadric");
        let monos = ternary_monomials(2);
        std::array::from_fn(|i| {
            let m = monos[i];
            self.poly.coeff(&[0, 0, 0, m[0], m[1], m[2]])
        })
    }

    /// The symmetric matrix of the quadric, doubled so its entries stay integral:
    /// `c(u) = u^T S u / 2`.
    pub fn doubled_symmetric_matrix(&self) -> crate::Matrix {
        let [c00, c01, c02, c11, c12, c22] = self.quadric_coeffs();
        let two = self.field().from_i64(2);
        crate::Matrix::from_rows(
            self.field(),
            vec![
                vec![&two * &c00, c01.clone(), c02.clone()],
                vec![c01, &two * &c11, c12.clone()],
                vec![c02, c12, &two * &c22],
            ],
        )
    }

    pub fn degree(&self) -> u32 {
        self.degree
    }

    pub fn poly(&self) -> &Poly<6> {
        &self.poly
    }

    pub fn field(&self) -> Field {
        self.poly.field()
    }

    pub fn is_zero(&self) -> bool {
        self.poly.is_zero()
    }

    pub fn eval(&self, u: &[Scalar; 3]) -> Scalar {
        let f = self.field();
        self.poly.eval(&[
            f.zero(),
            f.zero(),
            f.zero(),
            u[0].clone(),
            u[1].clone(),
            u[2].clone(),
        ])
    }

    pub fn mul(&self, rhs: &Self) -> Self {
        FormU {
            degree: self.degree + rhs.degree,
            poly: self.poly.mul(&rhs.poly),
        }
    }

    pub fn sub(&self, rhs: &Self) -> Self {
        assert_eq!(self.degree, rhs.degree);
        FormU {
            degree: self.degree,
            poly: self.poly.sub(&rhs.poly),
        }
    }

    pub fn scale(&self, c: &Scalar) -> Self {
        FormU {
            degree: self.degree,
            poly: self.poly.scale(c),
        }
    }

    /// Pullback along the linear substitution `u_i -> images[i]`.
    pub fn substitute(&self, images: &[Poly<6>; 3]) -> Self {
        let f = self.field();
        let all: [Poly<6>; 6] = std::array::from_fn(|i| {
            if i < 3 {
                Poly::var(f, i)
            } else {
                images[i - 3].clone()
            }
        });
        FormU {
            degree: self.degree,
            poly: self.poly.substitute(&all),
        }
    }

    /// Restriction to `L = {u0 = 0}`.
    pub fn to_l(&self) -> BinaryForm {
        BinaryForm {
            degree: self.degree,
            poly: self.poly.map_monomials(|m| (m[U0] == 0).then_some(m)),
        }
    }

    /// Whether `u0` divides the form.
    pub fn divisible_by_u0(&self) -> bool {
        self.poly.terms().all(|(e, _)| e[U0] > 0)
    }

    pub fn render(&self) -> String {
        self.poly.render(&RING_NAMES)
    }
}

impl fmt::Display for FormU {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.render())
    }
}

/// A binary form in `u1, u2` on the line `L`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct BinaryForm {
    degree: u32,
    poly: Poly<6>,
}

impl BinaryForm {
    pub fn degree(&self) -> u32 {
        self.degree
    }

    pub fn poly(&self) -> &Poly<6> {
        &self.poly
    }

    pub fn is_zero(&self) -> bool {
        self.poly.is_zero()
    }

    /// Coefficients `[u1^d, u1^(d-1) u2, ..., u2^d]`.
    pub fn coeffs(&self) -> Vec<Scalar> {
        let d = self.degree as u8;
        (0..=d)
            .map(|k| self.poly.coeff(&[0, 0, 0, 0, d - k, k]))
            .collect()
    }

    /// `b^2 - 4ac` for a binary quadric `a u1^2 + b u1 u2 + c u2^2`.
    pub fn discriminant(&self) -> Scalar {
        assert_eq!(self.degree, 2, "discriminant of a non-quadric");
        let c = self.coeffs();
        let four = self.poly.field().from_i64(4);
        &(&c[1] * &c[1]) - &(&four * &(&c[0] * &c[2]))
    }

    pub fn render(&self) -> String {
        self.poly.render(&RING_NAMES)
    }
}

impl fmt::Display for BinaryForm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.render())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn q() -> Field {
        Field::Rational
    }

    fn mono(s: &[(usize, u8)]) -> Mono {
        let mut m = [0; 6];
        for &(i, e) in s {
            m[i] = e;
        }
        m
    }

    #[test]
    fn normal_form_examples() {
        assert_eq!(normal_form(mono(&[(X1, 1), (U0, 1)])), None);
        assert_eq!(
            normal_form(mono(&[(X2, 1), (U1, 1)])),
            Some(mono(&[(X1, 1), (U2, 1)]))
        );
        let m = mono(&[(X0, 1), (U0, 1)]);
        assert_eq!(normal_form(m), Some(m));
    }

    #[test]
    fn small_dimensions() {
        assert_eq!(dim_bigraded(0, 0), 1);
        assert_eq!(dim_bigraded(1, 1), 6);
        assert_eq!(dim_bigraded(1, 2), 10);
    }

    #[test]
    fn ternary_order_is_fixed() {
        assert_eq!(ternary_monomials(1), vec![[1, 0, 0], [0, 1, 0], [0, 0, 1]]);
        assert_eq!(
            ternary_monomials(2),
            vec![
                [2, 0, 0],
                [1, 1, 0],
                [1, 0, 1],
                [0, 2, 0],
                [0, 1, 1],
                [0, 0, 2]
            ]
        );
        assert_eq!(ternary_monomials(3).len(), 10);
        assert_eq!(ternary_monomials(3)[4], [1, 1, 1]);
    }

    #[test]
    fn restriction_examples() {
        let f = q();
        let x1u2 = BigradedForm::monomial(f, mono(&[(X1, 1), (U2, 1)]));
        assert!(x1u2.to_d1().is_zero());

        // x0*u1^2 + x0*u0*u2 on L is u1^2
        let g = BigradedForm::monomial(f, mono(&[(X0, 1), (U1, 2)])).add(&BigradedForm::monomial(
            f,
            mono(&[(X0, 1), (U0, 1), (U2, 1)]),
        ));
        let on_l = g.to_l();
        assert_eq!(on_l.coeffs(), vec![f.one(), f.zero(), f.zero()]);

        let x2u1 = BigradedForm::monomial(f, mono(&[(X2, 1), (U1, 1)]));
        assert_eq!(x2u1.render(), "x1*u2");
        assert_eq!(x2u1.to_d0().render(), "x1*v2");
    }

    #[test]
    fn non_homogeneous_rejected() {
        let f = q();
        let p = Poly::var(f, X0).add(&Poly::var(f, U0));
        assert!(BigradedForm::new(1, 0, &p).is_err());
        assert!(FormX::new(2, vec![f.one(); 3]).is_err());
    }

    #[test]
    fn coordinate_change_swaps() {
        let f = q();
        // old = M new with M swapping x0 and x2
        let m = crate::Matrix::from_i64(f, &[&[0, 0, 1], &[0, 1, 0], &[1, 0, 0]]);
        let x0 = FormX::var(f, 0);
        assert_eq!(x0.change_coordinates(&m), FormX::var(f, 2));
    }
}
