//! Euler characteristics, section counts and Hilbert functions on `D(p)`,
//! and the flatness probe along `A + tB`.

use std::fmt;

use num_rational::Rational64;
use num_traits::{One, Zero};

use crate::dspace::{
    self, basis, basis_d0, basis_d1, coordinates, dim_bigraded, BigradedForm, D0Form, FormU, Mono,
};
use crate::foundation::{Field, Matrix, Poly, Scalar};
use crate::moduli::{is_in_x, is_in_x8, tangent_and_normal, Direction, SheafMatrix};
use crate::rbundle::PhiMatrix;
use crate::Error;

/// A polynomial in `m` of degree at most 2, constant term first.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct HilbertPoly {
    coeffs: [Rational64; 3],
}

impl HilbertPoly {
    pub fn new(c0: Rational64, c1: Rational64, c2: Rational64) -> Self {
        HilbertPoly {
            coeffs: [c0, c1, c2],
        }
    }

    pub fn from_ints(c0: i64, c1: i64, c2: i64) -> Self {
        Self::new(c0.into(), c1.into(), c2.into())
    }

    /// `[constant, m, m^2]` coefficients.
    pub fn coeffs(&self) -> &[Rational64; 3] {
        &self.coeffs
    }

    pub fn degree(&self) -> Option<usize> {
        (0..3).rev().find(|&i| !self.coeffs[i].is_zero())
    }

    pub fn eval(&self, m: i64) -> Rational64 {
        let m = Rational64::from(m);
        self.coeffs[0] + self.coeffs[1] * m + self.coeffs[2] * m * m
    }

    pub fn add(&self, rhs: &Self) -> Self {
        Self::new(
            self.coeffs[0] + rhs.coeffs[0],
            self.coeffs[1] + rhs.coeffs[1],
            self.coeffs[2] + rhs.coeffs[2],
        )
    }

    pub fn scale(&self, k: i64) -> Self {
        let k = Rational64::from(k);
        Self::new(self.coeffs[0] * k, self.coeffs[1] * k, self.coeffs[2] * k)
    }

    /// `P(m + k)`.
    pub fn shift(&self, k: i64) -> Self {
        let k = Rational64::from(k);
        let [c0, c1, c2] = self.coeffs;
        Self::new(c0 + c1 * k + c2 * k * k, c1 + c2 * k * 2, c2)
    }

    /// The line through `(1, d1)`, `(2, d2)`, checked against every later sample.
    pub fn fit_linear(dims: &[u64]) -> Result<Self, Error> {
        if dims.len() < 2 {
            return Err(Error::FitFailure(
                dims.iter().map(|&d| d as usize).collect(),
            ));
        }
        let slope = dims[1] as i64 - dims[0] as i64;
        let c0 = dims[0] as i64 - slope;
        let p = Self::from_ints(c0, slope, 0);
        let exact = dims
            .iter()
            .enumerate()
            .all(|(i, &d)| p.eval(i as i64 + 1) == Rational64::from(d as i64));
        if exact {
            Ok(p)
        } else {
            Err(Error::FitFailure(
                dims.iter().map(|&d| d as usize).collect(),
            ))
        }
    }
}

impl fmt::Display for HilbertPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut parts: Vec<(bool, String)> = Vec::new();
        for (i, c) in self.coeffs.iter().enumerate().rev() {
            if c.is_zero() {
                continue;
            }
            let neg = *c < Rational64::zero();
            let mag = if neg { -c } else { *c };
            let mag_s = if mag.is_integer() {
                mag.to_integer().to_string()
            } else {
                format!("({mag})")
            };
            let body = match i {
                0 => mag_s,
                _ => {
                    let var = if i == 1 {
                        "m".to_string()
                    } else {
                        "m^2".to_string()
                    };
                    if mag.is_one() {
                        var
                    } else {
                        format!("{mag_s}{var}")
                    }
                }
            };
            parts.push((neg, body));
        }
        if parts.is_empty() {
            return write!(f, "0");
        }
        for (k, (neg, body)) in parts.iter().enumerate() {
            match (k, neg) {
                (0, true) => write!(f, "-{body}")?,
                (0, false) => write!(f, "{body}")?,
                (_, true) => write!(f, " - {body}")?,
                (_, false) => write!(f, " + {body}")?,
            }
        }
        Ok(())
    }
}

/// `chi(O(aH + bF)) = (a+b)^2/2 + 3(a+b)/2 + 1`.
pub fn chi_line_bundle(a: i64, b: i64) -> i64 {
    let n = a + b;
    (n + 1) * (n + 2) / 2
}

/// `chi` as a polynomial in `n = a + b`.
fn chi_poly() -> HilbertPoly {
    HilbertPoly::new(
        Rational64::one(),
        Rational64::new(3, 2),
        Rational64::new(1, 2),
    )
}

/// Hilbert polynomial of `O(aH + bF)` with respect to `H + F`:
/// `m -> chi(a + m, b + m)`.
pub fn hilbert_poly_line_bundle(a: i64, b: i64) -> HilbertPoly {
    // chi(n + 2m) for n = a + b
    let [d0, d1, d2] = *chi_poly().shift(a + b).coeffs();
    HilbertPoly::new(d0, d1 * 2, d2 * 4)
}

fn binom2(n: i64) -> u64 {
    // C(n, 2), zero below 2
    if n < 2 {
        0
    } else {
        (n * (n - 1) / 2) as u64
    }
}

/// `h^0(O(aH + bF))`.
pub fn h0_line_bundle(a: i64, b: i64) -> u64 {
    if a >= 0 && b >= 0 {
        dim_bigraded(a as u32, b as u32) as u64
    } else {
        h0_by_gluing(a, b)
    }
}

/// `h^0` from the gluing sequence `0 -> O_D -> O_D0 + O_D1 -> O_L`: the
/// dimension of the kernel of the difference of the restrictions to `L`.
pub fn h0_by_gluing(a: i64, b: i64) -> u64 {
    if b < 0 {
        // on D0 the twist is (a+b)h + |b|e, whose sections are plane forms of degree a+b;
        // D1 and L carry no sections
        return if a + b >= 0 { binom2(a + b + 2) } else { 0 };
    }
    if a < 0 {
        // no sections on D0; on D1 the forms of degree b vanishing on L
        return binom2(b + 2) - (b as u64 + 1);
    }
    let (a, b) = (a as u32, b as u32);
    let d0 = basis_d0(a, b);
    let d1 = basis_d1(b);
    let l_basis: Vec<Mono> = (0..=b as u8)
        .map(|k| [0, 0, 0, 0, b as u8 - k, k])
        .collect();
    let f = Field::Rational;
    let mut cols: Vec<Vec<Scalar>> = Vec::new();
    for m in &d0 {
        let form = D0Form::new(a, b, &Poly::monomial(*m, f.one())).expect("basis monomial");
        cols.push(coordinates(form.to_l().poly(), &l_basis));
    }
    for m in &d1 {
        let form = FormU::new(b, &Poly::monomial(*m, f.one())).expect("basis monomial");
        let neg = form.to_l().poly().scale(&-f.one());
        cols.push(coordinates(&neg, &l_basis));
    }
    let rank = Matrix::from_rows(f, cols).rank();
    (d0.len() + d1.len() - rank) as u64
}

/// The twists whose higher cohomology vanishes, so that `h^0 = chi`.
pub const VANISHING_TWISTS: [(i64, i64); 11] = [
    (0, -2),
    (-1, 0),
    (0, -1),
    (0, 0),
    (1, -1),
    (-1, 1),
    (1, 0),
    (0, 1),
    (-1, -1),
    (1, 1),
    (1, 2),
];

fn rank_of_columns(field: Field, cols: Vec<Vec<Scalar>>) -> usize {
    if cols.is_empty() || cols[0].is_empty() {
        return 0;
    }
    Matrix::from_rows(field, cols).rank()
}

fn bigraded_basis(a: i64, b: i64) -> Vec<Mono> {
    if a < 0 || b < 0 {
        Vec::new()
    } else {
        basis(a as u32, b as u32)
    }
}

/// Largest bidegree accepted by [`hilbert_function_coker`].
pub const MAX_COKER_DEGREE: i64 = 6;

/// Dimension of the `(c, d)` piece of the graded cokernel of `Phi`:
/// `S(c-1,d) + S(c,d)` modulo the image of `2 S(c-1,d-1)`.
pub fn hilbert_function_coker(phi: &PhiMatrix, c: i64, d: i64) -> Result<u64, Error> {
    if !(0..=MAX_COKER_DEGREE).contains(&c) || !(0..=MAX_COKER_DEGREE).contains(&d) {
        return Err(Error::OutOfRange(c, d));
    }
    let f = phi.field();
    let top = bigraded_basis(c - 1, d);
    let bottom = bigraded_basis(c, d);
    let source = bigraded_basis(c - 1, d - 1);
    let mut cols = Vec::new();
    for m in &source {
        let g = BigradedForm::monomial(f, *m);
        for (first, second) in [(phi.e11(), phi.e12()), (phi.e21(), phi.e22())] {
            let mut col = coordinates(g.mul(first).poly(), &top);
            col.extend(coordinates(g.mul(second).poly(), &bottom));
            cols.push(col);
        }
    }
    let rank = rank_of_columns(f, cols);
    Ok((top.len() + bottom.len() - rank) as u64)
}

/// Hilbert function of the cokernel of `Phi` on `D0`, at bidegree `(m, m)`.
pub fn coker_dim_d0(phi: &PhiMatrix, m: u32) -> u64 {
    let f = phi.field();
    let e = phi.entries().map(|x| x.to_d0());
    let top = if m >= 1 {
        basis_d0(m - 1, m)
    } else {
        Vec::new()
    };
    let bottom = basis_d0(m, m);
    let source = if m >= 1 {
        basis_d0(m - 1, m - 1)
    } else {
        Vec::new()
    };
    let mut cols = Vec::new();
    for mono in &source {
        let g = D0Form::new(m - 1, m - 1, &Poly::monomial(*mono, f.one())).expect("basis");
        for (first, second) in [(&e[0], &e[2]), (&e[1], &e[3])] {
            let mut col = coordinates(g.mul(first).poly(), &top);
            col.extend(coordinates(g.mul(second).poly(), &bottom));
            cols.push(col);
        }
    }
    (top.len() + bottom.len() - rank_of_columns(f, cols)) as u64
}

/// Hilbert function of the cokernel of `Phi` on the plane `D1`, in degree `m`.
pub fn coker_dim_d1(phi: &PhiMatrix, m: u32) -> u64 {
    let f = phi.field();
    let e = phi.entries().map(|x| x.to_d1());
    let target = basis_d1(m);
    let source = if m >= 1 { basis_d1(m - 1) } else { Vec::new() };
    let mut cols = Vec::new();
    for mono in &source {
        let g = FormU::new(m - 1, &Poly::monomial(*mono, f.one())).expect("basis");
        for (first, second) in [(&e[0], &e[2]), (&e[1], &e[3])] {
            let mut col = coordinates(g.mul(first).poly(), &target);
            col.extend(coordinates(g.mul(second).poly(), &target));
            cols.push(col);
        }
    }
    (2 * target.len() - rank_of_columns(f, cols)) as u64
}

/// Number of sampled degrees used for fitting Hilbert polynomials.
pub const FIT_SAMPLES: u32 = 4;

/// Hilbert polynomials of the restrictions of the cokernel to `D0` (with
/// respect to `O(1,1)`) and to `D1`.
pub fn restriction_hilbert_polys(phi: &PhiMatrix) -> Result<(HilbertPoly, HilbertPoly), Error> {
    let d0: Vec<u64> = (1..=FIT_SAMPLES).map(|m| coker_dim_d0(phi, m)).collect();
    let d1: Vec<u64> = (1..=FIT_SAMPLES).map(|m| coker_dim_d1(phi, m)).collect();
    Ok((HilbertPoly::fit_linear(&d0)?, HilbertPoly::fit_linear(&d1)?))
}

/// `chi(E(mH))` from the resolution: `chi(m-1,0) + chi(m,0) - 2 chi(m-1,-1)`.
pub fn chi_additivity_h() -> HilbertPoly {
    let chi = chi_poly();
    chi.shift(-1).add(&chi).add(&chi.shift(-2).scale(-2))
}

/// `chi(E(m(H+F)))`: `chi(m-1,m) + chi(m,m) - 2 chi(m-1,m-1)`, in the variable `m`.
pub fn chi_additivity_hf() -> HilbertPoly {
    let in_m = |shift: i64| {
        // chi(2m + shift) as a polynomial in m
        let p = chi_poly().shift(shift);
        let [c0, c1, c2] = *p.coeffs();
        HilbertPoly::new(c0, c1 * 2, c2 * 4)
    };
    in_m(-1).add(&in_m(0)).add(&in_m(-2).scale(-2))
}

/// Dimension in degree `m` of the cokernel of `A` on the plane:
/// `S(m-1) + S(m)` modulo the image of `2 S(m-2)`.
pub fn plane_coker_dim(a: &SheafMatrix, m: u32) -> u64 {
    let f = a.field();
    let monos = |d: i64| -> Vec<Mono> {
        if d < 0 {
            Vec::new()
        } else {
            dspace::ternary_monomials(d as u32)
                .into_iter()
                .map(|x| [x[0], x[1], x[2], 0, 0, 0])
                .collect()
        }
    };
    let m = m as i64;
    let top = monos(m - 1);
    let bottom = monos(m);
    let source = monos(m - 2);
    let entries = [&a.z1, &a.z2, &a.q1, &a.q2].map(|e| e.to_poly());
    let mut cols = Vec::new();
    for mono in &source {
        let g = Poly::monomial(*mono, f.one());
        for (lin, quad) in [(&entries[0], &entries[2]), (&entries[1], &entries[3])] {
            let mut col = coordinates(&g.mul(lin), &top);
            col.extend(coordinates(&g.mul(quad), &bottom));
            cols.push(col);
        }
    }
    (top.len() + bottom.len() - rank_of_columns(f, cols)) as u64
}

/// One fibre of the family `A + tB`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FamilyProbe {
    pub t: Scalar,
    pub matrix: SheafMatrix,
    /// Cokernel dimensions in degrees `1..=4`.
    pub dims: Vec<u64>,
}

/// Samples the family `A + tB` at every nonzero `t`.
pub fn family_probes(
    a: &SheafMatrix,
    b: &Direction,
    t_samples: &[Scalar],
) -> Result<Vec<FamilyProbe>, Error> {
    let (tangent, _) = tangent_and_normal(a, b)?;
    if tangent {
        return Err(Error::TangentDirection);
    }
    let mut out = Vec::new();
    for t in t_samples.iter().filter(|t| !t.is_zero()) {
        let at = a.add_direction(b, t);
        if !is_in_x(&at) {
            return Err(Error::SampleNotInX(t.to_string()));
        }
        if is_in_x8(&at)? {
            return Err(Error::SampleInX8(t.to_string()));
        }
        let dims = (1..=FIT_SAMPLES).map(|m| plane_coker_dim(&at, m)).collect();
        out.push(FamilyProbe {
            t: t.clone(),
            matrix: at,
            dims,
        });
    }
    Ok(out)
}

/// Every nonzero fibre has Hilbert function `3m+1` in degrees `1..=4`, and
/// the central fibre has `chi(E(mH)) = 3m+1`.
pub fn flat_family_check(
    a: &SheafMatrix,
    b: &Direction,
    t_samples: &[Scalar],
) -> Result<bool, Error> {
    let target = HilbertPoly::from_ints(1, 3, 0);
    let probes = family_probes(a, b, t_samples)?;
    let fibres_ok = probes.iter().all(|p| {
        p.dims
            .iter()
            .enumerate()
            .all(|(i, &d)| target.eval(i as i64 + 1) == Rational64::from(d as i64))
    });
    Ok(fibres_ok && chi_additivity_h() == target)
}
