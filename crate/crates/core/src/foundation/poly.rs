//! Sparse multivariate polynomials with a fixed number of variables.

use std::collections::BTreeMap;

use super::scalar::{Field, Scalar};

pub type Exponents<const N: usize> = [u8; N];

/// A polynomial in `N` variables over a [`Field`]. Zero coefficients are never stored.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Poly<const N: usize> {
    field: Field,
    terms: BTreeMap<Exponents<N>, Scalar>,
}

impl<const N: usize> Poly<N> {
    pub fn zero(field: Field) -> Self {
        Poly {
            field,
            terms: BTreeMap::new(),
        }
    }

    pub fn constant(c: Scalar) -> Self {
        Self::monomial([0; N], c)
    }

    pub fn monomial(exp: Exponents<N>, c: Scalar) -> Self {
        let mut p = Self::zero(c.field());
        p.add_term(exp, c);
        p
    }

    pub fn var(field: Field, i: usize) -> Self {
        let mut e = [0; N];
        e[i] = 1;
        Self::monomial(e, field.one())
    }

    pub fn field(&self) -> Field {
        self.field
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn terms(&self) -> impl DoubleEndedIterator<Item = (&Exponents<N>, &Scalar)> {
        self.terms.iter()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn coeff(&self, exp: &Exponents<N>) -> Scalar {
        self.terms
            .get(exp)
            .cloned()
            .unwrap_or_else(|| self.field.zero())
    }

    pub fn add_term(&mut self, exp: Exponents<N>, c: Scalar) {
        if c.is_zero() {
            return;
        }
        match self.terms.remove(&exp) {
            Some(old) => {
                let s = old + c;
                if !s.is_zero() {
                    self.terms.insert(exp, s);
                }
            }
            None => {
                self.terms.insert(exp, c);
            }
        }
    }

    pub fn add(&self, rhs: &Self) -> Self {
        let mut out = self.clone();
        for (e, c) in &rhs.terms {
            out.add_term(*e, c.clone());
        }
        out
    }

    pub fn sub(&self, rhs: &Self) -> Self {
        self.add(&rhs.neg())
    }

    pub fn neg(&self) -> Self {
        self.scale(&-self.field.one())
    }

    pub fn scale(&self, c: &Scalar) -> Self {
        let mut out = Self::zero(self.field);
        for (e, v) in &self.terms {
            out.add_term(*e, v * c);
        }
        out
    }

    pub fn mul(&self, rhs: &Self) -> Self {
        let mut out = Self::zero(self.field);
        for (ea, ca) in &self.terms {
            for (eb, cb) in &rhs.terms {
                let mut e = [0u8; N];
                for i in 0..N {
                    e[i] = ea[i] + eb[i];
                }
                out.add_term(e, ca * cb);
            }
        }
        out
    }

    pub fn pow(&self, k: u32) -> Self {
        let mut acc = Self::constant(self.field.one());
        for _ in 0..k {
            acc = acc.mul(self);
        }
        acc
    }

    /// Rewrites each monomial through `f`; `None` sends the monomial to zero.
    pub fn map_monomials(&self, f: impl Fn(Exponents<N>) -> Option<Exponents<N>>) -> Self {
        let mut out = Self::zero(self.field);
        for (e, c) in &self.terms {
            if let Some(e2) = f(*e) {
                out.add_term(e2, c.clone());
            }
        }
        out
    }

    pub fn eval(&self, point: &[Scalar; N]) -> Scalar {
        let mut acc = self.field.zero();
        for (e, c) in &self.terms {
            let mut t = c.clone();
            for i in 0..N {
                if e[i] > 0 {
                    t = t * point[i].pow(e[i] as u32);
                }
            }
            acc = acc + t;
        }
        acc
    }

    /// Simultaneous substitution `x_i -> images[i]`.
    pub fn substitute(&self, images: &[Poly<N>; N]) -> Self {
        let mut out = Self::zero(self.field);
        for (e, c) in &self.terms {
            let mut t = Self::constant(c.clone());
            for i in 0..N {
                if e[i] > 0 {
                    t = t.mul(&images[i].pow(e[i] as u32));
                }
            }
            out = out.add(&t);
        }
        out
    }

    pub fn derivative(&self, var: usize) -> Self {
        let mut out = Self::zero(self.field);
        for (e, c) in &self.terms {
            if e[var] == 0 {
                continue;
            }
            let mut e2 = *e;
            e2[var] -= 1;
            out.add_term(e2, c * &self.field.from_i64(e[var] as i64));
        }
        out
    }

    /// Human-readable rendering, highest monomial (lexicographically) first.
    pub fn render(&self, names: &[&str; N]) -> String {
        if self.terms.is_empty() {
            return "0".to_string();
        }
        let mut out = String::new();
        for (i, (e, c)) in self.terms.iter().rev().enumerate() {
            let mono: Vec<String> = (0..N)
                .filter(|&k| e[k] > 0)
                .map(|k| match e[k] {
                    1 => names[k].to_string(),
                    d => format!("{}^{}", names[k], d),
                })
                .collect();
            let text = c.to_string();
            let (neg, mag) = match text.strip_prefix('-') {
                Some(rest) => (true, rest.to_string()),
                None => (false, text),
            };
            if i == 0 {
                if neg {
                    out.push('-');
                }
            } else {
                out.push_str(if neg { " - " } else { " + " });
            }
            if mono.is_empty() {
                out.push_str(&mag);
            } else {
                if mag != "1" {
                    out.push_str(&mag);
                    out.push('*');
                }
                out.push_str(&mono.join("*"));
            }
        }
        out
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn arithmetic_and_derivative() {
        let f = Field::Rational;
        let x = Poly::<2>::var(f, 0);
        let y = Poly::<2>::var(f, 1);
        let p = x.add(&y).pow(2);
        assert_eq!(p.len(), 3);
        assert_eq!(p.coeff(&[1, 1]), f.from_i64(2));
        assert_eq!(
            p.derivative(0),
            x.scale(&f.from_i64(2)).add(&y.scale(&f.from_i64(2)))
        );
        assert!(p.sub(&p).is_zero());
        assert_eq!(p.eval(&[f.from_i64(1), f.from_i64(2)]), f.from_i64(9));
        assert_eq!(p.render(&["x", "y"]), "x^2 + 2*x*y + y^2");
    }

    #[test]
    fn substitution() {
        let f = Field::Rational;
        let x = Poly::<2>::var(f, 0);
        let y = Poly::<2>::var(f, 1);
        let p = x.mul(&y);
        let q = p.substitute(&[y.clone(), x.add(&y)]);
        assert_eq!(q, y.mul(&x).add(&y.mul(&y)));
    }
}
