//! Polynomials in two commuting variables `t₁, t₂`, used for coordinates on
//! the center `F[t₁, t₂]`.

use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use super::field::{Coeff, FieldSpec};
use super::poly::{fmt_monomial, join_terms, Poly};
use super::PolyError;

/// `Σ_k c_k(t₁)·t₂^k`, stored as the list of `t₁`-polynomials `c_k`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct BiPoly {
    field: FieldSpec,
    c: Vec<Poly>,
}

impl BiPoly {
    pub fn zero(field: FieldSpec) -> Self {
        BiPoly { field, c: Vec::new() }
    }

    pub fn one(field: FieldSpec) -> Self {
        Self::from_t1(Poly::one(field))
    }

    /// A polynomial in `t₁` alone.
    pub fn from_t1(f: Poly) -> Self {
        let field = f.field();
        Self::from_parts(field, vec![f])
    }

    /// `c·t₁^i·t₂^j`.
    pub fn monomial(c: Coeff, i: usize, j: usize) -> Self {
        let field = c.field();
        let mut v = vec![Poly::zero(field); j];
        v.push(Poly::monomial(c, i));
        Self::from_parts(field, v)
    }

    pub fn t1(field: FieldSpec) -> Self {
        Self::monomial(field.one(), 1, 0)
    }

    pub fn t2(field: FieldSpec) -> Self {
        Self::monomial(field.one(), 0, 1)
    }

    /// From the `t₂`-coefficients, lowest power first.
    pub fn from_parts(field: FieldSpec, mut c: Vec<Poly>) -> Self {
        while c.last().is_some_and(Poly::is_zero) {
            c.pop();
        }
        BiPoly { field, c }
    }

    pub fn field(&self) -> FieldSpec {
        self.field
    }

    pub fn is_zero(&self) -> bool {
        self.c.is_empty()
    }

    /// The `t₁`-polynomial multiplying `t₂^k`.
    pub fn t2_coeff(&self, k: usize) -> Poly {
        self.c.get(k).cloned().unwrap_or_else(|| Poly::zero(self.field))
    }

    pub fn parts(&self) -> &[Poly] {
        &self.c
    }

    /// Degree in `t₂`, `None` for zero.
    pub fn t2_degree(&self) -> Option<usize> {
        self.c.len().checked_sub(1)
    }

    pub fn scale(&self, s: &Coeff) -> BiPoly {
        BiPoly::from_parts(self.field, self.c.iter().map(|p| p.scale(s)).collect())
    }

    /// Multiply by a polynomial in `t₁`.
    pub fn mul_t1(&self, f: &Poly) -> BiPoly {
        BiPoly::from_parts(self.field, self.c.iter().map(|p| p * f).collect())
    }

    /// Exact division by a polynomial in `t₁`.
    pub fn exact_div_t1(&self, f: &Poly) -> Result<BiPoly, PolyError> {
        let parts = self.c.iter().map(|p| p.exact_div(f)).collect::<Result<Vec<_>, _>>()?;
        Ok(BiPoly::from_parts(self.field, parts))
    }

    pub fn d_t1(&self) -> BiPoly {
        BiPoly::from_parts(self.field, self.c.iter().map(Poly::derivative).collect())
    }

    pub fn d_t2(&self) -> BiPoly {
        let parts = self
            .c
            .iter()
            .enumerate()
            .skip(1)
            .map(|(k, p)| p.scale(&self.field.from_u64(k as u64)))
            .collect();
        BiPoly::from_parts(self.field, parts)
    }

    pub fn pow(&self, e: usize) -> BiPoly {
        let mut acc = BiPoly::one(self.field);
        for _ in 0..e {
            acc = &acc * self;
        }
        acc
    }
}

impl Add<&BiPoly> for &BiPoly {
    type Output = BiPoly;
    fn add(self, rhs: &BiPoly) -> BiPoly {
        let n = self.c.len().max(rhs.c.len());
        let parts = (0..n).map(|k| &self.t2_coeff(k) + &rhs.t2_coeff(k)).collect();
        BiPoly::from_parts(self.field, parts)
    }
}

impl Neg for &BiPoly {
    type Output = BiPoly;
    fn neg(self) -> BiPoly {
        BiPoly::from_parts(self.field, self.c.iter().map(|p| -p).collect())
    }
}

impl Sub<&BiPoly> for &BiPoly {
    type Output = BiPoly;
    fn sub(self, rhs: &BiPoly) -> BiPoly {
        self + &-rhs
    }
}

impl Mul<&BiPoly> for &BiPoly {
    type Output = BiPoly;
    fn mul(self, rhs: &BiPoly) -> BiPoly {
        if self.is_zero() || rhs.is_zero() {
            return BiPoly::zero(self.field);
        }
        let mut parts = vec![Poly::zero(self.field); self.c.len() + rhs.c.len() - 1];
        for (i, a) in self.c.iter().enumerate() {
            for (j, b) in rhs.c.iter().enumerate() {
                parts[i + j] = &parts[i + j] + &(a * b);
            }
        }
        BiPoly::from_parts(self.field, parts)
    }
}

impl fmt::Display for BiPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return f.write_str("0");
        }
        let mut terms = Vec::new();
        for (k, p) in self.c.iter().enumerate() {
            for (i, a) in p.coeffs().iter().enumerate() {
                if a.is_zero() {
                    continue;
                }
                let t2 = match k {
                    0 => String::new(),
                    1 => "t2".to_string(),
                    _ => format!("t2^{k}"),
                };
                let s = if k == 0 {
                    fmt_monomial(a, i, "t1")
                } else if i == 0 {
                    if a.is_one() {
                        t2
                    } else if (-a).is_one() {
                        format!("-{t2}")
                    } else {
                        format!("{a}*{t2}")
                    }
                } else {
                    format!("{}*{t2}", fmt_monomial(a, i, "t1"))
                };
                terms.push(s);
            }
        }
        f.write_str(&join_terms(&terms))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn arithmetic_and_display() {
        let f = FieldSpec::new(3).unwrap();
        let a = &BiPoly::t1(f) + &BiPoly::t2(f).pow(2);
        assert_eq!(a.to_string(), "t1 + t2^2");
        let b = &a * &BiPoly::t2(f);
        assert_eq!(b.to_string(), "t1*t2 + t2^3");
        assert_eq!(b.d_t2().to_string(), "t1");
        assert_eq!(BiPoly::zero(f).to_string(), "0");
    }
}
