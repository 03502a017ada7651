//! Normal-form arithmetic in the Weyl algebra `A₁ = F⟨x, y⟩/(yx − xy − 1)`.
//!
//! Elements are stored as `Σ r_i(x)·y^i` with every x-factor to the left.
//! Products use the reordering rule `y^n·f = Σ_j C(n,j) f^{(j)} y^{n−j}`.

use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_bigint::BigInt;
use thiserror::Error;

use crate::coeffpoly::{parse_expr, Coeff, FieldSpec, ParseError, ParseTarget, Poly, PolyError};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum WeylError {
    #[error("operation requires positive characteristic")]
    RequiresCharP,
    #[error("field mismatch: {0} vs {1}")]
    FieldMismatch(FieldSpec, FieldSpec),
    #[error("right division by a polynomial is not exact (at y-degree {0})")]
    NotRightDivisible(usize),
    #[error(transparent)]
    Poly(#[from] PolyError),
}

/// An element `Σ r_i(x)·y^i` of `A₁` in normal form; zero coefficients are never stored.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct WeylElement {
    field: FieldSpec,
    terms: BTreeMap<usize, Poly>,
}

impl WeylElement {
    pub fn zero(field: FieldSpec) -> Self {
        WeylElement {
            field,
            terms: BTreeMap::new(),
        }
    }

    pub fn one(field: FieldSpec) -> Self {
        Self::from_poly(Poly::one(field))
    }

    pub fn scalar(c: Coeff) -> Self {
        Self::from_poly(Poly::constant(c))
    }

    pub fn from_poly(f: Poly) -> Self {
        Self::monomial(f, 0)
    }

    /// `f(x)·y^i`.
    pub fn monomial(f: Poly, i: usize) -> Self {
        let mut w = Self::zero(f.field());
        if !f.is_zero() {
            w.terms.insert(i, f);
        }
        w
    }

    pub fn x(field: FieldSpec) -> Self {
        Self::from_poly(Poly::x(field))
    }

    pub fn y(field: FieldSpec) -> Self {
        Self::monomial(Poly::one(field), 1)
    }

    /// Build from `(y-degree, coefficient)` pairs; repeated degrees are summed.
    pub fn from_terms(field: FieldSpec, it: impl IntoIterator<Item = (usize, Poly)>) -> Self {
        let mut w = Self::zero(field);
        for (i, f) in it {
            w.add_term(i, &f);
        }
        w
    }

    fn add_term(&mut self, i: usize, f: &Poly) {
        if f.is_zero() {
            return;
        }
        let slot = self.terms.entry(i).or_insert_with(|| Poly::zero(self.field));
        *slot = &*slot + f;
        if slot.is_zero() {
            self.terms.remove(&i);
        }
    }

    pub fn field(&self) -> FieldSpec {
        self.field
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    /// Coefficient of `y^i`.
    pub fn coeff(&self, i: usize) -> Poly {
        self.terms.get(&i).cloned().unwrap_or_else(|| Poly::zero(self.field))
    }

    /// Nonzero terms in increasing y-degree.
    pub fn terms(&self) -> impl Iterator<Item = (usize, &Poly)> {
        self.terms.iter().map(|(i, f)| (*i, f))
    }

    /// Highest y-degree, `None` for zero.
    pub fn y_degree(&self) -> Option<usize> {
        self.terms.keys().next_back().copied()
    }

    /// Highest x-degree among the coefficients.
    pub fn x_degree(&self) -> Option<usize> {
        self.terms.values().filter_map(Poly::degree).max()
    }

    /// The degree-0 part as a polynomial, if the element lies in `F[x]`.
    pub fn as_poly(&self) -> Option<Poly> {
        match self.y_degree() {
            None => Some(Poly::zero(self.field)),
            Some(0) => Some(self.coeff(0)),
            _ => None,
        }
    }

    pub fn scale(&self, c: &Coeff) -> Self {
        Self::from_terms(self.field, self.terms().map(|(i, f)| (i, f.scale(c))))
    }

    /// `f·self` (left multiplication by a polynomial needs no reordering).
    pub fn mul_poly_left(&self, f: &Poly) -> Self {
        Self::from_terms(self.field, self.terms().map(|(i, g)| (i, f * g)))
    }

    /// `self·f`.
    pub fn mul_poly_right(&self, f: &Poly) -> Self {
        self * &Self::from_poly(f.clone())
    }

    /// `self·y^k`.
    pub fn mul_y_right(&self, k: usize) -> Self {
        Self::from_terms(self.field, self.terms().map(|(i, g)| (i + k, g.clone())))
    }

    /// Keep only the terms whose y-degree satisfies `keep`.
    pub fn filter_degrees(&self, keep: impl Fn(usize) -> bool) -> Self {
        Self::from_terms(
            self.field,
            self.terms().filter(|(i, _)| keep(*i)).map(|(i, f)| (i, f.clone())),
        )
    }

    pub fn try_mul(&self, other: &Self) -> Result<Self, WeylError> {
        if self.field != other.field {
            return Err(WeylError::FieldMismatch(self.field, other.field));
        }
        let mut out = Self::zero(self.field);
        let Some(maxi) = self.y_degree() else {
            return Ok(out);
        };
        for (j, b) in other.terms() {
            // derivatives b^{(k)} scaled later by binomials
            let mut ders = vec![b.clone()];
            for k in 1..=maxi {
                let d = ders[k - 1].derivative();
                if d.is_zero() {
                    break;
                }
                ders.push(d);
            }
            for (i, a) in self.terms() {
                for (k, bk) in ders.iter().enumerate().take(i + 1) {
                    let c = self.field.binomial(i, k);
                    if c.is_zero() {
                        continue;
                    }
                    out.add_term(i - k + j, &(a * bk).scale(&c));
                }
            }
        }
        Ok(out)
    }

    /// The commutator `[a, b] = ab − ba`.
    pub fn commutator(&self, other: &Self) -> Self {
        &(self * other) - &(other * self)
    }

    pub fn pow(&self, e: usize) -> Self {
        let mut acc = Self::one(self.field);
        let mut base = self.clone();
        let mut e = e;
        while e > 0 {
            if e & 1 == 1 {
                acc = &acc * &base;
            }
            e >>= 1;
            if e > 0 {
                base = &base * &base;
            }
        }
        acc
    }

    /// Image under the anti-automorphism `φ` with `φ(x) = y`, `φ(y) = x`.
    /// Since `φ(r(x)y^i) = x^i·r(y)`, the result is already normal-ordered.
    pub fn apply_phi(&self) -> Self {
        let mut out = Self::zero(self.field);
        for (i, r) in self.terms() {
            for (k, c) in r.coeffs().iter().enumerate() {
                if !c.is_zero() {
                    out.add_term(k, &Poly::monomial(c.clone(), i));
                }
            }
        }
        out
    }

    /// Membership in the center of `A₁`: the scalars in characteristic 0,
    /// `F[x^p, y^p]` in characteristic p.
    pub fn is_central_in_a1(&self) -> bool {
        match self.field.prime() {
            None => self.as_poly().is_some_and(|f| f.is_constant()),
            Some(p) => self
                .terms()
                .all(|(i, r)| i % p as usize == 0 && r.in_frobenius_subring()),
        }
    }

    /// Exact right division by a polynomial: the `b` with `b·f = self`.
    pub fn right_div_poly(&self, f: &Poly) -> Result<Self, WeylError> {
        if f.is_zero() {
            return Err(PolyError::DivisionByZero.into());
        }
        let fw = Self::from_poly(f.clone());
        let mut rest = self.clone();
        let mut out = Self::zero(self.field);
        while let Some(n) = rest.y_degree() {
            let bn = rest
                .coeff(n)
                .exact_div(f)
                .map_err(|_| WeylError::NotRightDivisible(n))?;
            let t = Self::monomial(bn, n);
            rest = &rest - &(&t * &fw);
            out = &out + &t;
        }
        Ok(out)
    }

    /// Parse the text grammar in `x` and `y`, e.g. `(x^2+1)*y^3 + 2*x*y + 5`.
    pub fn parse(s: &str, field: FieldSpec) -> Result<Self, ParseError> {
        parse_expr(s, field)
    }
}

/// `[y^n, f]`-style reordering via the closed formula: normal form of `y^n·f`.
pub fn reorder_y_power_poly(n: usize, f: &Poly) -> WeylElement {
    let field = f.field();
    WeylElement::from_terms(
        field,
        (0..=n).map(|j| (n - j, f.nth_derivative(j).scale(&field.binomial(n, j)))),
    )
}

/// `ϖ = Σ_{n=1}^{p−1} ((p−1−n)!/n)·x^n y^n`, the element with `[E_x, E_y] = ad_ϖ`.
pub fn varpi_element(field: FieldSpec) -> Result<WeylElement, WeylError> {
    let p = field.prime().ok_or(WeylError::RequiresCharP)? as usize;
    let mut out = WeylElement::zero(field);
    for n in 1..p {
        let c = field.factorial(p - 1 - n) * field.from_u64(n as u64).inv().expect("n < p");
        out.add_term(n, &Poly::monomial(c, n));
    }
    Ok(out)
}

impl Add<&WeylElement> for &WeylElement {
    type Output = WeylElement;
    fn add(self, rhs: &WeylElement) -> WeylElement {
        assert_eq!(self.field, rhs.field, "field mismatch");
        let mut out = self.clone();
        for (i, f) in rhs.terms() {
            out.add_term(i, f);
        }
        out
    }
}

impl Neg for &WeylElement {
    type Output = WeylElement;
    fn neg(self) -> WeylElement {
        WeylElement::from_terms(self.field, self.terms().map(|(i, f)| (i, -f)))
    }
}

impl Sub<&WeylElement> for &WeylElement {
    type Output = WeylElement;
    fn sub(self, rhs: &WeylElement) -> WeylElement {
        self + &-rhs
    }
}

impl Mul<&WeylElement> for &WeylElement {
    type Output = WeylElement;
    fn mul(self, rhs: &WeylElement) -> WeylElement {
        self.try_mul(rhs).expect("field mismatch")
    }
}

macro_rules! forward_owned {
    ($tr:ident, $m:ident) => {
        impl $tr<WeylElement> for WeylElement {
            type Output = WeylElement;
            fn $m(self, rhs: WeylElement) -> WeylElement {
                (&self).$m(&rhs)
            }
        }
        impl $tr<&WeylElement> for WeylElement {
            type Output = WeylElement;
            fn $m(self, rhs: &WeylElement) -> WeylElement {
                (&self).$m(rhs)
            }
        }
        impl $tr<WeylElement> for &WeylElement {
            type Output = WeylElement;
            fn $m(self, rhs: WeylElement) -> WeylElement {
                self.$m(&rhs)
            }
        }
    };
}
forward_owned!(Add, add);
forward_owned!(Sub, sub);
forward_owned!(Mul, mul);

impl Neg for WeylElement {
    type Output = WeylElement;
    fn neg(self) -> WeylElement {
        -&self
    }
}

impl ParseTarget for WeylElement {
    fn field(&self) -> FieldSpec {
        self.field
    }
    fn from_integer(field: FieldSpec, n: &BigInt) -> Self {
        Self::scalar(field.from_bigint(n))
    }
    fn variable(field: FieldSpec, name: char) -> Option<Self> {
        match name {
            'x' => Some(Self::x(field)),
            'y' => Some(Self::y(field)),
            _ => None,
        }
    }
    fn t_add(&self, other: &Self) -> Self {
        self + other
    }
    fn t_sub(&self, other: &Self) -> Self {
        self - other
    }
    fn t_mul(&self, other: &Self) -> Self {
        self * other
    }
    fn t_neg(&self) -> Self {
        -self
    }
    fn t_pow(&self, e: usize) -> Self {
        WeylElement::pow(self, e)
    }
    fn div_const(&self, other: &Self) -> Option<Self> {
        let c = other.as_poly()?;
        if c.degree() != Some(0) {
            return None;
        }
        Some(self.scale(&c.coeff(0).inv()?))
    }
}

impl fmt::Display for WeylElement {
    /// Terms in increasing y-degree, coefficients in increasing x-degree;
    /// multi-term coefficients are parenthesized.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return f.write_str("0");
        }
        let mut parts = Vec::new();
        for (i, r) in self.terms() {
            let ypart = if i == 1 { "y".to_string() } else { format!("y^{i}") };
            let s = if i == 0 {
                r.to_string()
            } else if r.term_count() > 1 {
                format!("({r})*{ypart}")
            } else {
                let rs = r.to_string();
                match rs.as_str() {
                    "1" => ypart,
                    "-1" => format!("-{ypart}"),
                    _ => format!("{rs}*{ypart}"),
                }
            };
            parts.push(s);
        }
        // the y^0 part may itself be a sum; later terms join with explicit signs
        let mut s = String::new();
        for (k, t) in parts.iter().enumerate() {
            if k == 0 {
                s.push_str(t);
            } else if let Some(rest) = t.strip_prefix('-') {
                s.push_str(" - ");
                s.push_str(rest);
            } else {
                s.push_str(" + ");
                s.push_str(t);
            }
        }
        f.write_str(&s)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn q() -> FieldSpec {
        FieldSpec::rational()
    }
    fn w(s: &str, f: FieldSpec) -> WeylElement {
        WeylElement::parse(s, f).unwrap()
    }

    #[test]
    fn basic_products() {
        let f = q();
        assert_eq!(w("y", f) * w("x", f), w("x*y + 1", f));
        assert_eq!(w("y^2", f) * w("x^2", f), w("x^2*y^2 + 4*x*y + 2", f));
        assert_eq!(w("y^2", f).commutator(&w("x^2", f)), w("4*x*y + 2", f));
        assert_eq!(w("y", f).commutator(&w("x", f)), WeylElement::one(f));
    }

    #[test]
    fn printing() {
        let f = q();
        let a = w("(x^2+1)*y^3 + 2*x*y + 5", f);
        assert_eq!(a.to_string(), "5 + 2*x*y + (1 + x^2)*y^3");
        assert_eq!(w(&a.to_string(), f), a);
        assert_eq!(w("-y - x^2*y^2 + 1 - x", f).to_string(), "1 - x - y - x^2*y^2");
        assert_eq!(w("1/2*x*y", f).to_string(), "1/2*x*y");
    }

    #[test]
    fn phi() {
        let f = q();
        assert_eq!(w("x", f).apply_phi(), w("y", f));
        assert_eq!(w("x*y", f).apply_phi(), w("x*y", f));
        let a = w("3*x^2*y + x*y^3 - 7", f);
        assert_eq!(a.apply_phi().apply_phi(), a);
    }

    #[test]
    fn varpi_small_primes() {
        let f2 = FieldSpec::new(2).unwrap();
        assert_eq!(varpi_element(f2).unwrap(), w("x*y", f2));
        let f3 = FieldSpec::new(3).unwrap();
        assert_eq!(varpi_element(f3).unwrap(), w("x*y + 2*x^2*y^2", f3));
        let f5 = FieldSpec::new(5).unwrap();
        assert_eq!(varpi_element(f5).unwrap().coeff(1), Poly::x(f5));
        assert!(varpi_element(q()).is_err());
    }

    #[test]
    fn center_test() {
        let f3 = FieldSpec::new(3).unwrap();
        assert!(WeylElement::one(f3).is_central_in_a1());
        assert!(w("x^3*y^3", f3).is_central_in_a1());
        assert!(!w("x*y^3", f3).is_central_in_a1());
        assert!(!w("x", q()).is_central_in_a1());
    }

    #[test]
    fn right_division() {
        let f = q();
        let b = w("x*y^2 + 3*y - x^2", f);
        let g = Poly::parse("x^2 + 1", f).unwrap();
        let a = b.mul_poly_right(&g);
        assert_eq!(a.right_div_poly(&g).unwrap(), b);
        assert!(w("y", f).right_div_poly(&Poly::x(f)).is_err());
    }
}
