//! Dense univariate polynomials over a [`FieldSpec`].

use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use super::field::{Coeff, FieldSpec};
use super::PolyError;

/// A polynomial Σ cᵢxⁱ stored densely with no trailing zeros.
///
/// The zero polynomial has an empty coefficient list and degree `None`
/// (standing in for −∞).
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Poly {
    field: FieldSpec,
    c: Vec<Coeff>,
}

/// Result of integrating a polynomial.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Antiderivative {
    /// `g` with `g' = f` and zero constant term.
    Integral(Poly),
    /// In characteristic p the Frobenius component of degree p−1 cannot be
    /// integrated; `obstruction` is the polynomial `c ∈ F[x^p]` such that
    /// `f − c·x^{p−1}` is a derivative.
    NotIntegrable { obstruction: Poly },
}

impl Poly {
    pub fn zero(field: FieldSpec) -> Self {
        Poly { field, c: Vec::new() }
    }

    pub fn one(field: FieldSpec) -> Self {
        Self::constant(field.one())
    }

    pub fn constant(c: Coeff) -> Self {
        let field = c.field();
        Self::from_coeffs(field, vec![c])
    }

    pub fn from_int(field: FieldSpec, n: i64) -> Self {
        Self::constant(field.from_i64(n))
    }

    /// The polynomial `x`.
    pub fn x(field: FieldSpec) -> Self {
        Self::monomial(field.one(), 1)
    }

    /// `c·x^k`.
    pub fn monomial(c: Coeff, k: usize) -> Self {
        let field = c.field();
        let mut v = vec![field.zero(); k];
        v.push(c);
        Self::from_coeffs(field, v)
    }

    pub fn from_coeffs(field: FieldSpec, c: Vec<Coeff>) -> Self {
        debug_assert!(c.iter().all(|a| a.field() == field));
        let mut p = Poly { field, c };
        p.trim();
        p
    }

    /// Coefficients given as integers, lowest degree first.
    pub fn from_ints(field: FieldSpec, c: &[i64]) -> Self {
        Self::from_coeffs(field, c.iter().map(|&n| field.from_i64(n)).collect())
    }

    fn trim(&mut self) {
        while self.c.last().is_some_and(Coeff::is_zero) {
            self.c.pop();
        }
    }

    pub fn field(&self) -> FieldSpec {
        self.field
    }

    /// Degree, `None` for the zero polynomial.
    pub fn degree(&self) -> Option<usize> {
        self.c.len().checked_sub(1)
    }

    /// Number of stored coefficients (degree + 1, or 0 for the zero polynomial).
    pub fn len(&self) -> usize {
        self.c.len()
    }

    pub fn is_zero(&self) -> bool {
        self.c.is_empty()
    }

    pub fn is_empty(&self) -> bool {
        self.c.is_empty()
    }

    pub fn is_one(&self) -> bool {
        self.c.len() == 1 && self.c[0].is_one()
    }

    /// True for constants, including zero.
    pub fn is_constant(&self) -> bool {
        self.c.len() <= 1
    }

    pub fn coeffs(&self) -> &[Coeff] {
        &self.c
    }

    pub fn coeff(&self, k: usize) -> Coeff {
        self.c.get(k).cloned().unwrap_or_else(|| self.field.zero())
    }

    pub fn leading_coeff(&self) -> Option<&Coeff> {
        self.c.last()
    }

    /// Number of nonzero coefficients.
    pub fn term_count(&self) -> usize {
        self.c.iter().filter(|a| !a.is_zero()).count()
    }

    pub fn monic(&self) -> Poly {
        match self.c.last() {
            None => self.clone(),
            Some(lc) => self.scale(&lc.inv().expect("nonzero leading coefficient")),
        }
    }

    pub fn is_monic(&self) -> bool {
        self.c.last().is_some_and(Coeff::is_one)
    }

    pub fn scale(&self, s: &Coeff) -> Poly {
        Poly::from_coeffs(self.field, self.c.iter().map(|a| a * s).collect())
    }

    /// Multiply by `x^k`.
    pub fn shift(&self, k: usize) -> Poly {
        if self.is_zero() {
            return self.clone();
        }
        let mut v = vec![self.field.zero(); k];
        v.extend(self.c.iter().cloned());
        Poly {
            field: self.field,
            c: v,
        }
    }

    /// Truncate to the terms of degree `< n`.
    pub fn truncate(&self, n: usize) -> Poly {
        Poly::from_coeffs(self.field, self.c.iter().take(n).cloned().collect())
    }

    fn check_field(&self, other: &Poly) -> Result<(), PolyError> {
        if self.field == other.field {
            Ok(())
        } else {
            Err(PolyError::FieldMismatch(self.field, other.field))
        }
    }

    pub fn try_add(&self, other: &Poly) -> Result<Poly, PolyError> {
        self.check_field(other)?;
        let n = self.c.len().max(other.c.len());
        let v = (0..n).map(|i| &self.coeff(i) + &other.coeff(i)).collect();
        Ok(Poly::from_coeffs(self.field, v))
    }

    pub fn try_mul(&self, other: &Poly) -> Result<Poly, PolyError> {
        self.check_field(other)?;
        if self.is_zero() || other.is_zero() {
            return Ok(Poly::zero(self.field));
        }
        let mut v = vec![self.field.zero(); self.c.len() + other.c.len() - 1];
        for (i, a) in self.c.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in other.c.iter().enumerate() {
                v[i + j] = &v[i + j] + &(a * b);
            }
        }
        Ok(Poly::from_coeffs(self.field, v))
    }

    /// Euclidean division: `(q, r)` with `self = q·g + r`, `deg r < deg g`.
    pub fn divmod(&self, g: &Poly) -> Result<(Poly, Poly), PolyError> {
        self.check_field(g)?;
        let dg = g.degree().ok_or(PolyError::DivisionByZero)?;
        let inv = g.c[dg].inv().expect("nonzero leading coefficient");
        let mut r = self.c.clone();
        let Some(df) = self.degree() else {
            return Ok((Poly::zero(self.field), Poly::zero(self.field)));
        };
        if df < dg {
            return Ok((Poly::zero(self.field), self.clone()));
        }
        let mut q = vec![self.field.zero(); df - dg + 1];
        for k in (0..=df - dg).rev() {
            let t = &r[k + dg] * &inv;
            if t.is_zero() {
                continue;
            }
            for (j, b) in g.c.iter().enumerate() {
                r[k + j] = &r[k + j] - &(&t * b);
            }
            q[k] = t;
        }
        r.truncate(dg);
        Ok((Poly::from_coeffs(self.field, q), Poly::from_coeffs(self.field, r)))
    }

    /// Quotient of an exact division; a nonzero remainder is [`PolyError::NotExact`].
    pub fn exact_div(&self, g: &Poly) -> Result<Poly, PolyError> {
        let (q, r) = self.divmod(g)?;
        if r.is_zero() {
            Ok(q)
        } else {
            Err(PolyError::NotExact)
        }
    }

    pub fn rem(&self, g: &Poly) -> Result<Poly, PolyError> {
        Ok(self.divmod(g)?.1)
    }

    /// True when `g` divides `self` (zero is divisible by everything, only zero by zero).
    pub fn is_divisible_by(&self, g: &Poly) -> bool {
        if g.is_zero() {
            return self.is_zero();
        }
        self.rem(g).map(|r| r.is_zero()).unwrap_or(false)
    }

    /// Monic greatest common divisor; `gcd(0, 0)` is an error.
    pub fn gcd_monic(&self, g: &Poly) -> Result<Poly, PolyError> {
        self.check_field(g)?;
        if self.is_zero() && g.is_zero() {
            return Err(PolyError::ZeroGcd);
        }
        let (mut a, mut b) = (self.clone(), g.clone());
        while !b.is_zero() {
            let r = a.rem(&b)?;
            a = b;
            b = r;
        }
        Ok(a.monic())
    }

    /// Extended gcd: `(d, s, t)` with `s·self + t·g = d`, `d` monic.
    pub fn ext_gcd(&self, g: &Poly) -> Result<(Poly, Poly, Poly), PolyError> {
        self.check_field(g)?;
        if self.is_zero() && g.is_zero() {
            return Err(PolyError::ZeroGcd);
        }
        let f = self.field;
        let (mut r0, mut r1) = (self.clone(), g.clone());
        let (mut s0, mut s1) = (Poly::one(f), Poly::zero(f));
        let (mut t0, mut t1) = (Poly::zero(f), Poly::one(f));
        while !r1.is_zero() {
            let (q, r) = r0.divmod(&r1)?;
            r0 = std::mem::replace(&mut r1, r);
            let s = &s0 - &(&q * &s1);
            s0 = std::mem::replace(&mut s1, s);
            let t = &t0 - &(&q * &t1);
            t0 = std::mem::replace(&mut t1, t);
        }
        let inv = r0.c.last().expect("nonzero gcd").inv().expect("unit");
        Ok((r0.scale(&inv), s0.scale(&inv), t0.scale(&inv)))
    }

    /// Inverse of `self` modulo `m`, if it exists.
    pub fn inverse_mod(&self, m: &Poly) -> Result<Option<Poly>, PolyError> {
        let (d, s, _) = self.ext_gcd(m)?;
        if !d.is_one() {
            return Ok(None);
        }
        Ok(Some(s.rem(m)?))
    }

    pub fn derivative(&self) -> Poly {
        let v = self
            .c
            .iter()
            .enumerate()
            .skip(1)
            .map(|(k, a)| a * &self.field.from_u64(k as u64))
            .collect();
        Poly::from_coeffs(self.field, v)
    }

    pub fn nth_derivative(&self, n: usize) -> Poly {
        let mut d = self.clone();
        for _ in 0..n {
            if d.is_zero() {
                break;
            }
            d = d.derivative();
        }
        d
    }

    /// Integrate with constant term 0, reporting the characteristic-p obstruction.
    pub fn antiderivative(&self) -> Antiderivative {
        let f = self.field;
        let mut v = vec![f.zero(); self.c.len() + 1];
        let mut obstruction = vec![f.zero(); self.c.len()];
        let mut blocked = false;
        for (k, a) in self.c.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            match f.from_u64(k as u64 + 1).inv() {
                Some(inv) => v[k + 1] = a * &inv,
                None => {
                    // k ≡ p−1: contributes c·x^{p−1} with c = a·x^{k−(p−1)}
                    let p = f.characteristic() as usize;
                    obstruction[k + 1 - p] = a.clone();
                    blocked = true;
                }
            }
        }
        if blocked {
            Antiderivative::NotIntegrable {
                obstruction: Poly::from_coeffs(f, obstruction),
            }
        } else {
            Antiderivative::Integral(Poly::from_coeffs(f, v))
        }
    }

    /// Integrate the integrable part: returns `(g, c)` with `self = g' + c·x^{p−1}`
    /// (`c = 0` in characteristic 0, `c ∈ F[x^p]`).
    pub fn integrate_split(&self) -> (Poly, Poly) {
        match self.antiderivative() {
            Antiderivative::Integral(g) => (g, Poly::zero(self.field)),
            Antiderivative::NotIntegrable { obstruction } => {
                let p = self.field.characteristic() as usize;
                let rest = self - &obstruction.shift(p - 1);
                match rest.antiderivative() {
                    Antiderivative::Integral(g) => (g, obstruction),
                    Antiderivative::NotIntegrable { .. } => unreachable!("obstruction removed"),
                }
            }
        }
    }

    fn require_p(&self) -> Result<usize, PolyError> {
        self.field.prime().map(|p| p as usize).ok_or(PolyError::RequiresCharP)
    }

    /// Frobenius components `(f₀, …, f_{p−1})` as polynomials in `u = x^p`,
    /// with `f = Σ f_j(x^p)·x^j`.
    pub fn frobenius_split(&self) -> Result<Vec<Poly>, PolyError> {
        let p = self.require_p()?;
        let mut parts = vec![Vec::new(); p];
        for (k, a) in self.c.iter().enumerate() {
            let (q, j) = (k / p, k % p);
            let slot = &mut parts[j];
            if slot.len() <= q {
                slot.resize(q + 1, self.field.zero());
            }
            slot[q] = a.clone();
        }
        Ok(parts.into_iter().map(|v| Poly::from_coeffs(self.field, v)).collect())
    }

    /// Inverse of [`Poly::frobenius_split`].
    pub fn frobenius_join(parts: &[Poly], field: FieldSpec) -> Result<Poly, PolyError> {
        let p = field.prime().ok_or(PolyError::RequiresCharP)? as usize;
        if parts.len() != p {
            return Err(PolyError::ComponentCount {
                expected: p,
                got: parts.len(),
            });
        }
        let mut acc = Poly::zero(field);
        for (j, fj) in parts.iter().enumerate() {
            acc = &acc + &fj.expand_frobenius(p).shift(j);
        }
        Ok(acc)
    }

    /// Substitute `u ↦ x^k` (a polynomial in u viewed in the variable x).
    pub fn expand_frobenius(&self, k: usize) -> Poly {
        if self.is_zero() {
            return self.clone();
        }
        let mut v = vec![self.field.zero(); (self.c.len() - 1) * k + 1];
        for (i, a) in self.c.iter().enumerate() {
            v[i * k] = a.clone();
        }
        Poly::from_coeffs(self.field, v)
    }

    /// Read a polynomial in `u` as the element of `F[x^p]` obtained by `u ↦ x^p`.
    pub fn from_u(&self) -> Result<Poly, PolyError> {
        let p = self.require_p()?;
        Ok(self.expand_frobenius(p))
    }

    /// View an element of `F[x^p]` as a polynomial in `u = x^p`.
    pub fn to_u(&self) -> Result<Poly, PolyError> {
        let p = self.require_p()?;
        self.contract_frobenius(p)
    }

    /// Inverse of [`Poly::expand_frobenius`]; fails unless all exponents are multiples of `k`.
    pub fn contract_frobenius(&self, k: usize) -> Result<Poly, PolyError> {
        let mut v = Vec::new();
        for (i, a) in self.c.iter().enumerate() {
            if i % k == 0 {
                v.push(a.clone());
            } else if !a.is_zero() {
                return Err(PolyError::NotInFrobeniusSubring);
            }
        }
        Ok(Poly::from_coeffs(self.field, v))
    }

    /// Membership in `F[x^p]`; in characteristic 0 this tests for constants.
    pub fn in_frobenius_subring(&self) -> bool {
        match self.field.prime() {
            Some(p) => self.contract_frobenius(p as usize).is_ok(),
            None => self.is_constant(),
        }
    }

    /// The map `∂_p(Σ r_i(x^p)x^i) = Σ r_i'(x^p) x^i` (differentiation in `u = x^p`).
    pub fn partial_p(&self) -> Result<Poly, PolyError> {
        let p = self.require_p()?;
        let v = (0..self.c.len().saturating_sub(p))
            .map(|k| {
                let j = (k + p) / p;
                &self.c[k + p] * &self.field.from_u64(j as u64)
            })
            .collect();
        Ok(Poly::from_coeffs(self.field, v))
    }

    pub fn pow(&self, mut e: usize) -> Poly {
        let mut base = self.clone();
        let mut acc = Poly::one(self.field);
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

    pub fn eval(&self, a: &Coeff) -> Coeff {
        self.c.iter().rev().fold(self.field.zero(), |acc, c| &(&acc * a) + c)
    }

    /// `self(g(x))`.
    pub fn compose(&self, g: &Poly) -> Poly {
        self.c.iter().rev().fold(Poly::zero(self.field), |acc, c| {
            &(&acc * g) + &Poly::constant(c.clone())
        })
    }

    /// Squarefree decomposition `self = lc · ∏ s_j^j` with pairwise coprime,
    /// squarefree, monic `s_j`; returns the pairs `(s_j, j)` with `s_j ≠ 1`.
    /// Works over ℚ and over 𝔽_p (where p-th roots are taken via `x^p ↦ x`).
    pub fn squarefree_decomposition(&self) -> Result<Vec<(Poly, usize)>, PolyError> {
        if self.is_zero() {
            return Err(PolyError::ZeroGcd);
        }
        let mut out = Vec::new();
        sff(&self.monic(), 1, &mut out)?;
        out.sort_by_key(|(_, m)| *m);
        // merge equal multiplicities (can arise from the p-th root recursion)
        let mut merged: Vec<(Poly, usize)> = Vec::new();
        for (f, m) in out {
            match merged.last_mut() {
                Some((g, k)) if *k == m => *g = &*g * &f,
                _ => merged.push((f, m)),
            }
        }
        Ok(merged)
    }
}

fn sff(f: &Poly, scale: usize, out: &mut Vec<(Poly, usize)>) -> Result<(), PolyError> {
    if f.is_constant() {
        return Ok(());
    }
    let g = f.derivative();
    if g.is_zero() {
        // f ∈ F[x^p]; over a prime field f = (f^{1/p})^p with coefficients unchanged
        let p = f.field().characteristic() as usize;
        let root = f.contract_frobenius(p)?;
        return sff(&root, scale * p, out);
    }
    let mut c = f.gcd_monic(&g)?;
    let mut w = f.exact_div(&c)?;
    let mut i = 1;
    while !w.is_one() {
        let y = w.gcd_monic(&c)?;
        let fac = w.exact_div(&y)?;
        if !fac.is_one() {
            out.push((fac.monic(), i * scale));
        }
        i += 1;
        w = y;
        c = c.exact_div(&w)?;
    }
    if !c.is_one() {
        let p = f.field().characteristic() as usize;
        let root = c.contract_frobenius(p)?;
        sff(&root, scale * p, out)?;
    }
    Ok(())
}

impl Add<&Poly> for &Poly {
    type Output = Poly;
    fn add(self, rhs: &Poly) -> Poly {
        self.try_add(rhs).expect("field mismatch")
    }
}

impl Sub<&Poly> for &Poly {
    type Output = Poly;
    fn sub(self, rhs: &Poly) -> Poly {
        self.try_add(&-rhs).expect("field mismatch")
    }
}

impl Mul<&Poly> for &Poly {
    type Output = Poly;
    fn mul(self, rhs: &Poly) -> Poly {
        self.try_mul(rhs).expect("field mismatch")
    }
}

impl Neg for &Poly {
    type Output = Poly;
    fn neg(self) -> Poly {
        Poly::from_coeffs(self.field, self.c.iter().map(|a| -a).collect())
    }
}

macro_rules! forward_owned {
    ($tr:ident, $m:ident) => {
        impl $tr<Poly> for Poly {
            type Output = Poly;
            fn $m(self, rhs: Poly) -> Poly {
                (&self).$m(&rhs)
            }
        }
        impl $tr<&Poly> for Poly {
            type Output = Poly;
            fn $m(self, rhs: &Poly) -> Poly {
                (&self).$m(rhs)
            }
        }
        impl $tr<Poly> for &Poly {
            type Output = Poly;
            fn $m(self, rhs: Poly) -> Poly {
                self.$m(&rhs)
            }
        }
    };
}
forward_owned!(Add, add);
forward_owned!(Sub, sub);
forward_owned!(Mul, mul);

impl Neg for Poly {
    type Output = Poly;
    fn neg(self) -> Poly {
        -&self
    }
}

/// Format one monomial `c·x^k`, sign included.
pub(crate) fn fmt_monomial(c: &Coeff, k: usize, var: &str) -> String {
    let xpart = match k {
        0 => String::new(),
        1 => var.to_string(),
        _ => format!("{var}^{k}"),
    };
    if k == 0 {
        return c.to_string();
    }
    if c.is_one() {
        xpart
    } else if (-c).is_one() {
        format!("-{xpart}")
    } else {
        format!("{c}*{xpart}")
    }
}

/// Join signed term strings: `a + b - c`.
pub(crate) fn join_terms(terms: &[String]) -> String {
    let mut s = String::new();
    for (i, t) in terms.iter().enumerate() {
        if i == 0 {
            s.push_str(t);
        } else if let Some(rest) = t.strip_prefix('-') {
            s.push_str(" - ");
            s.push_str(rest);
        } else {
            s.push_str(" + ");
            s.push_str(t);
        }
    }
    s
}

impl Poly {
    /// Render with a chosen variable name, terms in increasing degree.
    pub fn to_string_in(&self, var: &str) -> String {
        if self.is_zero() {
            return "0".into();
        }
        let terms: Vec<String> = self
            .c
            .iter()
            .enumerate()
            .filter(|(_, a)| !a.is_zero())
            .map(|(k, a)| fmt_monomial(a, k, var))
            .collect();
        join_terms(&terms)
    }
}

impl fmt::Display for Poly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.to_string_in("x"))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn q() -> FieldSpec {
        FieldSpec::rational()
    }
    fn fp(p: u64) -> FieldSpec {
        FieldSpec::new(p).unwrap()
    }

    #[test]
    fn printing_increasing_degree() {
        let f = Poly::from_ints(q(), &[1, -2, 0, 1]);
        assert_eq!(f.to_string(), "1 - 2*x + x^3");
        assert_eq!(Poly::zero(q()).to_string(), "0");
        assert_eq!(Poly::from_ints(q(), &[0, -1]).to_string(), "-x");
    }

    #[test]
    fn division() {
        let f = Poly::from_ints(q(), &[-1, 0, 1]);
        let g = Poly::from_ints(q(), &[-1, 1]);
        let (qq, r) = f.divmod(&g).unwrap();
        assert_eq!(qq, Poly::from_ints(q(), &[1, 1]));
        assert!(r.is_zero());
        assert_eq!(Poly::from_ints(q(), &[1, 1]).exact_div(&g), Err(PolyError::NotExact));
        assert_eq!(f.divmod(&Poly::zero(q())), Err(PolyError::DivisionByZero));
    }

    #[test]
    fn freshman_dream_f2() {
        let f = Poly::from_ints(fp(2), &[1, 1]);
        assert_eq!(&f * &f, Poly::from_ints(fp(2), &[1, 0, 1]));
    }

    #[test]
    fn gcds() {
        let x2 = Poly::from_ints(q(), &[0, 0, 1]);
        let x3 = Poly::from_ints(q(), &[0, 0, 0, 1]);
        assert_eq!(x2.gcd_monic(&x3).unwrap(), x2);
        let f = Poly::from_ints(fp(3), &[0, -1, 0, 1]);
        let g = Poly::from_ints(fp(3), &[-1, 0, 1]);
        assert_eq!(f.gcd_monic(&g).unwrap(), g);
        assert_eq!(Poly::zero(q()).gcd_monic(&Poly::zero(q())), Err(PolyError::ZeroGcd));
        let h = Poly::from_ints(q(), &[0, 0, 2]);
        assert_eq!(h.gcd_monic(&Poly::zero(q())).unwrap(), x2);
    }

    #[test]
    fn derivative_char_p() {
        let f = Poly::monomial(fp(3).one(), 3);
        assert!(f.derivative().is_zero());
        assert_eq!(
            Poly::monomial(q().one(), 3).derivative(),
            Poly::monomial(q().from_i64(3), 2)
        );
    }

    #[test]
    fn frobenius() {
        let f = Poly::monomial(fp(3).one(), 4);
        let parts = f.frobenius_split().unwrap();
        assert_eq!(parts[1], Poly::x(fp(3)));
        assert!(parts[0].is_zero() && parts[2].is_zero());
        let g = Poly::from_ints(fp(2), &[1, 0, 1, 1]);
        let parts = g.frobenius_split().unwrap();
        assert_eq!(parts[0], Poly::from_ints(fp(2), &[1, 1]));
        assert_eq!(parts[1], Poly::x(fp(2)));
        assert_eq!(Poly::frobenius_join(&parts, fp(2)).unwrap(), g);
        assert_eq!(Poly::x(q()).frobenius_split(), Err(PolyError::RequiresCharP));
    }

    #[test]
    fn partial_p_buckets() {
        let f3 = fp(3);
        assert_eq!(Poly::monomial(f3.one(), 3).partial_p().unwrap(), Poly::one(f3));
        assert!(Poly::monomial(f3.one(), 2).partial_p().unwrap().is_zero());
        let f2 = fp(2);
        assert_eq!(
            Poly::monomial(f2.one(), 6).partial_p().unwrap(),
            Poly::monomial(f2.one(), 4)
        );
    }

    #[test]
    fn integration() {
        assert_eq!(
            Poly::monomial(q().from_i64(3), 2).antiderivative(),
            Antiderivative::Integral(Poly::monomial(q().one(), 3))
        );
        let f3 = fp(3);
        assert_eq!(
            Poly::monomial(f3.one(), 2).antiderivative(),
            Antiderivative::NotIntegrable {
                obstruction: Poly::one(f3)
            }
        );
        assert_eq!(
            Poly::monomial(f3.from_i64(2), 1).antiderivative(),
            Antiderivative::Integral(Poly::monomial(f3.one(), 2))
        );
    }

    #[test]
    fn squarefree() {
        let f3 = fp(3);
        // x^4 (x+1)^2 over F_3
        let x = Poly::x(f3);
        let xp1 = Poly::from_ints(f3, &[1, 1]);
        let h = &x.pow(4) * &xp1.pow(2);
        let d = h.squarefree_decomposition().unwrap();
        assert_eq!(d, vec![(xp1.clone(), 2), (x.clone(), 4)]);
        let x3 = x.pow(3);
        assert_eq!(x3.squarefree_decomposition().unwrap(), vec![(x, 3)]);
    }
}
