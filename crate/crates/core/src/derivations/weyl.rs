//! Derivations of the Weyl algebra itself, the pair `E_x`, `E_y`, and the
//! decomposition of an arbitrary derivation of `A₁`.

use crate::coeffpoly::{FieldSpec, Poly};
use crate::weylcore::WeylElement;

use super::{integrate, internal, poly_image, DerivationError};

/// A derivation of `A₁`, given by `D(x)` and `D(y)`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct WeylDerivation {
    pub dx: WeylElement,
    pub dy: WeylElement,
}

impl WeylDerivation {
    pub fn new(dx: WeylElement, dy: WeylElement) -> Self {
        WeylDerivation { dx, dy }
    }

    /// `ad_a` on `A₁`.
    pub fn ad(a: &WeylElement) -> Self {
        let f = a.field();
        WeylDerivation {
            dx: a.commutator(&WeylElement::x(f)),
            dy: a.commutator(&WeylElement::y(f)),
        }
    }

    /// `[D(y), x] + [y, D(x)]`, which vanishes exactly for derivations.
    pub fn criterion_defect(&self) -> WeylElement {
        let f = self.dx.field();
        &self.dy.commutator(&WeylElement::x(f)) + &WeylElement::y(f).commutator(&self.dx)
    }

    pub fn apply(&self, a: &WeylElement) -> WeylElement {
        let field = a.field();
        let y = WeylElement::y(field);
        let mut out = WeylElement::zero(field);
        let mut dyi = WeylElement::zero(field);
        let mut prev = 0usize;
        for (i, r) in a.terms() {
            // advance D(y^k) up to k = i
            while prev < i {
                dyi = &(&dyi * &y) + &(&WeylElement::y(field).pow(prev) * &self.dy);
                prev += 1;
            }
            out = &out + &poly_image(&self.dx, r).mul_y_right(i);
            if i > 0 {
                out = &out + &dyi.mul_poly_left(r);
            }
        }
        out
    }

    pub fn bracket(&self, other: &WeylDerivation) -> WeylDerivation {
        WeylDerivation {
            dx: &self.apply(&other.dx) - &other.apply(&self.dx),
            dy: &self.apply(&other.dy) - &other.apply(&self.dy),
        }
    }

    pub fn scale_by_central(&self, z: &WeylElement) -> WeylDerivation {
        WeylDerivation {
            dx: z * &self.dx,
            dy: z * &self.dy,
        }
    }
}

impl std::ops::Add<&WeylDerivation> for &WeylDerivation {
    type Output = WeylDerivation;
    fn add(self, rhs: &WeylDerivation) -> WeylDerivation {
        WeylDerivation::new(&self.dx + &rhs.dx, &self.dy + &rhs.dy)
    }
}

impl std::ops::Sub<&WeylDerivation> for &WeylDerivation {
    type Output = WeylDerivation;
    fn sub(self, rhs: &WeylDerivation) -> WeylDerivation {
        WeylDerivation::new(&self.dx - &rhs.dx, &self.dy - &rhs.dy)
    }
}

fn prime(field: FieldSpec) -> Result<usize, DerivationError> {
    field.prime().map(|p| p as usize).ok_or(DerivationError::RequiresCharP)
}

/// `E_x`: `x ↦ y^{p−1}`, `y ↦ 0`.
pub fn e_x(field: FieldSpec) -> Result<WeylDerivation, DerivationError> {
    let p = prime(field)?;
    Ok(WeylDerivation::new(
        WeylElement::y(field).pow(p - 1),
        WeylElement::zero(field),
    ))
}

/// `E_y`: `x ↦ 0`, `y ↦ x^{p−1}`.
pub fn e_y(field: FieldSpec) -> Result<WeylDerivation, DerivationError> {
    let p = prime(field)?;
    Ok(WeylDerivation::new(
        WeylElement::zero(field),
        WeylElement::from_poly(Poly::x(field).pow(p - 1)),
    ))
}

/// `(−1)^{k−1}/k` in `F_p`.
fn alt_inv(field: FieldSpec, k: usize) -> Result<crate::coeffpoly::Coeff, DerivationError> {
    let c = field
        .from_u64(k as u64)
        .inv()
        .ok_or_else(|| internal("index divisible by p"))?;
    Ok(if k.is_multiple_of(2) { -c } else { c })
}

/// `E_x(g) = Σ_{k=1}^{p−1} ((−1)^{k−1}/k)·g^{(k)} y^{p−k} − ∂_p(g)` for `g ∈ F[x]`.
pub fn e_x_poly_closed_form(g: &Poly) -> Result<WeylElement, DerivationError> {
    let field = g.field();
    let p = prime(field)?;
    let mut out = WeylElement::from_poly(-&g.partial_p()?);
    for k in 1..p {
        let c = alt_inv(field, k)?;
        out = &out + &WeylElement::monomial(g.nth_derivative(k).scale(&c), p - k);
    }
    Ok(out)
}

/// `E_x(ŷ) = h′y^p + Σ_{k=1}^{p−2} ((−1)^{k−1}/((k+1)k))·h^{(k+1)} y^{p−k} − ∂_p(h)·y − ∂_p(h′)`.
pub fn e_x_yhat_closed_form(h: &Poly) -> Result<WeylElement, DerivationError> {
    let field = h.field();
    let p = prime(field)?;
    let hp = h.derivative();
    let mut out = WeylElement::monomial(hp.clone(), p);
    for k in 1..p.saturating_sub(1) {
        let c = alt_inv(field, k)? * field.from_u64(k as u64 + 1).inv().expect("k+1 < p");
        out = &out + &WeylElement::monomial(h.nth_derivative(k + 1).scale(&c), p - k);
    }
    out = &out - &WeylElement::monomial(h.partial_p()?, 1);
    out = &out - &WeylElement::from_poly(hp.partial_p()?);
    Ok(out)
}

/// `D = ad_u + ad_w` with `w ∈ F[x]` (characteristic 0).
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DecompA1CharZero {
    pub u: WeylElement,
    pub w: Poly,
}

impl DecompA1CharZero {
    /// The single element `u + w` with `D = ad_{u+w}`.
    pub fn element(&self) -> WeylElement {
        &self.u + &WeylElement::from_poly(self.w.clone())
    }
}

/// `u = Σ d_i/(i+1)·y^{i+1}` where `D(x) = Σ d_i y^i`; skips the terms with `i ≡ −1 (mod p)`
/// (which must then be handled separately).
fn anti_integrate_x(dx: &WeylElement) -> (WeylElement, WeylElement) {
    let field = dx.field();
    let mut b = WeylElement::zero(field);
    let mut rest = WeylElement::zero(field);
    for (i, d) in dx.terms() {
        match field.from_u64(i as u64 + 1).inv() {
            Some(inv) => b = &b + &WeylElement::monomial(d.scale(&inv), i + 1),
            None => rest = &rest + &WeylElement::monomial(d.clone(), i),
        }
    }
    (b, rest)
}

pub(crate) fn anti_integrate_x_pub(dx: &WeylElement) -> (WeylElement, WeylElement) {
    anti_integrate_x(dx)
}

pub fn decompose_a1_char0(d: &WeylDerivation) -> Result<DecompA1CharZero, DerivationError> {
    let field = d.dx.field();
    if !field.is_char_zero() {
        return Err(DerivationError::RequiresCharZero);
    }
    let defect = d.criterion_defect();
    if !defect.is_zero() {
        return Err(DerivationError::Criterion { defect });
    }
    let (u, _) = anti_integrate_x(&d.dx);
    let e = (&d.dy - &u.commutator(&WeylElement::y(field)))
        .as_poly()
        .ok_or_else(|| internal("(D − ad_u)(y) is not a polynomial"))?;
    // ad_w(y) = −w′
    let w = -&integrate(&e)?;
    Ok(DecompA1CharZero { u, w })
}

/// `D = w·E_x + z·E_y + ad_b + ad_c` with `w, z` central (characteristic p).
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DecompA1CharP {
    pub w: WeylElement,
    pub z: WeylElement,
    pub b: WeylElement,
    pub c: WeylElement,
}

impl DecompA1CharP {
    pub fn reassemble(&self) -> Result<WeylDerivation, DerivationError> {
        let f = self.b.field();
        let ex = e_x(f)?.scale_by_central(&self.w);
        let ey = e_y(f)?.scale_by_central(&self.z);
        Ok(&(&(&ex + &ey) + &WeylDerivation::ad(&self.b)) + &WeylDerivation::ad(&self.c))
    }
}

pub fn decompose_a1_charp(d: &WeylDerivation) -> Result<DecompA1CharP, DerivationError> {
    let field = d.dx.field();
    let p = prime(field)?;
    let defect = d.criterion_defect();
    if !defect.is_zero() {
        return Err(DerivationError::Criterion { defect });
    }
    let (b, rest) = anti_integrate_x(&d.dx);
    // w·y^{p−1} = rest
    let mut w = WeylElement::zero(field);
    for (i, di) in rest.terms() {
        if !di.in_frobenius_subring() {
            return Err(internal("coefficient of y^{-1 mod p} not in F[x^p]"));
        }
        w = &w + &WeylElement::monomial(di.clone(), i + 1 - p);
    }
    // E_x(y) = 0, so the remainder on y is D(y) − [b, y]
    let fy = &d.dy - &b.commutator(&WeylElement::y(field));
    let mut z = WeylElement::zero(field);
    let mut c = WeylElement::zero(field);
    for (j, e) in fy.terms() {
        if j % p != 0 {
            return Err(internal("remainder on y does not commute with x"));
        }
        let (g, cj) = e.integrate_split();
        z = &z + &WeylElement::monomial(cj, j);
        c = &c - &WeylElement::monomial(g, j);
    }
    Ok(DecompA1CharP { w, z, b, c })
}
