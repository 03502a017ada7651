//! Derivations of `A_h` (stored by their values on `x` and `ŷ`) and of `A₁`,
//! the special families `D_g`, `ad_a`, `E_x`, `E_y`, `b̂_x`, `b̂f`, and the
//! decompositions into a canonical outer part plus an inner witness.

mod decompose;
mod weyl;

pub use decompose::{
    decompose_ah_char0, decompose_ah_charp, is_inner, split_ah_plus_center, DecompCharP, DecompCharZero,
};
pub use weyl::{
    decompose_a1_char0, decompose_a1_charp, e_x, e_x_poly_closed_form, e_x_yhat_closed_form, e_y, DecompA1CharP,
    DecompA1CharZero, WeylDerivation,
};

use std::fmt;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::ahstructure::{AhContext, AhError};
use crate::coeffpoly::{Antiderivative, BiPoly, FieldSpec, ParseError, Poly, PolyError};
use crate::weylcore::{WeylElement, WeylError};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum DerivationError {
    #[error("image of {which} is not in A_h (y-degree {degree})")]
    NotInAh { which: &'static str, degree: usize },
    #[error("derivation criterion fails; defect {defect}")]
    Criterion { defect: WeylElement },
    #[error("element is not in the normalizer of A_h: {0}")]
    NotInNormalizer(String),
    #[error("operation requires positive characteristic")]
    RequiresCharP,
    #[error("operation requires characteristic 0")]
    RequiresCharZero,
    #[error("derivation does not extend to A_1 (D(yhat) not right divisible by h at y^{0})")]
    NotExtendable(usize),
    #[error("decomposition failed: {0}")]
    Decomposition(String),
    #[error(transparent)]
    Ah(#[from] AhError),
    #[error(transparent)]
    Weyl(#[from] WeylError),
    #[error(transparent)]
    Poly(#[from] PolyError),
}

fn internal(msg: impl Into<String>) -> DerivationError {
    DerivationError::Decomposition(msg.into())
}

/// A derivation of `A_h`, determined by `D(x)` and `D(ŷ)` (both in `A_h`).
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Derivation {
    dx: WeylElement,
    dyhat: WeylElement,
}

/// `D(f)` for `f ∈ F[x]`, given `D(x)`: `D(x^k) = D(x^{k−1})·x + x^{k−1}·D(x)`.
pub(crate) fn poly_image(dx: &WeylElement, f: &Poly) -> WeylElement {
    let field = dx.field();
    let x = WeylElement::x(field);
    let mut out = WeylElement::zero(field);
    let mut dk = WeylElement::zero(field);
    let mut xk1 = Poly::one(field);
    for (k, c) in f.coeffs().iter().enumerate() {
        if k > 0 {
            dk = &(&dk * &x) + &dx.mul_poly_left(&xk1);
            xk1 = xk1.shift(1);
        }
        if !c.is_zero() && k > 0 {
            out = &out + &dk.scale(c);
        }
    }
    out
}

impl Derivation {
    /// Build a derivation from its images, checking membership and the criterion
    /// `[v, x] + [ŷ, u] = d(h)`.
    pub fn new(ctx: &AhContext, u: WeylElement, v: WeylElement) -> Result<Self, DerivationError> {
        for (which, a) in [("x", &u), ("yhat", &v)] {
            if let Err(AhError::NotInAh { degree }) = ctx.ah_element(a.clone()) {
                return Err(DerivationError::NotInAh { which, degree });
            }
        }
        let dh = poly_image(&u, ctx.h());
        let defect = &(&v.commutator(&WeylElement::x(ctx.field())) + &ctx.yhat().commutator(&u)) - &dh;
        if !defect.is_zero() {
            return Err(DerivationError::Criterion { defect });
        }
        Ok(Derivation { dx: u, dyhat: v })
    }

    pub fn zero(field: FieldSpec) -> Self {
        Derivation {
            dx: WeylElement::zero(field),
            dyhat: WeylElement::zero(field),
        }
    }

    pub fn dx(&self) -> &WeylElement {
        &self.dx
    }

    pub fn dyhat(&self) -> &WeylElement {
        &self.dyhat
    }

    pub fn field(&self) -> FieldSpec {
        self.dx.field()
    }

    pub fn is_zero(&self) -> bool {
        self.dx.is_zero() && self.dyhat.is_zero()
    }

    /// `D(a)` for `a ∈ A_h`, expanding `a = Σ f_j ŷ^j`.
    pub fn apply(&self, ctx: &AhContext, a: &WeylElement) -> Result<WeylElement, DerivationError> {
        let coeffs = ctx.yhat_collect(a)?;
        let field = ctx.field();
        let yh = ctx.yhat();
        let mut out = WeylElement::zero(field);
        // running ŷ^{j−1} and D(ŷ^j)
        let mut ypow = WeylElement::one(field);
        let mut dy = WeylElement::zero(field);
        for (j, f) in coeffs.iter().enumerate() {
            if j > 0 {
                dy = &(&dy * yh) + &(&ypow * &self.dyhat);
                ypow = &ypow * yh;
            }
            if f.is_zero() {
                continue;
            }
            let df = poly_image(&self.dx, f);
            out = &out + &(&df * &ypow);
            if j > 0 {
                out = &out + &dy.mul_poly_left(f);
            }
        }
        Ok(out)
    }

    /// `D(f)` for a polynomial `f ∈ F[x]`.
    pub fn apply_poly(&self, f: &Poly) -> WeylElement {
        poly_image(&self.dx, f)
    }

    /// The commutator `[D, E] = DE − ED`.
    pub fn bracket(&self, ctx: &AhContext, other: &Derivation) -> Result<Derivation, DerivationError> {
        let dx = &self.apply(ctx, &other.dx)? - &other.apply(ctx, &self.dx)?;
        let dyhat = &self.apply(ctx, &other.dyhat)? - &other.apply(ctx, &self.dyhat)?;
        Ok(Derivation { dx, dyhat })
    }

    /// `z·D` for a central element `z` (given in `A₁` coordinates).
    pub fn scale_by_central(&self, z: &WeylElement) -> Derivation {
        Derivation {
            dx: z * &self.dx,
            dyhat: z * &self.dyhat,
        }
    }

    /// `z·D` for `z ∈ Z(A_h) = F[t₁, t₂]`.
    pub fn scale_by_center(&self, ctx: &AhContext, z: &BiPoly) -> Result<Derivation, DerivationError> {
        Ok(self.scale_by_central(&ctx.center_to_weyl(z)?))
    }

    pub fn scale(&self, c: &crate::coeffpoly::Coeff) -> Derivation {
        Derivation {
            dx: self.dx.scale(c),
            dyhat: self.dyhat.scale(c),
        }
    }

    pub fn to_text(&self) -> DerivationText {
        DerivationText {
            dx: self.dx.to_string(),
            dyhat: self.dyhat.to_string(),
        }
    }

    /// Parse and validate the textual form.
    pub fn from_text(ctx: &AhContext, t: &DerivationText) -> Result<Self, DerivationTextError> {
        let u = WeylElement::parse(&t.dx, ctx.field())?;
        let v = WeylElement::parse(&t.dyhat, ctx.field())?;
        Ok(Derivation::new(ctx, u, v)?)
    }
}

impl std::ops::Add<&Derivation> for &Derivation {
    type Output = Derivation;
    fn add(self, rhs: &Derivation) -> Derivation {
        Derivation {
            dx: &self.dx + &rhs.dx,
            dyhat: &self.dyhat + &rhs.dyhat,
        }
    }
}

impl std::ops::Sub<&Derivation> for &Derivation {
    type Output = Derivation;
    fn sub(self, rhs: &Derivation) -> Derivation {
        Derivation {
            dx: &self.dx - &rhs.dx,
            dyhat: &self.dyhat - &rhs.dyhat,
        }
    }
}

impl std::ops::Neg for &Derivation {
    type Output = Derivation;
    fn neg(self) -> Derivation {
        Derivation {
            dx: -&self.dx,
            dyhat: -&self.dyhat,
        }
    }
}

impl fmt::Display for Derivation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "x -> {}, yhat -> {}", self.dx, self.dyhat)
    }
}

/// Serialized form `{"Dx": "...", "Dyhat": "..."}` in the Weyl text grammar.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct DerivationText {
    #[serde(rename = "Dx")]
    pub dx: String,
    #[serde(rename = "Dyhat")]
    pub dyhat: String,
}

#[derive(Debug, Error)]
pub enum DerivationTextError {
    #[error(transparent)]
    Parse(#[from] ParseError),
    #[error(transparent)]
    Derivation(#[from] DerivationError),
}

// ---- the basic families ---------------------------------------------------

/// `ad_a = [a, ·]`, defined on `A_h` for `a` in the normalizer.
pub fn ad(ctx: &AhContext, a: &WeylElement) -> Result<Derivation, DerivationError> {
    let verdict = ctx.normalizer_test(a);
    if !verdict.in_normalizer {
        return Err(DerivationError::NotInNormalizer(verdict.to_string()));
    }
    Ok(ad_unchecked(ctx, a))
}

pub(crate) fn ad_unchecked(ctx: &AhContext, a: &WeylElement) -> Derivation {
    Derivation {
        dx: a.commutator(&WeylElement::x(ctx.field())),
        dyhat: a.commutator(ctx.yhat()),
    }
}

/// `D_g`: `x ↦ 0`, `ŷ ↦ g`.
pub fn d_g(ctx: &AhContext, g: &Poly) -> Derivation {
    Derivation {
        dx: WeylElement::zero(ctx.field()),
        dyhat: WeylElement::from_poly(g.clone()),
    }
}

/// `ad_{r a_n}`; for `n = 0` this is `−D_{δ₀(r)}` (with `a₀ = π_h h^{−1}`).
pub fn ad_r_a_n(ctx: &AhContext, r: &Poly, n: usize) -> Result<Derivation, DerivationError> {
    if n == 0 {
        return Ok(-&d_g(ctx, &ctx.delta0(r)));
    }
    Ok(ad_unchecked(ctx, &ctx.r_a_n(r, n)?))
}

/// `b̂_x = (h^p/ϱ_h)·E_x`, restricted to `A_h`.
pub fn bhat_x(ctx: &AhContext) -> Result<Derivation, DerivationError> {
    let d = ctx.charp()?;
    let c = &d.hp_over_varrho;
    let ex = e_x(ctx.field())?;
    let dyhat = ex.apply(ctx.yhat()).mul_poly_left(c);
    Ok(Derivation {
        dx: WeylElement::monomial(c.clone(), d.p - 1),
        dyhat,
    })
}

/// `b̂f = ζ·D_{h′/ϱ} − b̂_x`.
pub fn bhat_f(ctx: &AhContext) -> Result<Derivation, DerivationError> {
    let d = ctx.charp()?;
    let hv = ctx.hprime().exact_div(ctx.varrho_h())?;
    let zd = d_g(ctx, &hv).scale_by_central(&d.zeta);
    Ok(&zd - &bhat_x(ctx)?)
}

/// `b̂f(ŷ)` from its closed form
/// `(h^p/ϱ)·(Σ_{k=1}^{p−2} (−1)^k/((k+1)k)·h^{(k+1)} y^{p−k} + ∂_p(h)·y + ∂_p(h′))`.
pub fn bhat_f_yhat_closed_form(ctx: &AhContext) -> Result<WeylElement, DerivationError> {
    let d = ctx.charp()?;
    let (p, field, h) = (d.p, ctx.field(), ctx.h());
    let mut out = WeylElement::zero(field);
    for k in 1..p.saturating_sub(1) {
        let mut c = field
            .from_u64(((k + 1) * k) as u64)
            .inv()
            .ok_or_else(|| internal("k(k+1) divisible by p"))?;
        if k % 2 == 1 {
            c = -c;
        }
        out = &out + &WeylElement::monomial(h.nth_derivative(k + 1).scale(&c), p - k);
    }
    out = &out + &WeylElement::monomial(h.partial_p()?, 1);
    out = &out + &WeylElement::from_poly(ctx.hprime().partial_p()?);
    Ok(out.mul_poly_left(&d.hp_over_varrho))
}

/// `D_q̆`, whose restriction to the center is `h̄·d/dt₂`.
pub fn d_qbreve(ctx: &AhContext) -> Result<Derivation, DerivationError> {
    Ok(d_g(ctx, &ctx.charp()?.qbreve))
}

// ---- extension to A₁ -----------------------------------------------------

/// Result of trying to extend a derivation of `A_h` to `A₁`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Extension {
    Extended(WeylDerivation),
    /// `D(ŷ) ∉ A₁h`; the first y-degree where right division by `h` failed.
    NotExtendable(usize),
}

/// Extend `D` to `A₁` when `D(ŷ) ∈ A₁h`: with `D(ŷ) = a·h`, `D(h) = b·h`,
/// the extension sends `y ↦ a − y·b`.
pub fn extend_to_a1(ctx: &AhContext, d: &Derivation) -> Result<Extension, DerivationError> {
    let a = match d.dyhat.right_div_poly(ctx.h()) {
        Ok(a) => a,
        Err(WeylError::NotRightDivisible(n)) => return Ok(Extension::NotExtendable(n)),
        Err(e) => return Err(e.into()),
    };
    let b = d
        .apply_poly(ctx.h())
        .right_div_poly(ctx.h())
        .map_err(|_| internal("D(h) not right divisible by h"))?;
    let dy = &a - &(&WeylElement::y(ctx.field()) * &b);
    Ok(Extension::Extended(WeylDerivation::new(d.dx.clone(), dy)))
}

// ---- restriction to the center -------------------------------------------

/// A derivation `A·d/dt₁ + B·d/dt₂` of `F[t₁, t₂]`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CenterDerivation {
    pub d1: BiPoly,
    pub d2: BiPoly,
}

impl CenterDerivation {
    pub fn new(d1: BiPoly, d2: BiPoly) -> Self {
        CenterDerivation { d1, d2 }
    }

    pub fn is_zero(&self) -> bool {
        self.d1.is_zero() && self.d2.is_zero()
    }

    pub fn apply(&self, f: &BiPoly) -> BiPoly {
        &(&self.d1 * &f.d_t1()) + &(&self.d2 * &f.d_t2())
    }

    pub fn bracket(&self, other: &CenterDerivation) -> CenterDerivation {
        CenterDerivation {
            d1: &self.apply(&other.d1) - &other.apply(&self.d1),
            d2: &self.apply(&other.d2) - &other.apply(&self.d2),
        }
    }

    pub fn scale(&self, z: &BiPoly) -> CenterDerivation {
        CenterDerivation {
            d1: z * &self.d1,
            d2: z * &self.d2,
        }
    }
}

impl fmt::Display for CenterDerivation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let part = |c: &BiPoly, v: &str| -> Option<String> {
            if c.is_zero() {
                None
            } else if *c == BiPoly::one(c.field()) {
                Some(format!("d/d{v}"))
            } else {
                Some(format!("({c}) d/d{v}"))
            }
        };
        let parts: Vec<String> = [part(&self.d1, "t1"), part(&self.d2, "t2")]
            .into_iter()
            .flatten()
            .collect();
        if parts.is_empty() {
            write!(f, "0")
        } else {
            write!(f, "{}", parts.join(" + "))
        }
    }
}

/// `Res(D)`: the action on `Z(A_h) = F[x^p, ζ]`.
pub fn restrict_to_center(ctx: &AhContext, d: &Derivation) -> Result<CenterDerivation, DerivationError> {
    let data = ctx.charp()?;
    let xp = WeylElement::from_poly(Poly::x(ctx.field()).pow(data.p));
    let a = ctx.center_coords(&d.apply(ctx, &xp)?)?;
    let b = ctx.center_coords(&d.apply(ctx, &data.zeta)?)?;
    Ok(CenterDerivation { d1: a, d2: b })
}

// ---- the automorphism φ_g ---------------------------------------------------

/// `φ_g`: `x ↦ x`, `ŷ ↦ ŷ + g`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct AutPhi {
    pub g: Poly,
}

impl AutPhi {
    pub fn image_of_yhat(&self, ctx: &AhContext) -> WeylElement {
        ctx.yhat() + &WeylElement::from_poly(self.g.clone())
    }

    pub fn apply(&self, ctx: &AhContext, a: &WeylElement) -> Result<WeylElement, DerivationError> {
        let coeffs = ctx.yhat_collect(a)?;
        let img = self.image_of_yhat(ctx);
        let mut out = WeylElement::zero(ctx.field());
        let mut pw = WeylElement::one(ctx.field());
        for f in &coeffs {
            out = &out + &pw.mul_poly_left(f);
            pw = &pw * &img;
        }
        Ok(out)
    }
}

/// The automorphism `exp(D_g) = φ_g`.
pub fn aut_exp(_ctx: &AhContext, g: &Poly) -> AutPhi {
    AutPhi { g: g.clone() }
}

/// `Σ_n D_g^n(a)/n!` summed until the terms vanish (characteristic 0 only).
pub fn exp_series(ctx: &AhContext, g: &Poly, a: &WeylElement) -> Result<WeylElement, DerivationError> {
    if !ctx.field().is_char_zero() {
        return Err(DerivationError::RequiresCharZero);
    }
    let d = d_g(ctx, g);
    let mut term = a.clone();
    let mut out = a.clone();
    let mut n = 1u64;
    loop {
        term = d.apply(ctx, &term)?;
        if term.is_zero() {
            return Ok(out);
        }
        term = term.scale(&ctx.field().from_u64(n).inv().expect("char 0"));
        out = &out + &term;
        n += 1;
    }
}

pub(crate) fn integrate(f: &Poly) -> Result<Poly, DerivationError> {
    match f.antiderivative() {
        Antiderivative::Integral(g) => Ok(g),
        Antiderivative::NotIntegrable { .. } => Err(internal(format!("{f} has no antiderivative"))),
    }
}

#[cfg(test)]
mod tests;
