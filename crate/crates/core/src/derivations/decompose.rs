//! Splitting a derivation of `A_h` into a canonical outer part and an inner
//! witness, in either characteristic.

use crate::ahstructure::AhContext;
use crate::coeffpoly::{BiPoly, EchelonBasis, Poly};
use crate::weylcore::WeylElement;

use super::weyl::{anti_integrate_x_pub, decompose_a1_char0};
use super::{
    ad_r_a_n, ad_unchecked, bhat_f, d_g, d_qbreve, extend_to_a1, integrate, internal, restrict_to_center, Derivation,
    DerivationError, Extension,
};

/// `D = D_g + Σ ad_{r_n a_n} + ad_{inner_witness}` with `deg g < deg h`,
/// `n ≥ 1` and `deg r_n < deg(h/π_h)`; the outer part is unique.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DecompCharZero {
    pub g: Poly,
    pub normalizer_terms: Vec<(usize, Poly)>,
    pub inner_witness: WeylElement,
}

impl DecompCharZero {
    pub fn reassemble(&self, ctx: &AhContext) -> Result<Derivation, DerivationError> {
        let mut d = &d_g(ctx, &self.g) + &ad_unchecked(ctx, &self.inner_witness);
        for (n, r) in &self.normalizer_terms {
            d = &d + &ad_r_a_n(ctx, r, *n)?;
        }
        Ok(d)
    }

    pub fn is_inner(&self) -> bool {
        self.g.is_zero() && self.normalizer_terms.is_empty()
    }
}

pub fn decompose_ah_char0(ctx: &AhContext, d: &Derivation) -> Result<DecompCharZero, DerivationError> {
    if !ctx.field().is_char_zero() {
        return Err(DerivationError::RequiresCharZero);
    }
    let field = ctx.field();
    let h = ctx.h();
    let coeffs = ctx.yhat_collect(d.dyhat())?;
    let r0 = coeffs.first().cloned().unwrap_or_else(|| Poly::zero(field));
    // D_{r₀} = D_g + ad_ρ with r₀ = qh + g and ρ′ = −q
    let (q, g) = r0.divmod(h)?;
    let rho = -&integrate(&q)?;
    let rest = d - &d_g(ctx, &r0);
    let ext = match extend_to_a1(ctx, &rest)? {
        Extension::Extended(e) => e,
        Extension::NotExtendable(n) => return Err(DerivationError::NotExtendable(n)),
    };
    let b = decompose_a1_char0(&ext)?.element();
    let mut inner = &WeylElement::from_poly(rho) + &WeylElement::from_poly(b.coeff(0));
    let mut terms = Vec::new();
    for (n, bn) in b.terms() {
        if n == 0 {
            continue;
        }
        let rn = bn
            .exact_div(&(ctx.pi_h() * &h.pow(n - 1)))
            .map_err(|_| internal(format!("y^{n} coefficient of the A_1 part is not a multiple of a_{n}")))?;
        let (qn, rt) = rn.divmod(ctx.h_over_pi())?;
        inner = &inner + &WeylElement::monomial(&qn * &h.pow(n), n);
        if !rt.is_zero() {
            terms.push((n, rt));
        }
    }
    Ok(DecompCharZero {
        g,
        normalizer_terms: terms,
        inner_witness: inner,
    })
}

/// `D = u·D_q̆ + v·b̂f + D_s + ad_{normalizer_part} + ad_{inner_witness}` with
/// `u, v ∈ Z(A_h)`, `s ∈ span S`, the normalizer part in `N(A_h)` and the
/// witness in `A_h`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DecompCharP {
    pub u: BiPoly,
    pub v: BiPoly,
    pub s: Poly,
    pub normalizer_part: WeylElement,
    pub inner_witness: WeylElement,
}

impl DecompCharP {
    pub fn reassemble(&self, ctx: &AhContext) -> Result<Derivation, DerivationError> {
        let a = d_qbreve(ctx)?.scale_by_center(ctx, &self.u)?;
        let b = bhat_f(ctx)?.scale_by_center(ctx, &self.v)?;
        let rest =
            &(&d_g(ctx, &self.s) + &ad_unchecked(ctx, &self.normalizer_part)) + &ad_unchecked(ctx, &self.inner_witness);
        Ok(&(&a + &b) + &rest)
    }
}

pub fn decompose_ah_charp(ctx: &AhContext, d: &Derivation) -> Result<DecompCharP, DerivationError> {
    let data = ctx.charp()?;
    let (p, field, h) = (data.p, ctx.field(), ctx.h());
    let res = restrict_to_center(ctx, d)?;
    let v = res
        .d1
        .exact_div_t1(&data.hp_over_varrho.to_u()?)
        .map_err(|_| internal("Res(D) d/dt1-coefficient not divisible by h^p/varrho"))?;
    let u = res
        .d2
        .exact_div_t1(&data.hbar)
        .map_err(|_| internal("Res(D) d/dt2-coefficient not divisible by hbar"))?;
    let e = &(d - &d_qbreve(ctx)?.scale_by_center(ctx, &u)?) - &bhat_f(ctx)?.scale_by_center(ctx, &v)?;
    let (b, leftover) = anti_integrate_x_pub(e.dx());
    if !leftover.is_zero() {
        return Err(internal("E(x) has terms in y-degrees -1 mod p"));
    }
    let f = e.dyhat() - &b.commutator(ctx.yhat());
    let mut s = Poly::zero(field);
    let mut normalizer_part = b;
    let mut inner_witness = WeylElement::zero(field);
    for (i, fi) in f.terms() {
        if i % p != 0 {
            return Err(internal("remainder on yhat does not commute with x"));
        }
        let qk = fi
            .exact_div(&h.pow(i))
            .map_err(|_| internal("remainder on yhat is not in A_h"))?;
        if i == 0 {
            let (sk, g0) = ctx.theta_split(&qk)?;
            s = sk;
            // D_{δ(g)} = −ad_g
            inner_witness = WeylElement::from_poly(-&g0);
        } else {
            // ζ^k D_q = ad_{r y^{kp}} with r′ = −q h^{kp−1}
            let r = integrate(&-&(&qk * &h.pow(i - 1)))?;
            normalizer_part = &normalizer_part + &WeylElement::monomial(r, i);
        }
    }
    Ok(DecompCharP {
        u,
        v,
        s,
        normalizer_part,
        inner_witness,
    })
}

/// Write a normalizer element as `a_h + z` with `a_h ∈ A_h` and `z ∈ Z(A₁)`, if possible.
pub fn split_ah_plus_center(
    ctx: &AhContext,
    a: &WeylElement,
) -> Result<Option<(WeylElement, WeylElement)>, DerivationError> {
    let field = ctx.field();
    let Some(p) = ctx.p() else {
        return Ok(ctx.ah_membership(a).then(|| (a.clone(), WeylElement::zero(field))));
    };
    let mut ah = WeylElement::zero(field);
    let mut z = WeylElement::zero(field);
    for (i, r) in a.terms() {
        let m = ctx.h().pow(i);
        if i == 0 || r.is_divisible_by(&m) {
            ah = &ah + &WeylElement::monomial(r.clone(), i);
            continue;
        }
        if i % p != 0 {
            return Ok(None);
        }
        // find c ∈ F[x^p] with r ≡ c (mod h^i)
        let n = m.degree().unwrap_or(0);
        let mut basis = EchelonBasis::new(field, n.max(1));
        for k in 0..=n {
            basis.insert(basis.poly_vector(&Poly::x(field).pow(p * k).rem(&m)?));
        }
        let (res, combo) = basis.reduce(basis.poly_vector(&r.rem(&m)?));
        if res.iter().any(|c| !c.is_zero()) {
            return Ok(None);
        }
        let mut c = Poly::zero(field);
        for (k, ck) in combo.iter().enumerate() {
            c = &c + &Poly::monomial(ck.clone(), p * k);
        }
        ah = &ah + &WeylElement::monomial(r - &c, i);
        z = &z + &WeylElement::monomial(c, i);
    }
    Ok(Some((ah, z)))
}

/// `Some(w)` with `D = ad_w`, `w ∈ A_h`, when `D` is inner; `None` otherwise.
pub fn is_inner(ctx: &AhContext, d: &Derivation) -> Result<Option<WeylElement>, DerivationError> {
    if ctx.field().is_char_zero() {
        let dec = decompose_ah_char0(ctx, d)?;
        return Ok(dec.is_inner().then_some(dec.inner_witness));
    }
    let dec = decompose_ah_charp(ctx, d)?;
    if !dec.u.is_zero() || !dec.v.is_zero() || !dec.s.is_zero() {
        return Ok(None);
    }
    Ok(split_ah_plus_center(ctx, &dec.normalizer_part)?.map(|(ah, _)| &ah + &dec.inner_witness))
}
