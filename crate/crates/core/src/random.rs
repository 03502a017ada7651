//! Seeded generators of polynomials, normalizer elements and derivations,
//! for property tests and the CLI's `--seed`.

use rand::Rng;

use crate::ahstructure::AhContext;
use crate::coeffpoly::{BiPoly, FieldSpec, Poly};
use crate::derivations::{self, Derivation, DerivationError};
use crate::weylcore::WeylElement;

/// Small integer coefficients in `[-3, 3]`.
pub fn coeff<R: Rng>(rng: &mut R, field: FieldSpec) -> crate::coeffpoly::Coeff {
    field.from_i64(rng.gen_range(-3..=3))
}

/// A polynomial of degree at most `deg`.
pub fn poly<R: Rng>(rng: &mut R, field: FieldSpec, deg: usize) -> Poly {
    Poly::from_coeffs(field, (0..=deg).map(|_| coeff(rng, field)).collect())
}

/// A polynomial of degree exactly `deg` (nonzero leading coefficient).
pub fn poly_exact<R: Rng>(rng: &mut R, field: FieldSpec, deg: usize) -> Poly {
    loop {
        let f = poly(rng, field, deg);
        if f.degree() == Some(deg) {
            return f;
        }
    }
}

/// A polynomial in `F[x^p]` with `u`-degree at most `deg`, written in `x`.
pub fn frobenius_poly<R: Rng>(rng: &mut R, field: FieldSpec, deg: usize) -> Poly {
    let p = field.prime().unwrap_or(1) as usize;
    poly(rng, field, deg).expand_frobenius(p)
}

/// A central element `Σ c_{ij} t₁^i t₂^j` with `i, j ≤ deg`.
pub fn center<R: Rng>(rng: &mut R, field: FieldSpec, deg: usize) -> BiPoly {
    BiPoly::from_parts(field, (0..=deg).map(|_| poly(rng, field, deg)).collect())
}

/// An element of `A₁` with x- and y-degrees at most `xdeg`, `ydeg`.
pub fn weyl<R: Rng>(rng: &mut R, field: FieldSpec, xdeg: usize, ydeg: usize) -> WeylElement {
    WeylElement::from_terms(field, (0..=ydeg).map(|i| (i, poly(rng, field, xdeg))))
}

/// A random element of `A_h`, built in the `ŷ`-basis.
pub fn ah_element<R: Rng>(rng: &mut R, ctx: &AhContext, xdeg: usize, ydeg: usize) -> WeylElement {
    let coeffs: Vec<Poly> = (0..=ydeg).map(|_| poly(rng, ctx.field(), xdeg)).collect();
    ctx.yhat_expand(&coeffs)
}

/// A random element of the normalizer of `A_h` in `A₁`.
///
/// Degrees `n ≢ 0 (mod p)` get `r·a_n`; in degrees `n ≡ 0` the coefficient
/// mixes `F[x^p]·π_h h^{n−1}`, `h^n·F[x]` and `F[x^p]`.
pub fn normalizer_element<R: Rng>(rng: &mut R, ctx: &AhContext, xdeg: usize, ydeg: usize) -> WeylElement {
    let field = ctx.field();
    let mut out = WeylElement::from_poly(poly(rng, field, xdeg));
    for n in 1..=ydeg {
        let coeff = match ctx.p() {
            Some(p) if n % p == 0 => {
                let base = ctx.pi_h() * &ctx.h().pow(n - 1);
                let a = &frobenius_poly(rng, field, 1) * &base;
                let b = &poly(rng, field, 1) * &ctx.h().pow(n);
                &(&a + &b) + &frobenius_poly(rng, field, 1)
            }
            _ => &poly(rng, field, xdeg) * &ctx.a_n_element(n).expect("n ≥ 1").coeff(n),
        };
        out = &out + &WeylElement::monomial(coeff, n);
    }
    out
}

/// A random derivation: `D_g + ad_a`, plus in characteristic p the free
/// parts `u·D_q̆ + v·b̂f + D_s` with small central `u, v`.
pub fn derivation<R: Rng>(
    rng: &mut R,
    ctx: &AhContext,
    xdeg: usize,
    ydeg: usize,
) -> Result<Derivation, DerivationError> {
    let field = ctx.field();
    let g = poly(rng, field, xdeg.max(ctx.deg_h()));
    let a = normalizer_element(rng, ctx, xdeg, ydeg);
    let mut d = &derivations::d_g(ctx, &g) + &derivations::ad(ctx, &a)?;
    if ctx.p().is_some() {
        let u = center(rng, field, 1);
        let v = center(rng, field, 1);
        d = &d + &derivations::d_qbreve(ctx)?.scale_by_center(ctx, &u)?;
        d = &d + &derivations::bhat_f(ctx)?.scale_by_center(ctx, &v)?;
    }
    Ok(d)
}

/// A random derivation of `A₁` in characteristic 0: arbitrary `D(x)` and the
/// `y`-image forced by the criterion up to a free constant term.
pub fn a1_derivation<R: Rng>(rng: &mut R, field: FieldSpec, xdeg: usize, ydeg: usize) -> derivations::WeylDerivation {
    let dx = weyl(rng, field, xdeg, ydeg);
    // [D(y), x] + [y, D(x)] = 0 forces e_j = −d_{j−1}′/j for j ≥ 1
    let mut dy = WeylElement::from_poly(poly(rng, field, xdeg));
    for (i, d) in dx.terms() {
        let j = i + 1;
        let inv = field.from_u64(j as u64).inv().expect("characteristic 0");
        dy = &dy - &WeylElement::monomial(d.derivative().scale(&inv), j);
    }
    derivations::WeylDerivation::new(dx, dy)
}
