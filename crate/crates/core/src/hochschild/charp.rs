//! Characteristic p: closed-form brackets between the generating families,
//! the product rule over the center, and the `Z(A_h)`-module report.

use rand::Rng;

use crate::ahstructure::AhContext;
use crate::coeffpoly::{BiPoly, EchelonBasis, Poly};
use crate::derivations::{
    self, bhat_f, bhat_x, d_g, d_qbreve, e_x, e_y, is_inner, CenterDerivation, Derivation, DerivationError,
};
use crate::random;
use crate::weylcore::{varpi_element, WeylElement};

use super::HochschildError;

/// Generators for symbolic brackets in characteristic p.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum CharPGen {
    /// `D_g`.
    D(Poly),
    /// `ad_{r a_n}` (`n = 0` meaning `−D_{δ₀(r)}`).
    AdRA { r: Poly, n: usize },
    /// `ad_b` for a normalizer element `b`.
    Ad(WeylElement),
    /// `b̂_x = (h^p/ϱ_h)·E_x`.
    BhatX,
    /// `E_x` (only for `h = 1`, where `A_h = A₁`).
    Ex,
    /// `E_y` (only for `h = 1`).
    Ey,
}

/// `coeff · gen` with `coeff ∈ Z(A_h) = F[t₁, t₂]`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SymTerm {
    pub coeff: BiPoly,
    pub gen: CharPGen,
}

/// A closed-form bracket: a sum of terms, equal to the operator bracket
/// exactly (`exact`) or modulo inner derivations.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SymBracket {
    pub terms: Vec<SymTerm>,
    pub exact: bool,
}

impl SymBracket {
    fn zero() -> Self {
        SymBracket {
            terms: Vec::new(),
            exact: true,
        }
    }

    fn one_term(ctx: &AhContext, gen: CharPGen, exact: bool) -> Self {
        SymBracket {
            terms: vec![SymTerm {
                coeff: BiPoly::one(ctx.field()),
                gen,
            }],
            exact,
        }
    }

    fn negate(mut self) -> Self {
        for t in &mut self.terms {
            t.coeff = -&t.coeff;
        }
        self
    }

    fn scale(mut self, z: &BiPoly) -> Self {
        for t in &mut self.terms {
            t.coeff = &t.coeff * z;
        }
        self
    }
}

fn require_h_one(ctx: &AhContext) -> Result<(), HochschildError> {
    if ctx.h().is_one() {
        Ok(())
    } else {
        Err(HochschildError::Unsupported("E_x and E_y need h = 1".into()))
    }
}

pub fn gen_to_derivation(ctx: &AhContext, g: &CharPGen) -> Result<Derivation, HochschildError> {
    let field = ctx.field();
    Ok(match g {
        CharPGen::D(g) => d_g(ctx, g),
        CharPGen::AdRA { r, n } => derivations::ad_r_a_n(ctx, r, *n)?,
        CharPGen::Ad(b) => derivations::ad(ctx, b)?,
        CharPGen::BhatX => bhat_x(ctx)?,
        CharPGen::Ex => {
            require_h_one(ctx)?;
            Derivation::new(ctx, e_x(field)?.dx, WeylElement::zero(field))?
        }
        CharPGen::Ey => {
            require_h_one(ctx)?;
            Derivation::new(ctx, WeylElement::zero(field), e_y(field)?.dy)?
        }
    })
}

pub fn terms_to_derivation(ctx: &AhContext, terms: &[SymTerm]) -> Result<Derivation, HochschildError> {
    let mut d = Derivation::zero(ctx.field());
    for t in terms {
        d = &d + &gen_to_derivation(ctx, &t.gen)?.scale_by_center(ctx, &t.coeff)?;
    }
    Ok(d)
}

/// `Res` of a generator, from its closed form.
pub fn gen_restriction(ctx: &AhContext, g: &CharPGen) -> Result<CenterDerivation, HochschildError> {
    let field = ctx.field();
    let zero = BiPoly::zero(field);
    Ok(match g {
        CharPGen::D(g) => CenterDerivation::new(zero, BiPoly::from_t1(ctx.theta_p_map(g)?)),
        CharPGen::AdRA { .. } | CharPGen::Ad(_) => CenterDerivation::new(zero.clone(), zero),
        CharPGen::BhatX => {
            let d = ctx.charp()?;
            let p = d.p;
            let hp = ctx.hprime().pow(p).exact_div(ctx.varrho_h())?.to_u()?;
            CenterDerivation::new(
                -&BiPoly::from_t1(d.hp_over_varrho.to_u()?),
                -&(&BiPoly::t2(field) * &BiPoly::from_t1(hp)),
            )
        }
        CharPGen::Ex => {
            require_h_one(ctx)?;
            CenterDerivation::new(-&BiPoly::one(field), zero)
        }
        CharPGen::Ey => {
            require_h_one(ctx)?;
            CenterDerivation::new(zero, -&BiPoly::one(field))
        }
    })
}

fn exact_div(a: &Poly, b: &Poly, what: &str) -> Result<Poly, HochschildError> {
    a.exact_div(b)
        .map_err(|_| HochschildError::NotExact(format!("{what}: {b} does not divide {a}")))
}

/// `[D_g, b̂_x] = D_e + ad_b`, with
/// `b = Σ_{k=1}^{p−1} (−1)^k (g h^{p−1})^{(k−1)}/(ϱ(p−k)) · y^{p−k}` and
/// `e = (1/ϱ)Σ_{k=1}^{p−1} ((−1)^{k−1}/k)(g h^{p−1})^{(k)} h^{(p−k)} + (h^{p−1}/ϱ)(h ∂_p(g) − g ∂_p(h))`.
fn d_bhat_x(ctx: &AhContext, g: &Poly) -> Result<SymBracket, HochschildError> {
    let d = ctx.charp()?;
    let (p, field, h) = (d.p, ctx.field(), ctx.h());
    let rho = ctx.varrho_h();
    let ghp = g * &h.pow(p - 1);
    let mut b = WeylElement::zero(field);
    let mut esum = Poly::zero(field);
    for k in 1..p {
        let sign = if k % 2 == 0 { field.one() } else { -field.one() };
        let cb = sign.clone() * field.from_u64((p - k) as u64).inv().expect("0 < p-k < p");
        let bk = exact_div(&ghp.nth_derivative(k - 1), rho, "b-term")?;
        b = &b + &WeylElement::monomial(bk.scale(&cb), p - k);
        let ce = -sign * field.from_u64(k as u64).inv().expect("0 < k < p");
        esum = &esum + &(&ghp.nth_derivative(k) * &h.nth_derivative(p - k)).scale(&ce);
    }
    let tail = &(h * &g.partial_p()?) - &(g * &h.partial_p()?);
    let e = &exact_div(&esum, rho, "e-term")? + &exact_div(&(&h.pow(p - 1) * &tail), rho, "e-tail")?;
    let one = BiPoly::one(field);
    Ok(SymBracket {
        terms: vec![
            SymTerm {
                coeff: one.clone(),
                gen: CharPGen::D(e),
            },
            SymTerm {
                coeff: one,
                gen: CharPGen::Ad(b),
            },
        ],
        exact: true,
    })
}

/// `[b̂_x, ad_{r a_m}]` for `m = kp + n`: modulo inner derivations,
/// `ζ^{k+1} ad_{ζ_n a_{n−1}}` with `ζ_n = (h/(π_hϱ))δ₀(r) + n r h′/ϱ` for `n ≥ 1`,
/// and `ζ^k [D_{δ₀(r)}, b̂_x]` for `n = 0`.
fn bhat_x_ad(ctx: &AhContext, r: &Poly, m: usize) -> Result<SymBracket, HochschildError> {
    let p = ctx.charp()?.p;
    let field = ctx.field();
    let (k, n) = (m / p, m % p);
    let zk = BiPoly::t2(field).pow(k);
    if n == 0 {
        let mut out = d_bhat_x(ctx, &ctx.delta0(r))?.scale(&zk);
        out.exact = false;
        return Ok(out);
    }
    let rho = ctx.varrho_h();
    let hpr = exact_div(ctx.h(), &(ctx.pi_h() * rho), "h/(pi rho)")?;
    let hv = exact_div(ctx.hprime(), rho, "h'/rho")?;
    let zn = &(&hpr * &ctx.delta0(r)) + &(r * &hv).scale(&field.from_u64(n as u64));
    Ok(SymBracket {
        terms: vec![SymTerm {
            coeff: &zk * &BiPoly::t2(field),
            gen: CharPGen::AdRA { r: zn, n: n - 1 },
        }],
        exact: false,
    })
}

/// Closed-form bracket of two generators.
pub fn bracket_charp(ctx: &AhContext, a: &CharPGen, b: &CharPGen) -> Result<SymBracket, HochschildError> {
    use CharPGen::*;
    let p = ctx.charp()?.p;
    let field = ctx.field();
    let hq = ctx.h_over_pi();
    Ok(match (a, b) {
        (D(_), D(_)) => SymBracket::zero(),
        (D(g), AdRA { r, n }) => {
            if *n == 0 {
                SymBracket::zero()
            } else {
                let c = (g * r).rem(hq)?.scale(&field.from_u64(*n as u64));
                SymBracket::one_term(ctx, AdRA { r: c, n: n - 1 }, false)
            }
        }
        (AdRA { .. }, D(_)) => bracket_charp(ctx, b, a)?.negate(),
        (AdRA { r, n: m }, AdRA { r: s, n }) => {
            if m + n == 0 {
                SymBracket::zero()
            } else {
                let q = &(r * &ctx.delta0(s)).scale(&field.from_u64(*m as u64))
                    - &(s * &ctx.delta0(r)).scale(&field.from_u64(*n as u64));
                SymBracket::one_term(
                    ctx,
                    AdRA {
                        r: q.rem(hq)?,
                        n: m + n - 1,
                    },
                    false,
                )
            }
        }
        (D(g), BhatX) => d_bhat_x(ctx, g)?,
        (BhatX, D(_)) => bracket_charp(ctx, b, a)?.negate(),
        (BhatX, AdRA { r, n }) => bhat_x_ad(ctx, r, *n)?,
        (AdRA { .. }, BhatX) => bracket_charp(ctx, b, a)?.negate(),
        (Ex, Ey) => {
            require_h_one(ctx)?;
            SymBracket::one_term(ctx, Ad(varpi_element(field).map_err(DerivationError::from)?), true)
        }
        (Ey, Ex) => bracket_charp(ctx, b, a)?.negate(),
        (BhatX, BhatX) | (Ex, Ex) | (Ey, Ey) => SymBracket::zero(),
        (Ex | Ey, _) | (_, Ex | Ey) => {
            // h = 1: E_x = b̂_x and E_y = −D_q̆ = D_{x^{p−1}}
            require_h_one(ctx)?;
            let alias = |g: &CharPGen| match g {
                Ex => BhatX,
                Ey => D(Poly::x(field).pow(p - 1)),
                other => other.clone(),
            };
            bracket_charp(ctx, &alias(a), &alias(b))?
        }
        _ => return Err(HochschildError::Unsupported(format!("{a:?} with {b:?}"))),
    })
}

/// `[z₁D, z₂E] = z₁D(z₂)E − z₂E(z₁)D + z₁z₂[D, E]` for central `z₁, z₂`.
pub fn bracket_scaled(
    ctx: &AhContext,
    z1: &BiPoly,
    a: &CharPGen,
    z2: &BiPoly,
    b: &CharPGen,
) -> Result<SymBracket, HochschildError> {
    let ra = gen_restriction(ctx, a)?;
    let rb = gen_restriction(ctx, b)?;
    let inner = bracket_charp(ctx, a, b)?.scale(&(z1 * z2));
    let mut terms = vec![
        SymTerm {
            coeff: z1 * &ra.apply(z2),
            gen: b.clone(),
        },
        SymTerm {
            coeff: -&(z2 * &rb.apply(z1)),
            gen: a.clone(),
        },
    ];
    terms.extend(inner.terms);
    terms.retain(|t| !t.coeff.is_zero());
    Ok(SymBracket {
        terms,
        exact: inner.exact,
    })
}

/// `dim N_i/(A_h + Z(A₁))_i` for y-degrees `i = 1..=bound`: the normalizer
/// coefficients modulo `h^i F[x] + F[x^p]` (only `F` in characteristic 0).
pub fn normalizer_quotient_dims(ctx: &AhContext, bound: usize) -> Result<Vec<usize>, HochschildError> {
    let field = ctx.field();
    let dq = ctx.h_over_pi().degree().unwrap_or(0);
    let mut out = Vec::new();
    for i in 1..=bound {
        let central = ctx.p().is_some_and(|p| i % p == 0);
        if !central {
            out.push(dq);
            continue;
        }
        let p = ctx.p().expect("central degree");
        let m = ctx.h().pow(i);
        let n = m.degree().unwrap_or(0);
        // U = {r : deg r < n, h^{i−1} | r′}
        let hm1 = ctx.h().pow(i - 1);
        let mut img = EchelonBasis::new(field, n.max(1));
        for j in 0..n {
            img.insert(img.poly_vector(&Poly::x(field).pow(j).derivative().rem(&hm1)?));
        }
        let dim_u = img.relations().len();
        let mut w = EchelonBasis::new(field, n.max(1));
        for k in 0..=n {
            w.insert(w.poly_vector(&Poly::x(field).pow(p * k).rem(&m)?));
        }
        out.push(dim_u - w.rank());
    }
    Ok(out)
}

/// Structure of `HH¹(A_h)` over `Z(A_h)` in characteristic p.
#[derive(Clone, Debug)]
pub struct HH1CharPReport {
    pub p: usize,
    /// Free over the center iff `deg(h/π_h) = 0`.
    pub free_over_center: bool,
    /// `D_q̆` and `b̂f`: a basis in the free case, and always the generators of
    /// the image of `Res`.
    pub generators: (Derivation, Derivation),
    pub res_image_generators: (CenterDerivation, CenterDerivation),
    pub theta_quotient_dim: usize,
    pub s_basis: Vec<Poly>,
    /// `dim N_i/(A_h + Z(A₁))_i` for `i = 1..=bound`.
    pub normalizer_quotient_dims: Vec<usize>,
    /// Random `ad_a` (`a ∈ N(A_h)`) certified inner by an explicit witness (free case).
    pub inner_certificates: usize,
}

pub fn freeness_and_module_report_charp<R: Rng>(
    ctx: &AhContext,
    degree_bound: usize,
    rng: &mut R,
) -> Result<HH1CharPReport, HochschildError> {
    let d = ctx.charp()?;
    let free = ctx.h_over_pi().degree() == Some(0);
    let dq = d_qbreve(ctx)?;
    let bf = bhat_f(ctx)?;
    let res = (
        derivations::restrict_to_center(ctx, &dq)?,
        derivations::restrict_to_center(ctx, &bf)?,
    );
    let mut certs = 0;
    if free {
        for _ in 0..10 {
            let a = random::normalizer_element(rng, ctx, 2, d.p + 1);
            let ada = derivations::ad(ctx, &a)?;
            let w = is_inner(ctx, &ada)?
                .ok_or_else(|| HochschildError::NotExact("normalizer ad not inner in free case".into()))?;
            if derivations::ad(ctx, &w)? != ada || !ctx.ah_membership(&w) {
                return Err(HochschildError::NotExact(
                    "inner witness does not reproduce ad_a".into(),
                ));
            }
            certs += 1;
        }
    }
    Ok(HH1CharPReport {
        p: d.p,
        free_over_center: free,
        generators: (dq, bf),
        res_image_generators: res,
        theta_quotient_dim: d.theta_s.len(),
        s_basis: d.theta_s.clone(),
        normalizer_quotient_dims: normalizer_quotient_dims(ctx, degree_bound)?,
        inner_certificates: certs,
    })
}
