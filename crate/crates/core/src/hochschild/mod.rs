//! The Lie algebra `HH¹(A_h)` of outer derivations: canonical classes and
//! their bracket in characteristic 0, the center / commutator split, the
//! nilpotent ideal `𝒩` and the Witt-algebra quotient; symbolic brackets and
//! the module structure over the center in characteristic p.

mod charp;

pub use charp::{
    bracket_charp, bracket_scaled, freeness_and_module_report_charp, gen_restriction, gen_to_derivation,
    normalizer_quotient_dims, terms_to_derivation, CharPGen, HH1CharPReport, SymBracket, SymTerm,
};

use std::collections::BTreeMap;
use std::fmt;

use thiserror::Error;

use crate::ahstructure::{pi_h, AhContext, AhError};
use crate::coeffpoly::{Coeff, EchelonBasis, FieldSpec, Poly, PolyError};
use crate::derivations::{self, decompose_ah_char0, Derivation, DerivationError};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum HochschildError {
    #[error("class has a nonzero central component; it is not in [HH, HH]")]
    NotInCommutator,
    #[error("no closed form for this pair: {0}")]
    Unsupported(String),
    #[error("closed form produced a non-polynomial quotient: {0}")]
    NotExact(String),
    #[error(transparent)]
    Derivation(#[from] DerivationError),
    #[error(transparent)]
    Ah(#[from] AhError),
    #[error(transparent)]
    Poly(#[from] PolyError),
}

/// A class `D_g + Σ_{n≥1} ad_{r_n a_n}` in `HH¹(A_h)`, characteristic 0.
///
/// Canonical when `deg g < deg h` and `deg r_n < deg(h/π_h)`; `n = 0` terms are
/// folded into `g` via `ad_{r a₀} = −D_{δ₀(r)}`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct HH1ClassChar0 {
    pub g: Poly,
    pub terms: BTreeMap<usize, Poly>,
}

impl HH1ClassChar0 {
    pub fn zero(field: FieldSpec) -> Self {
        HH1ClassChar0 {
            g: Poly::zero(field),
            terms: BTreeMap::new(),
        }
    }

    pub fn is_zero(&self) -> bool {
        self.g.is_zero() && self.terms.is_empty()
    }

    /// The class of `D_g`.
    pub fn d(ctx: &AhContext, g: &Poly) -> Self {
        HH1ClassChar0 {
            g: g.clone(),
            terms: BTreeMap::new(),
        }
        .canonicalize(ctx)
    }

    /// The class of `ad_{r a_n}` (any `n ≥ 0`).
    pub fn ad_r_a(ctx: &AhContext, r: &Poly, n: usize) -> Self {
        let mut c = HH1ClassChar0::zero(ctx.field());
        c.add_term(n, r, ctx);
        c.canonicalize(ctx)
    }

    fn add_term(&mut self, n: usize, r: &Poly, ctx: &AhContext) {
        if n == 0 {
            self.g = &self.g - &ctx.delta0(r);
        } else {
            let e = self.terms.entry(n).or_insert_with(|| Poly::zero(r.field()));
            *e = &*e + r;
        }
    }

    /// Reduce `g mod h` (`D_{qh}` is inner) and `r_n mod h/π_h` (`ad_{q h^n y^n}` is inner).
    pub fn canonicalize(mut self, ctx: &AhContext) -> Self {
        let mut terms = BTreeMap::new();
        for (n, r) in std::mem::take(&mut self.terms) {
            let r = r.rem(ctx.h_over_pi()).expect("nonzero modulus");
            if !r.is_zero() {
                terms.insert(n, r);
            }
        }
        HH1ClassChar0 {
            g: self.g.rem(ctx.h()).expect("nonzero h"),
            terms,
        }
    }

    /// A representing derivation.
    pub fn to_derivation(&self, ctx: &AhContext) -> Result<Derivation, DerivationError> {
        let mut d = derivations::d_g(ctx, &self.g);
        for (n, r) in &self.terms {
            d = &d + &derivations::ad_r_a_n(ctx, r, *n)?;
        }
        Ok(d)
    }

    pub fn scale(&self, c: &Coeff) -> Self {
        HH1ClassChar0 {
            g: self.g.scale(c),
            terms: self
                .terms
                .iter()
                .map(|(n, r)| (*n, r.scale(c)))
                .filter(|(_, r)| !r.is_zero())
                .collect(),
        }
    }

    pub fn add(&self, other: &Self, ctx: &AhContext) -> Self {
        let mut out = self.clone();
        out.g = &out.g + &other.g;
        for (n, r) in &other.terms {
            out.add_term(*n, r, ctx);
        }
        out.canonicalize(ctx)
    }

    pub fn sub(&self, other: &Self, ctx: &AhContext) -> Self {
        self.add(&other.scale(&-ctx.field().one()), ctx)
    }
}

impl fmt::Display for HH1ClassChar0 {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut parts = Vec::new();
        if !self.g.is_zero() {
            parts.push(format!("D[{}]", self.g));
        }
        for (n, r) in &self.terms {
            parts.push(format!("ad[({r})*a_{n}]"));
        }
        if parts.is_empty() {
            write!(f, "0")
        } else {
            write!(f, "{}", parts.join(" + "))
        }
    }
}

/// The canonical class of a derivation (characteristic 0).
pub fn canonical_class_char0(ctx: &AhContext, d: &Derivation) -> Result<HH1ClassChar0, HochschildError> {
    let dec = decompose_ah_char0(ctx, d)?;
    Ok(HH1ClassChar0 {
        g: dec.g,
        terms: dec.normalizer_terms.into_iter().collect(),
    })
}

/// `[D_g, ad_{r a_n}] = n·ad_{(gr mod h/π_h) a_{n−1}}`.
fn bracket_d_ad(ctx: &AhContext, g: &Poly, n: usize, r: &Poly) -> HH1ClassChar0 {
    if n == 0 {
        return HH1ClassChar0::zero(ctx.field());
    }
    let c = (g * r).scale(&ctx.field().from_u64(n as u64));
    HH1ClassChar0::ad_r_a(ctx, &c, n - 1)
}

/// `[ad_{r a_m}, ad_{s a_n}] = ad_{(m r δ₀(s) − n s δ₀(r)) a_{m+n−1}}`.
fn bracket_ad_ad(ctx: &AhContext, m: usize, r: &Poly, n: usize, s: &Poly) -> HH1ClassChar0 {
    if m + n == 0 {
        return HH1ClassChar0::zero(ctx.field());
    }
    let f = ctx.field();
    let q = &(r * &ctx.delta0(s)).scale(&f.from_u64(m as u64)) - &(s * &ctx.delta0(r)).scale(&f.from_u64(n as u64));
    HH1ClassChar0::ad_r_a(ctx, &q, m + n - 1)
}

/// The bracket of two classes from the closed formulas (characteristic 0).
pub fn bracket_char0(ctx: &AhContext, a: &HH1ClassChar0, b: &HH1ClassChar0) -> HH1ClassChar0 {
    let mut out = HH1ClassChar0::zero(ctx.field());
    for (n, s) in &b.terms {
        out = out.add(&bracket_d_ad(ctx, &a.g, *n, s), ctx);
    }
    for (m, r) in &a.terms {
        out = out.sub(&bracket_d_ad(ctx, &b.g, *m, r), ctx);
        for (n, s) in &b.terms {
            out = out.add(&bracket_ad_ad(ctx, *m, r, *n, s), ctx);
        }
    }
    out
}

/// Basis `D_{x^j h/π_h}`, `j < deg π_h`, of the center of `HH¹(A_h)`.
pub fn center_hh1_char0(ctx: &AhContext) -> Vec<HH1ClassChar0> {
    let dp = ctx.pi_h().degree().unwrap_or(0);
    (0..dp)
        .map(|j| HH1ClassChar0::d(ctx, &ctx.h_over_pi().shift(j)))
        .collect()
}

/// `π_{(h/π_h)}`, the product of the primes of multiplicity `> 1` in `h`.
pub fn pi_of_h_over_pi(ctx: &AhContext) -> Poly {
    pi_h(ctx.h_over_pi()).expect("h/π_h is nonzero")
}

/// The least `n` with `h/π_h | π_{(h/π_h)}^n`: the filtration `𝒩_j` vanishes at `j = n`.
pub fn nilpotency_index_bound(ctx: &AhContext) -> usize {
    let target = ctx.h_over_pi();
    let base = pi_of_h_over_pi(ctx);
    let mut acc = Poly::one(ctx.field());
    let mut n = 0;
    while !acc.is_divisible_by(target) {
        acc = &acc * &base;
        n += 1;
    }
    n
}

/// The class split as `Z ⊕ [HH, HH]`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CenterCommutatorSplit {
    /// `g` with `D_g` central (a multiple of `h/π_h` of degree `< deg h`).
    pub center: Poly,
    /// `r_n` for `n ≥ 0` with commutator part `Σ ad_{r_n a_n}`.
    pub commutator: BTreeMap<usize, Poly>,
}

/// Split `g` along `{deg < deg h} = (h/π_h)·V_{deg π_h} ⊕ δ₀(V_{deg(h/π_h)})`.
pub fn split_center_commutator(ctx: &AhContext, c: &HH1ClassChar0) -> Result<CenterCommutatorSplit, HochschildError> {
    let field = ctx.field();
    let dh = ctx.deg_h();
    let dp = ctx.pi_h().degree().unwrap_or(0);
    let dq = ctx.h_over_pi().degree().unwrap_or(0);
    let mut basis = EchelonBasis::new(field, dh.max(1));
    for j in 0..dp {
        basis.insert(basis.poly_vector(&ctx.h_over_pi().shift(j)));
    }
    for i in 0..dq {
        basis.insert(basis.poly_vector(&ctx.delta0(&Poly::x(field).pow(i))));
    }
    let (res, combo) = basis.reduce(basis.poly_vector(&c.g));
    if res.iter().any(|a| !a.is_zero()) {
        return Err(HochschildError::NotExact("g outside the spanned complement".into()));
    }
    let mut center = Poly::zero(field);
    let mut r0 = Poly::zero(field);
    for (k, a) in combo.iter().enumerate() {
        if k < dp {
            center = &center + &ctx.h_over_pi().shift(k).scale(a);
        } else {
            // D_{δ₀(x^i)} = −ad_{x^i a₀}
            r0 = &r0 - &Poly::monomial(a.clone(), k - dp);
        }
    }
    let mut commutator = c.terms.clone();
    if !r0.is_zero() {
        commutator.insert(0, r0);
    }
    Ok(CenterCommutatorSplit { center, commutator })
}

/// Membership in `𝒩_j`: no central part and every `r_n ∈ π_{(h/π_h)}^j·F[x]`
/// (`j = 1` is `𝒩`).
pub fn in_nilpotent_level(ctx: &AhContext, c: &HH1ClassChar0, j: usize) -> Result<bool, HochschildError> {
    let split = split_center_commutator(ctx, c)?;
    let m = pi_of_h_over_pi(ctx).pow(j);
    Ok(split.center.is_zero() && split.commutator.values().all(|r| r.is_divisible_by(&m)))
}

pub fn in_nilpotent(ctx: &AhContext, c: &HH1ClassChar0) -> Result<bool, HochschildError> {
    in_nilpotent_level(ctx, c, 1)
}

/// An element of `(F[x]/π_{(h/π_h)}) ⊗ W`, `W` the Witt algebra with basis
/// `w_m`, `m ≥ −1`, and `[w_m, w_n] = (n − m) w_{m+n}`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct WittClassElement {
    pub terms: BTreeMap<i64, Poly>,
}

impl WittClassElement {
    pub fn zero() -> Self {
        WittClassElement { terms: BTreeMap::new() }
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn single(ctx: &AhContext, r: &Poly, m: i64) -> Self {
        let mut w = WittClassElement::zero();
        w.add_term(ctx, m, r);
        w
    }

    fn add_term(&mut self, ctx: &AhContext, m: i64, r: &Poly) {
        if m < -1 {
            return;
        }
        let modulus = pi_of_h_over_pi(ctx);
        let e = self.terms.entry(m).or_insert_with(|| Poly::zero(r.field()));
        *e = (&*e + r).rem(&modulus).expect("nonzero modulus");
        if e.is_zero() {
            self.terms.remove(&m);
        }
    }

    pub fn bracket(&self, ctx: &AhContext, other: &Self) -> Self {
        let f = ctx.field();
        let mut out = WittClassElement::zero();
        for (m, r) in &self.terms {
            for (n, s) in &other.terms {
                let c = f.from_i64(n - m);
                out.add_term(ctx, m + n, &(r * s).scale(&c));
            }
        }
        out
    }
}

impl fmt::Display for WittClassElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        let parts: Vec<String> = self.terms.iter().map(|(m, r)| format!("({r}) (x) w_{m}")).collect();
        write!(f, "{}", parts.join(" + "))
    }
}

/// `[HH, HH]/𝒩 → (F[x]/π_{(h/π_h)}) ⊗ W`: `e_{g,m} = −ad_{g a_{m+1}} ↦ (g ϑ₀) ⊗ w_m`.
pub fn witt_map(ctx: &AhContext, c: &HH1ClassChar0) -> Result<WittClassElement, HochschildError> {
    let split = split_center_commutator(ctx, c)?;
    if !split.center.is_zero() {
        return Err(HochschildError::NotInCommutator);
    }
    let th = ctx.vartheta0();
    let mut w = WittClassElement::zero();
    for (n, r) in &split.commutator {
        // ad_{r a_n} = −e_{r, n−1}
        w.add_term(ctx, *n as i64 - 1, &-&(r * &th));
    }
    Ok(w)
}

/// Inverse of [`witt_map`]: `r ⊗ w_m ↦ e_{rυ, m}` with `υϑ₀ ≡ 1 (mod π_{(h/π_h)})`.
pub fn witt_inverse(ctx: &AhContext, w: &WittClassElement) -> Result<HH1ClassChar0, HochschildError> {
    let modulus = pi_of_h_over_pi(ctx);
    let upsilon = ctx
        .vartheta0()
        .inverse_mod(&modulus)?
        .ok_or_else(|| HochschildError::NotExact("vartheta_0 not invertible".into()))?;
    let mut out = HH1ClassChar0::zero(ctx.field());
    for (m, r) in &w.terms {
        out = out.add(&e_class(ctx, &(r * &upsilon), *m), ctx);
    }
    Ok(out)
}

/// The class `e_{g,m} = −ad_{g a_{m+1}}`, `m ≥ −1`.
pub fn e_class(ctx: &AhContext, g: &Poly, m: i64) -> HH1ClassChar0 {
    assert!(m >= -1, "Witt index must be at least -1");
    HH1ClassChar0::ad_r_a(ctx, &-g, (m + 1) as usize)
}

/// Summary of `HH¹(A_h)` in characteristic 0.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct HH1ReportChar0 {
    pub h: Poly,
    pub pi_h: Poly,
    pub h_over_pi: Poly,
    pub dim_center: usize,
    /// `g` for the central classes `D_g`.
    pub center_basis: Vec<Poly>,
    /// `π_{(h/π_h)}`: 𝒩 is cut out by divisibility by it.
    pub pi_of_h_over_pi: Poly,
    pub nilpotent_trivial: bool,
    pub nilpotency_index_bound: usize,
    /// Factors of multiplicity `> 1` (from a verified factor list).
    pub multiplicity_gt1_primes: Option<Vec<(Poly, usize)>>,
    /// Number of summands `F[x]/(u_i) ⊗ W` (from a verified factor list).
    pub witt_summand_count: Option<usize>,
    /// Dimension of `F[x]/π_{(h/π_h)}`, the coefficient ring of the Witt quotient.
    pub witt_coefficient_dim: usize,
    /// `deg(h/π_h)`: number of outer classes `ad_{r a_n}` per level `n`.
    pub outer_per_level: usize,
}

pub fn structure_report_char0(ctx: &AhContext) -> Result<HH1ReportChar0, HochschildError> {
    ctx.require_char_zero()?;
    let center = center_hh1_char0(ctx);
    let pq = pi_of_h_over_pi(ctx);
    let bound = nilpotency_index_bound(ctx);
    let repeated = ctx.factors().map(|f| f.repeated());
    Ok(HH1ReportChar0 {
        h: ctx.h().clone(),
        pi_h: ctx.pi_h().clone(),
        h_over_pi: ctx.h_over_pi().clone(),
        dim_center: center.len(),
        center_basis: center.into_iter().map(|c| c.g).collect(),
        witt_coefficient_dim: pq.degree().unwrap_or(0),
        pi_of_h_over_pi: pq,
        nilpotent_trivial: bound <= 1,
        nilpotency_index_bound: bound,
        witt_summand_count: repeated.as_ref().map(Vec::len),
        multiplicity_gt1_primes: repeated,
        outer_per_level: ctx.h_over_pi().degree().unwrap_or(0),
    })
}

#[cfg(test)]
mod tests;
