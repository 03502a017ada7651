//! Everything attached to a fixed `h ∈ F[x]`: the embedding `A_h ⊆ A₁`,
//! membership and `ŷ`-basis conversions, the maps `δ` and `δ₀`, the
//! polynomials `π_h` and `ϱ_h`, the center and the centralizer of `x`, the
//! normalizer test and, in characteristic p, the kernel `Θ` of
//! `r ↦ (r h^{p−1})^{(p−1)}` together with `h̄`, `q̆` and a complement `S`.

mod factors;

use std::fmt;

use thiserror::Error;

use crate::coeffpoly::{BiPoly, EchelonBasis, FieldSpec, Poly, PolyError};
use crate::weylcore::{WeylElement, WeylError};

pub use factors::{parse_factor_list, verify_factors, FactorList};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum AhError {
    #[error("h must be nonzero")]
    ZeroH,
    #[error("operation requires positive characteristic")]
    RequiresCharP,
    #[error("operation requires characteristic 0")]
    RequiresCharZero,
    #[error("element is not in A_h: h^{degree} does not divide the coefficient of y^{degree}")]
    NotInAh { degree: usize },
    #[error("element is not central in A_h")]
    NotCentral,
    #[error("element does not commute with x in A_h")]
    NotCentralizing,
    #[error("a_0 is realized only through delta0; request n >= 1")]
    ZeroIndex,
    #[error("{0} does not divide {1}")]
    NotDivisible(String, String),
    #[error("polynomial is not in the kernel of the Theta map")]
    NotInTheta,
    #[error("complement of im(delta) in Theta did not stabilize (dims {0:?})")]
    StabilizationFailed(Vec<usize>),
    #[error("factor list rejected: {0}")]
    BadFactors(String),
    #[error(transparent)]
    Poly(#[from] PolyError),
    #[error(transparent)]
    Weyl(#[from] WeylError),
}

/// `π_h = h/gcd(h, h′)` made monic: the monic generator of `{r : h | h′r}`.
pub fn pi_h(h: &Poly) -> Result<Poly, AhError> {
    if h.is_zero() {
        return Err(AhError::ZeroH);
    }
    let g = h.gcd_monic(&h.derivative())?;
    Ok(h.exact_div(&g)?.monic())
}

/// `ϱ_h`: the monic divisor of maximal degree of `h` lying in `F[x^p]`
/// (1 in characteristic 0). Computed from the squarefree decomposition
/// `h = c·∏ s_j^j` as `∏ s_j^{p⌊j/p⌋}`; over a perfect field every element
/// of `F[x^p]` is a p-th power, so no factorization is needed.
pub fn varrho_h(h: &Poly) -> Result<Poly, AhError> {
    if h.is_zero() {
        return Err(AhError::ZeroH);
    }
    let field = h.field();
    let Some(p) = field.prime() else {
        return Ok(Poly::one(field));
    };
    let p = p as usize;
    let mut acc = Poly::one(field);
    for (s, j) in h.squarefree_decomposition()? {
        acc = &acc * &s.pow(p * (j / p));
    }
    Ok(acc)
}

/// Invariants that exist only in positive characteristic.
#[derive(Clone, Debug)]
pub struct CharPData {
    pub p: usize,
    /// Frobenius components `h̄_0, …, h̄_{p−1}` of `h^{p−1}`, in `u = x^p`.
    pub hbar_components: Vec<Poly>,
    /// `δ^p(x)/h = h̄_{p−1}(x^p)`, as a polynomial in `x`.
    pub zeta_hat_coeff: Poly,
    /// Monic gcd of the `h̄_i` in `F[u]`.
    pub hbar: Poly,
    /// Bezout multipliers with `Σ q̆_i h̄_i = h̄` (in `u`).
    pub qbreve_components: Vec<Poly>,
    /// `q̆ = −Σ q̆_i(x^p) x^{p−1−i}`, satisfying `ϑ(q̆) = h̄`.
    pub qbreve: Poly,
    /// `h^p/ϱ_h`, an element of `F[x^p]` written in `x`.
    pub hp_over_varrho: Poly,
    /// The central element `ζ = h^p y^p`.
    pub zeta: WeylElement,
    /// Basis of the complement `S` of `im δ` in `Θ`.
    pub theta_s: Vec<Poly>,
}

/// `h` together with its cached invariants.
#[derive(Clone, Debug)]
pub struct AhContext {
    field: FieldSpec,
    h: Poly,
    hprime: Poly,
    pi_h: Poly,
    varrho_h: Poly,
    h_over_pi: Poly,
    pi_hprime_over_h: Poly,
    yhat: WeylElement,
    charp: Option<CharPData>,
    factors: Option<FactorList>,
}

/// Outcome of the normalizer test.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct NormalizerVerdict {
    pub in_normalizer: bool,
    /// First failing y-degree and the divisibility that failed.
    pub failure: Option<(usize, String)>,
}

/// An element of the centralizer `C_{A_h}(x)`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum CentralizerCoords {
    /// Characteristic 0: the centralizer is `F[x]`.
    Poly(Poly),
    /// Characteristic p: `Σ_{j<p} z_j(t₁, t₂)·x^j`, listed by `j`.
    Center(Vec<BiPoly>),
}

/// An element of `A_h` (membership checked at construction).
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct AhElement(WeylElement);

impl AhElement {
    pub fn value(&self) -> &WeylElement {
        &self.0
    }
    pub fn into_inner(self) -> WeylElement {
        self.0
    }
}

impl AhContext {
    /// Build the context for a nonzero `h`, computing every cached invariant.
    pub fn new(h: Poly) -> Result<Self, AhError> {
        if h.is_zero() {
            return Err(AhError::ZeroH);
        }
        let field = h.field();
        let hprime = h.derivative();
        let pi = pi_h(&h)?;
        let rho = varrho_h(&h)?;
        let h_over_pi = h.exact_div(&pi)?;
        let pi_hprime_over_h = (&pi * &hprime).exact_div(&h)?;
        let yhat = WeylElement::y(field).mul_poly_right(&h);
        let mut ctx = AhContext {
            field,
            h,
            hprime,
            pi_h: pi,
            varrho_h: rho,
            h_over_pi,
            pi_hprime_over_h,
            yhat,
            charp: None,
            factors: None,
        };
        if let Some(p) = field.prime() {
            ctx.charp = Some(ctx.build_charp(p as usize)?);
        }
        Ok(ctx)
    }

    /// Parse `h` and the characteristic.
    pub fn from_text(h: &str, characteristic: u64) -> Result<Self, ContextBuildError> {
        let field = FieldSpec::new(characteristic)?;
        let h = Poly::parse(h, field)?;
        Ok(Self::new(h)?)
    }

    /// Attach a factor list after verifying it against `h`.
    pub fn with_factors(mut self, factors: Vec<(Poly, usize)>) -> Result<Self, AhError> {
        self.factors = Some(verify_factors(&self.h, factors)?);
        Ok(self)
    }

    fn build_charp(&self, p: usize) -> Result<CharPData, AhError> {
        let field = self.field;
        let hp1 = self.h.pow(p - 1);
        let comps = hp1.frobenius_split()?;
        let zeta_hat_coeff = comps[p - 1].from_u()?;
        // multi-Bezout over F[u]
        let mut g = Poly::zero(field);
        let mut coefs = vec![Poly::zero(field); p];
        for (i, hi) in comps.iter().enumerate() {
            if hi.is_zero() {
                continue;
            }
            let (d, s, t) = g.ext_gcd(hi)?;
            for c in coefs.iter_mut().take(i) {
                *c = &*c * &s;
            }
            coefs[i] = t;
            g = d;
        }
        let mut qbreve = Poly::zero(field);
        for (i, qi) in coefs.iter().enumerate() {
            qbreve = &qbreve - &qi.from_u()?.shift(p - 1 - i);
        }
        let hp_over_varrho = self.h.pow(p).exact_div(&self.varrho_h)?;
        let zeta = WeylElement::monomial(self.h.pow(p), p);
        let mut data = CharPData {
            p,
            hbar_components: comps,
            zeta_hat_coeff,
            hbar: g,
            qbreve_components: coefs,
            qbreve,
            hp_over_varrho,
            zeta,
            theta_s: Vec::new(),
        };
        data.theta_s = self.compute_theta_s(&data)?;
        Ok(data)
    }

    pub fn field(&self) -> FieldSpec {
        self.field
    }

    pub fn h(&self) -> &Poly {
        &self.h
    }

    pub fn hprime(&self) -> &Poly {
        &self.hprime
    }

    pub fn deg_h(&self) -> usize {
        self.h.degree().expect("h nonzero")
    }

    pub fn pi_h(&self) -> &Poly {
        &self.pi_h
    }

    pub fn varrho_h(&self) -> &Poly {
        &self.varrho_h
    }

    pub fn h_over_pi(&self) -> &Poly {
        &self.h_over_pi
    }

    /// `π_h h′/h` (an exact quotient).
    pub fn pi_hprime_over_h(&self) -> &Poly {
        &self.pi_hprime_over_h
    }

    /// `ŷ = yh` in normal form `hy + h′`.
    pub fn yhat(&self) -> &WeylElement {
        &self.yhat
    }

    pub fn factors(&self) -> Option<&FactorList> {
        self.factors.as_ref()
    }

    pub fn charp(&self) -> Result<&CharPData, AhError> {
        self.charp.as_ref().ok_or(AhError::RequiresCharP)
    }

    pub fn p(&self) -> Option<usize> {
        self.charp.as_ref().map(|d| d.p)
    }

    pub fn require_char_zero(&self) -> Result<(), AhError> {
        if self.field.is_char_zero() {
            Ok(())
        } else {
            Err(AhError::RequiresCharZero)
        }
    }

    // ---- membership and the ŷ-basis ----------------------------------

    /// `a ∈ A_h` iff `h^i` divides the coefficient of `y^i` for every `i`.
    pub fn ah_membership(&self, a: &WeylElement) -> bool {
        self.first_non_member_degree(a).is_none()
    }

    fn first_non_member_degree(&self, a: &WeylElement) -> Option<usize> {
        a.terms()
            .find(|(i, r)| !r.is_divisible_by(&self.h.pow(*i)))
            .map(|(i, _)| i)
    }

    pub fn ah_element(&self, a: WeylElement) -> Result<AhElement, AhError> {
        match self.first_non_member_degree(&a) {
            None => Ok(AhElement(a)),
            Some(degree) => Err(AhError::NotInAh { degree }),
        }
    }

    /// Powers `ŷ^0, …, ŷ^n`.
    pub fn yhat_powers(&self, n: usize) -> Vec<WeylElement> {
        let mut v = vec![WeylElement::one(self.field)];
        for k in 1..=n {
            let next = &v[k - 1] * &self.yhat;
            v.push(next);
        }
        v
    }

    /// `Σ f_j ŷ^j` in normal form.
    pub fn yhat_expand(&self, coeffs: &[Poly]) -> WeylElement {
        let pows = self.yhat_powers(coeffs.len().saturating_sub(1));
        let mut out = WeylElement::zero(self.field);
        for (f, pw) in coeffs.iter().zip(&pows) {
            if !f.is_zero() {
                out = &out + &pw.mul_poly_left(f);
            }
        }
        out
    }

    /// Inverse of [`AhContext::yhat_expand`]: coefficients `f_j` with `a = Σ f_j ŷ^j`.
    pub fn yhat_collect(&self, a: &WeylElement) -> Result<Vec<Poly>, AhError> {
        let Some(n) = a.y_degree() else {
            return Ok(Vec::new());
        };
        let pows = self.yhat_powers(n);
        let mut out = vec![Poly::zero(self.field); n + 1];
        let mut rest = a.clone();
        while let Some(k) = rest.y_degree() {
            let fk = rest
                .coeff(k)
                .exact_div(&self.h.pow(k))
                .map_err(|_| AhError::NotInAh { degree: k })?;
            rest = &rest - &pows[k].mul_poly_left(&fk);
            out[k] = fk;
        }
        Ok(out)
    }

    // ---- δ, δ₀ and friends ---------------------------------------------

    /// `δ(f) = f′h`.
    pub fn delta(&self, f: &Poly) -> Poly {
        &f.derivative() * &self.h
    }

    /// `δ^p(x)`, via the closed form `h̄_{p−1}(x^p)·h`.
    pub fn delta_p_of_x(&self) -> Result<Poly, AhError> {
        Ok(&self.charp()?.zeta_hat_coeff * &self.h)
    }

    /// `δ₀(r) = (rπ_h)′ − r·π_h h′/h`, the action of `ad_{r a₀}` up to sign.
    pub fn delta0(&self, r: &Poly) -> Poly {
        &(r * &self.pi_h).derivative() - &(r * &self.pi_hprime_over_h)
    }

    /// `ϑ₀ = δ₀(1) = π_h′ − π_h h′/h`.
    pub fn vartheta0(&self) -> Poly {
        self.delta0(&Poly::one(self.field))
    }

    /// `a_n = π_h h^{n−1} y^n` for `n ≥ 1`.
    pub fn a_n_element(&self, n: usize) -> Result<WeylElement, AhError> {
        if n == 0 {
            return Err(AhError::ZeroIndex);
        }
        Ok(WeylElement::monomial(&self.pi_h * &self.h.pow(n - 1), n))
    }

    /// `r·a_n` as a Weyl element (`n ≥ 1`).
    pub fn r_a_n(&self, r: &Poly, n: usize) -> Result<WeylElement, AhError> {
        Ok(self.a_n_element(n)?.mul_poly_left(r))
    }

    // ---- center and centralizer (characteristic p) --------------------

    /// `ζ = h^p y^p`.
    pub fn zeta_element(&self) -> Result<&WeylElement, AhError> {
        Ok(&self.charp()?.zeta)
    }

    /// `ζ` in the `ŷ`-basis: `ŷ^p − (δ^p(x)/h)·ŷ`.
    pub fn zeta_yhat_form(&self) -> Result<Vec<Poly>, AhError> {
        let d = self.charp()?;
        let mut v = vec![Poly::zero(self.field); d.p + 1];
        v[d.p] = Poly::one(self.field);
        v[1] = -&d.zeta_hat_coeff;
        Ok(v)
    }

    /// The element `Σ c_k(x^p)·ζ^k` of the center.
    pub fn center_to_weyl(&self, z: &BiPoly) -> Result<WeylElement, AhError> {
        let d = self.charp()?;
        let mut out = WeylElement::zero(self.field);
        for (k, ck) in z.parts().iter().enumerate() {
            if ck.is_zero() {
                continue;
            }
            let coeff = &ck.from_u()? * &self.h.pow(k * d.p);
            out = &out + &WeylElement::monomial(coeff, k * d.p);
        }
        Ok(out)
    }

    /// Coordinates of a central element in `Z(A_h) = F[t₁, t₂]`, `t₁ = x^p`, `t₂ = ζ`.
    pub fn center_coords(&self, a: &WeylElement) -> Result<BiPoly, AhError> {
        let d = self.charp()?;
        let mut parts = Vec::new();
        for (i, r) in a.terms() {
            if i % d.p != 0 {
                return Err(AhError::NotCentral);
            }
            let k = i / d.p;
            let c = r
                .exact_div(&self.h.pow(i))
                .map_err(|_| AhError::NotCentral)?
                .to_u()
                .map_err(|_| AhError::NotCentral)?;
            if parts.len() <= k {
                parts.resize(k + 1, Poly::zero(self.field));
            }
            parts[k] = c;
        }
        Ok(BiPoly::from_parts(self.field, parts))
    }

    /// Decompose an element commuting with `x`.
    pub fn centralizer_x_coords(&self, f: &WeylElement) -> Result<CentralizerCoords, AhError> {
        let Some(d) = self.charp.as_ref() else {
            return f.as_poly().map(CentralizerCoords::Poly).ok_or(AhError::NotCentralizing);
        };
        let mut comps: Vec<Vec<Poly>> = vec![Vec::new(); d.p];
        for (i, r) in f.terms() {
            if i % d.p != 0 {
                return Err(AhError::NotCentralizing);
            }
            let k = i / d.p;
            let q = r.exact_div(&self.h.pow(i)).map_err(|_| AhError::NotCentralizing)?;
            for (j, qj) in q.frobenius_split()?.into_iter().enumerate() {
                let slot = &mut comps[j];
                if slot.len() <= k {
                    slot.resize(k + 1, Poly::zero(self.field));
                }
                slot[k] = qj;
            }
        }
        Ok(CentralizerCoords::Center(
            comps.into_iter().map(|c| BiPoly::from_parts(self.field, c)).collect(),
        ))
    }

    /// Inverse of the characteristic-p branch of [`AhContext::centralizer_x_coords`].
    pub fn centralizer_to_weyl(&self, comps: &[BiPoly]) -> Result<WeylElement, AhError> {
        let mut out = WeylElement::zero(self.field);
        for (j, z) in comps.iter().enumerate() {
            out = &out + &self.center_to_weyl(z)?.mul_poly_left(&Poly::x(self.field).pow(j));
        }
        Ok(out)
    }

    // ---- normalizer ---------------------------------------------------

    /// Membership in the normalizer of `A_h` in `A₁`.
    pub fn normalizer_test(&self, a: &WeylElement) -> NormalizerVerdict {
        for (i, r) in a.terms() {
            if i == 0 {
                continue;
            }
            let hpow = self.h.pow(i - 1);
            let central_degree = self.p().is_some_and(|p| i % p == 0);
            let (ok, what) = if central_degree {
                let d = r.derivative();
                (d.is_divisible_by(&hpow), format!("h^{} must divide r_{i}'", i - 1))
            } else {
                (
                    r.is_divisible_by(&(&self.pi_h * &hpow)),
                    format!("pi_h*h^{} must divide r_{i}", i - 1),
                )
            };
            if !ok {
                return NormalizerVerdict {
                    in_normalizer: false,
                    failure: Some((i, what)),
                };
            }
        }
        NormalizerVerdict {
            in_normalizer: true,
            failure: None,
        }
    }

    // ---- Θ and friends (characteristic p) -----------------------------

    /// `ϑ(r) = (r h^{p−1})^{(p−1)}`, returned as a polynomial in `u = x^p`.
    pub fn theta_p_map(&self, r: &Poly) -> Result<Poly, AhError> {
        let p = self.charp()?.p;
        Ok((r * &self.h.pow(p - 1)).nth_derivative(p - 1).to_u()?)
    }

    /// `(h̄, q̆)`.
    pub fn hbar_and_qbreve(&self) -> Result<(Poly, Poly), AhError> {
        let d = self.charp()?;
        Ok((d.hbar.clone(), d.qbreve.clone()))
    }

    /// Basis of the complement `S` of `im δ` inside `Θ`.
    pub fn theta_complement_s(&self) -> Result<&[Poly], AhError> {
        Ok(&self.charp()?.theta_s)
    }

    /// Polynomials of degree `< n` in `Θ`, as an echelon basis of the kernel.
    fn theta_kernel_below(&self, p: usize, n: usize) -> Result<Vec<Poly>, AhError> {
        let hp1 = self.h.pow(p - 1);
        let dim_u = (n + (p - 1) * self.deg_h()) / p + 1;
        let mut img = EchelonBasis::new(self.field, dim_u);
        for j in 0..n {
            let t = hp1.shift(j).nth_derivative(p - 1).to_u()?;
            img.insert(img.poly_vector(&t));
        }
        let mut ker = EchelonBasis::new(self.field, n.max(1));
        for rel in img.relations() {
            ker.insert(rel);
        }
        Ok(ker_rows(&ker, self.field))
    }

    fn compute_theta_s(&self, d: &CharPData) -> Result<Vec<Poly>, AhError> {
        let p = d.p;
        let dh = self.deg_h();
        let s = self.theta_kernel_below(p, dh)?;
        // guard: dim(Θ∩V_N) − dim(im δ ∩ V_N) must equal dim S for N = deg h + p, deg h + 2p
        let mut dims = vec![s.len()];
        for n in [dh + p, dh + 2 * p] {
            let theta_dim = self.theta_kernel_below(p, n)?.len();
            let im_delta_dim = (0..n - dh).filter(|j| j % p != p - 1).count();
            dims.push(theta_dim - im_delta_dim);
        }
        if dims.iter().any(|&k| k != dims[0]) {
            return Err(AhError::StabilizationFailed(dims));
        }
        Ok(s)
    }

    /// `dim_F Θ/im δ` (the size of the complement `S`).
    pub fn theta_quotient_dim(&self) -> Result<usize, AhError> {
        Ok(self.charp()?.theta_s.len())
    }

    /// Split `r ∈ Θ` as `r = s + δ(g)` with `s ∈ span S` (`s = r mod h`).
    pub fn theta_split(&self, r: &Poly) -> Result<(Poly, Poly), AhError> {
        if !self.theta_p_map(r)?.is_zero() {
            return Err(AhError::NotInTheta);
        }
        let (t, s) = r.divmod(&self.h)?;
        match t.antiderivative() {
            crate::coeffpoly::Antiderivative::Integral(g) => Ok((s, g)),
            crate::coeffpoly::Antiderivative::NotIntegrable { .. } => Err(AhError::NotInTheta),
        }
    }

    /// Coordinates of `s ∈ span S` in the stored basis.
    pub fn s_coordinates(&self, s: &Poly) -> Result<Vec<crate::coeffpoly::Coeff>, AhError> {
        let basis = self.theta_complement_s()?;
        let mut e = EchelonBasis::new(self.field, self.deg_h().max(1));
        for b in basis {
            e.insert(e.poly_vector(b));
        }
        let (res, combo) = e.reduce(e.poly_vector(s));
        if res.iter().any(|c| !c.is_zero()) {
            return Err(AhError::NotInTheta);
        }
        Ok(combo)
    }

    // ---- embeddings -----------------------------------------------------

    /// The embedding `A_g → A_f` (`f | g`) sending `x ↦ x`, `ỹ ↦ ŷ_f·(g/f)`,
    /// applied to `Σ c_j ỹ^j`; the image is returned inside `A₁`.
    pub fn embed_ag_into_af(g: &Poly, f: &Poly, a: &[Poly]) -> Result<WeylElement, AhError> {
        let r = g
            .exact_div(f)
            .map_err(|_| AhError::NotDivisible(f.to_string(), g.to_string()))?;
        let field = g.field();
        let yf = WeylElement::y(field).mul_poly_right(f);
        let image = yf.mul_poly_right(&r);
        let mut out = WeylElement::zero(field);
        let mut pw = WeylElement::one(field);
        for c in a {
            out = &out + &pw.mul_poly_left(c);
            pw = &pw * &image;
        }
        Ok(out)
    }
}

fn ker_rows(ker: &EchelonBasis, field: FieldSpec) -> Vec<Poly> {
    ker.basis_rows()
        .into_iter()
        .map(|v| Poly::from_coeffs(field, v))
        .collect()
}

/// Failure while building a context from text.
#[derive(Debug, Error)]
pub enum ContextBuildError {
    #[error(transparent)]
    Parse(#[from] crate::coeffpoly::ParseError),
    #[error(transparent)]
    Poly(#[from] PolyError),
    #[error(transparent)]
    Ah(#[from] AhError),
}

impl fmt::Display for NormalizerVerdict {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match &self.failure {
            None => write!(f, "in normalizer"),
            Some((i, why)) => write!(f, "not in normalizer: y^{i}: {why}"),
        }
    }
}
