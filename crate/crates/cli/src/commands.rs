//! One function per subcommand; each returns a [`Report`].

use std::io::Read;

use ahder::derivations::{
    self, decompose_a1_charp, decompose_ah_char0, decompose_ah_charp, is_inner, Derivation, DerivationText,
    WeylDerivation,
};
use ahder::hochschild::{self, canonical_class_char0, center_hh1_char0};
use ahder::{AhContext, Poly, WeylElement};
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde_json::Value;

use crate::error::CliError;
use crate::report::Report;

/// `c₀ + c₁·ŷ + …` written with `yhat` as the variable.
pub fn yhat_form(coeffs: &[Poly]) -> String {
    let parts: Vec<String> = coeffs
        .iter()
        .enumerate()
        .filter(|(_, c)| !c.is_zero())
        .map(|(i, c)| {
            let v = if i == 1 {
                "yhat".to_string()
            } else {
                format!("yhat^{i}")
            };
            match i {
                0 => format!("{c}"),
                _ if c.is_one() => v,
                _ => format!("({c})*{v}"),
            }
        })
        .collect();
    if parts.is_empty() {
        "0".into()
    } else {
        parts.join(" + ")
    }
}

fn context_rows(r: &mut Report, ctx: &AhContext) {
    r.row("h", ctx.h().to_string())
        .row("characteristic", ctx.field().characteristic())
        .row("pi_h", ctx.pi_h().to_string())
        .row("varrho_h", ctx.varrho_h().to_string())
        .row("h_over_pi_h", ctx.h_over_pi().to_string());
    if let Some(f) = ctx.factors() {
        r.list("factors", f.factors().iter().map(|(u, e)| format!("({u})^{e}")));
    }
}

pub fn analyze(ctx: &AhContext, degree_bound: usize, seed: u64) -> Result<Report, CliError> {
    let mut r = Report::new("analyze");
    context_rows(&mut r, ctx);
    match ctx.p() {
        None => {
            let rep = hochschild::structure_report_char0(ctx)?;
            r.row("hh1_zero", rep.dim_center == 0 && rep.outer_per_level == 0)
                .row("center_dim", rep.dim_center)
                .list("center_basis", rep.center_basis.iter().map(|g| format!("D[{g}]")))
                .row("outer_per_level", rep.outer_per_level)
                .row("pi_of_h_over_pi", rep.pi_of_h_over_pi.to_string())
                .row("witt_coefficient_dim", rep.witt_coefficient_dim)
                .row("nilpotent_zero", rep.nilpotent_trivial)
                .row("nilpotency_index_bound", rep.nilpotency_index_bound);
            match &rep.multiplicity_gt1_primes {
                Some(ps) => {
                    r.row("witt_summands", ps.len())
                        .list("repeated_factors", ps.iter().map(|(u, e)| format!("({u})^{e}")));
                }
                None => {
                    r.row("witt_summands", Value::Null).row("repeated_factors", Value::Null);
                }
            }
        }
        Some(_) => {
            let d = ctx.charp()?;
            let mut rng = ChaCha8Rng::seed_from_u64(seed);
            let rep = hochschild::freeness_and_module_report_charp(ctx, degree_bound, &mut rng)?;
            r.row("p", d.p)
                .row("zeta", d.zeta.to_string())
                .row("zeta_in_yhat", yhat_form(&ctx.zeta_yhat_form()?))
                .row("hbar", d.hbar.to_string())
                .row("qbreve", d.qbreve.to_string())
                .row("hp_over_varrho", d.hp_over_varrho.to_string())
                .list("s_basis", &rep.s_basis)
                .row("theta_quotient_dim", rep.theta_quotient_dim)
                .row("free_over_center", rep.free_over_center)
                .row(
                    "rank_over_center",
                    if rep.free_over_center {
                        Value::from(2)
                    } else {
                        Value::Null
                    },
                )
                .row("res_d_qbreve", rep.res_image_generators.0.to_string())
                .row("res_bhat_f", rep.res_image_generators.1.to_string())
                .row("degree_bound", degree_bound)
                .row("normalizer_quotient_dims", rep.normalizer_quotient_dims.clone())
                .row("inner_certificates", rep.inner_certificates);
        }
    }
    Ok(r)
}

/// Read all of stdin as JSON.
pub fn read_stdin_json() -> Result<Value, CliError> {
    let mut s = String::new();
    std::io::stdin()
        .read_to_string(&mut s)
        .map_err(|e| CliError::Input(format!("cannot read stdin: {e}")))?;
    serde_json::from_str(&s).map_err(|e| CliError::Input(format!("invalid JSON on stdin: {e}")))
}

fn derivation_from_json(ctx: &AhContext, v: Value) -> Result<Derivation, CliError> {
    let t: DerivationText = serde_json::from_value(v)
        .map_err(|e| CliError::Input(format!("expected {{\"Dx\": ..., \"Dyhat\": ...}}: {e}")))?;
    Ok(Derivation::from_text(ctx, &t)?)
}

fn derivation_rows(r: &mut Report, prefix: &str, d: &Derivation) {
    r.row(&format!("{prefix}x"), d.dx().to_string())
        .row(&format!("{prefix}yhat"), d.dyhat().to_string());
}

pub fn classify(ctx: &AhContext, input: Value) -> Result<Report, CliError> {
    let d = derivation_from_json(ctx, input)?;
    let mut r = Report::new("classify");
    r.row("h", ctx.h().to_string())
        .row("characteristic", ctx.field().characteristic());
    derivation_rows(&mut r, "d_", &d);
    match ctx.p() {
        None => {
            let dec = decompose_ah_char0(ctx, &d)?;
            let class = canonical_class_char0(ctx, &d)?;
            r.row("verdict", if dec.is_inner() { "inner" } else { "outer" })
                .row("g", dec.g.to_string())
                .list(
                    "normalizer_terms",
                    dec.normalizer_terms.iter().map(|(n, q)| format!("({q})*a_{n}")),
                )
                .row("inner_witness", dec.inner_witness.to_string())
                .row("class", class.to_string());
            if dec.is_inner() {
                // unique up to an additive constant
                let form = yhat_form(&ctx.yhat_collect(&dec.inner_witness)?);
                r.row("witness", dec.inner_witness.to_string())
                    .row("witness_in_yhat", form);
            } else {
                r.row("witness", Value::Null).row("witness_in_yhat", Value::Null);
            }
        }
        Some(_) => {
            let dec = decompose_ah_charp(ctx, &d)?;
            let inner = is_inner(ctx, &d)?;
            r.row("verdict", if inner.is_some() { "inner" } else { "outer" })
                .row("u", dec.u.to_string())
                .row("v", dec.v.to_string())
                .row("s", dec.s.to_string())
                .row("normalizer_part", dec.normalizer_part.to_string())
                .row("inner_witness", dec.inner_witness.to_string())
                .row(
                    "witness",
                    inner.map(|w| Value::String(w.to_string())).unwrap_or(Value::Null),
                );
            if ctx.h().is_one() {
                // here ŷ = y and A_h = A₁
                let wd = WeylDerivation::new(d.dx().clone(), d.dyhat().clone());
                let a1 = decompose_a1_charp(&wd)?;
                r.row("a1_w", a1.w.to_string())
                    .row("a1_z", a1.z.to_string())
                    .row("a1_b", a1.b.to_string())
                    .row("a1_c", a1.c.to_string());
            }
        }
    }
    Ok(r)
}

pub fn bracket(ctx: &AhContext, input: Value) -> Result<Report, CliError> {
    let Value::Array(items) = input else {
        return Err(CliError::Input(
            "bracket expects a JSON array of two derivations".into(),
        ));
    };
    let [a, b]: [Value; 2] = items
        .try_into()
        .map_err(|v: Vec<Value>| CliError::Input(format!("bracket expects 2 derivations, got {}", v.len())))?;
    let d = derivation_from_json(ctx, a)?;
    let e = derivation_from_json(ctx, b)?;
    let br = d.bracket(ctx, &e)?;
    let mut r = Report::new("bracket");
    r.row("h", ctx.h().to_string())
        .row("characteristic", ctx.field().characteristic());
    derivation_rows(&mut r, "d_", &d);
    derivation_rows(&mut r, "e_", &e);
    derivation_rows(&mut r, "bracket_", &br);
    match ctx.p() {
        None => {
            let class = canonical_class_char0(ctx, &br)?;
            r.row("class", class.to_string());
        }
        Some(_) => {
            let res = derivations::restrict_to_center(ctx, &br)?;
            r.row("res", res.to_string());
        }
    }
    r.row("inner", is_inner(ctx, &br)?.is_some());
    Ok(r)
}

pub fn normalizer(ctx: &AhContext, element: &str) -> Result<Report, CliError> {
    let a = WeylElement::parse(element, ctx.field()).map_err(|err| CliError::Parse {
        what: "element".into(),
        err,
    })?;
    let v = ctx.normalizer_test(&a);
    let mut r = Report::new("normalizer");
    r.row("h", ctx.h().to_string())
        .row("characteristic", ctx.field().characteristic())
        .row("element", a.to_string())
        .row("in_a_h", ctx.ah_membership(&a))
        .row("in_normalizer", v.in_normalizer)
        .row("failure", v.failure.as_ref().map(|(i, why)| format!("y^{i}: {why}")));
    if v.in_normalizer {
        let d = derivations::ad(ctx, &a)?;
        derivation_rows(&mut r, "ad_image_", &d);
    }
    Ok(r)
}

pub fn center(ctx: &AhContext) -> Result<Report, CliError> {
    let mut r = Report::new("center");
    r.row("h", ctx.h().to_string())
        .row("characteristic", ctx.field().characteristic());
    match ctx.p() {
        None => {
            let basis = center_hh1_char0(ctx);
            r.row("center_of_a_h", "F")
                .row("hh1_center_dim", basis.len())
                .list("hh1_center_basis", basis.iter());
        }
        Some(p) => {
            let d = ctx.charp()?;
            r.list("center_generators", [format!("x^{p}"), "zeta".to_string()])
                .row("zeta", d.zeta.to_string())
                .row("zeta_in_yhat", yhat_form(&ctx.zeta_yhat_form()?))
                .row("zeta_hat_coeff", d.zeta_hat_coeff.to_string())
                .row("zeta_central", {
                    let x = WeylElement::x(ctx.field());
                    d.zeta.commutator(&x).is_zero() && d.zeta.commutator(ctx.yhat()).is_zero()
                });
        }
    }
    Ok(r)
}

pub fn exp_aut(ctx: &AhContext, g: &str, apply: Option<&str>) -> Result<Report, CliError> {
    let g = Poly::parse(g, ctx.field()).map_err(|err| CliError::Parse { what: "g".into(), err })?;
    let phi = derivations::aut_exp(ctx, &g);
    let mut r = Report::new("exp-aut");
    r.row("h", ctx.h().to_string())
        .row("characteristic", ctx.field().characteristic())
        .row("g", g.to_string())
        .row("image_x", "x")
        .row("image_yhat", phi.image_of_yhat(ctx).to_string());
    if let Some(a) = apply {
        let a = WeylElement::parse(a, ctx.field()).map_err(|err| CliError::Parse {
            what: "element".into(),
            err,
        })?;
        let img = phi.apply(ctx, &a)?;
        r.row("element", a.to_string()).row("image", img.to_string());
        if ctx.field().is_char_zero() {
            let series = derivations::exp_series(ctx, &g, &a)?;
            r.row("exp_series_agrees", series == img);
        }
    }
    Ok(r)
}
