//! User-supplied factorizations `h = c·∏ u_i^{α_i}`, always verified before use.

use crate::coeffpoly::{FieldSpec, Poly};

use super::AhError;

/// A factor list that has been checked against `h`: monic, nonconstant,
/// squarefree, pairwise coprime factors whose product is `h` up to a unit.
///
/// Irreducibility of the `u_i` is not certified (that would need a
/// factorization algorithm); everything derived from the list only uses
/// the coprimality and multiplicities.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FactorList {
    factors: Vec<(Poly, usize)>,
}

impl FactorList {
    pub fn factors(&self) -> &[(Poly, usize)] {
        &self.factors
    }

    /// `(u_i, α_i)` with `α_i > 1`.
    pub fn repeated(&self) -> Vec<(Poly, usize)> {
        self.factors.iter().filter(|(_, a)| *a > 1).cloned().collect()
    }
}

/// Check a proposed factorization of `h`.
pub fn verify_factors(h: &Poly, factors: Vec<(Poly, usize)>) -> Result<FactorList, AhError> {
    let bad = |m: String| AhError::BadFactors(m);
    let field = h.field();
    let mut prod = Poly::one(field);
    let mut out: Vec<(Poly, usize)> = Vec::new();
    for (u, a) in factors {
        if a == 0 {
            return Err(bad(format!("factor {u} has exponent 0")));
        }
        if u.is_constant() {
            return Err(bad(format!("factor {u} is constant")));
        }
        let u = u.monic();
        if !u.gcd_monic(&u.derivative())?.is_one() {
            return Err(bad(format!("factor {u} is not squarefree")));
        }
        for (v, _) in &out {
            if !u.gcd_monic(v)?.is_one() {
                return Err(bad(format!("factors {v} and {u} are not coprime")));
            }
        }
        prod = &prod * &u.pow(a);
        out.push((u, a));
    }
    if prod != h.monic() {
        return Err(bad(format!("product {prod} differs from monic h = {}", h.monic())));
    }
    Ok(FactorList { factors: out })
}

/// Parse `"u1^a1,u2^a2,..."`; an item without a trailing `^n` on an atom or
/// parenthesized group has exponent 1 (so `x^2+1` is the factor `x²+1`).
pub fn parse_factor_list(s: &str, field: FieldSpec) -> Result<Vec<(Poly, usize)>, AhError> {
    let mut out = Vec::new();
    for item in s.split(',') {
        let item = item.trim();
        if item.is_empty() {
            continue;
        }
        let (base, exp) = split_exponent(item);
        let u = Poly::parse(base, field).map_err(|e| AhError::BadFactors(format!("'{item}': {e}")))?;
        out.push((u, exp));
    }
    Ok(out)
}

fn split_exponent(item: &str) -> (&str, usize) {
    if let Some(k) = item.rfind('^') {
        let (base, e) = (item[..k].trim(), item[k + 1..].trim());
        if let Ok(n) = e.parse::<usize>() {
            let atom = base.chars().all(|c| c.is_ascii_alphanumeric())
                || (base.starts_with('(') && base.ends_with(')') && balanced_outer(base));
            if atom {
                return (base, n);
            }
        }
    }
    (item, 1)
}

/// True if the outer parentheses of `s` enclose the whole string.
fn balanced_outer(s: &str) -> bool {
    let mut depth = 0i32;
    for (i, c) in s.char_indices() {
        match c {
            '(' => depth += 1,
            ')' => {
                depth -= 1;
                if depth == 0 && i != s.len() - 1 {
                    return false;
                }
            }
            _ => {}
        }
    }
    depth == 0
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parse_and_verify() {
        let q = FieldSpec::rational();
        let h = Poly::parse("x^3*(x-1)^2", q).unwrap();
        let f = parse_factor_list("x^3, (x-1)^2", q).unwrap();
        assert_eq!(f[0].1, 3);
        assert_eq!(f[1].1, 2);
        let v = verify_factors(&h, f).unwrap();
        assert_eq!(v.repeated().len(), 2);
        let f = parse_factor_list("x^2+1", q).unwrap();
        assert_eq!(f[0].1, 1);
        assert!(verify_factors(&h, parse_factor_list("x^2,(x-1)^2", q).unwrap()).is_err());
        assert!(verify_factors(&h, parse_factor_list("x^2,x,(x-1)^2", q).unwrap()).is_err());
        assert!(verify_factors(&h, parse_factor_list("x^3,(x^2-2*x+1)", q).unwrap()).is_err());
    }
}
