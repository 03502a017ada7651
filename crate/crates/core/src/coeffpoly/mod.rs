//! Exact coefficient fields and univariate polynomial arithmetic, including
//! the Frobenius bookkeeping needed in positive characteristic.

mod bipoly;
mod field;
pub mod linalg;
mod parse;
mod poly;

use num_bigint::BigInt;
use thiserror::Error;

pub use bipoly::BiPoly;
pub use field::{Coeff, FieldSpec, MAX_PRIME};
pub use linalg::EchelonBasis;
pub use parse::{parse_expr, ParseError, ParseTarget};
pub use poly::{Antiderivative, Poly};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum PolyError {
    #[error("characteristic {0} is neither 0 nor a prime below 2^31")]
    BadCharacteristic(u64),
    #[error("field mismatch: {0} vs {1}")]
    FieldMismatch(FieldSpec, FieldSpec),
    #[error("division by zero")]
    DivisionByZero,
    #[error("division is not exact")]
    NotExact,
    #[error("gcd(0, 0) is undefined")]
    ZeroGcd,
    #[error("operation requires positive characteristic")]
    RequiresCharP,
    #[error("polynomial does not lie in F[x^p]")]
    NotInFrobeniusSubring,
    #[error("expected {expected} Frobenius components, got {got}")]
    ComponentCount { expected: usize, got: usize },
}

impl ParseTarget for Poly {
    fn field(&self) -> FieldSpec {
        Poly::field(self)
    }
    fn from_integer(field: FieldSpec, n: &BigInt) -> Self {
        Poly::constant(field.from_bigint(n))
    }
    fn variable(field: FieldSpec, name: char) -> Option<Self> {
        (name == 'x').then(|| Poly::x(field))
    }
    fn t_add(&self, other: &Self) -> Self {
        self + other
    }
    fn t_sub(&self, other: &Self) -> Self {
        self - other
    }
    fn t_mul(&self, other: &Self) -> Self {
        self * other
    }
    fn t_neg(&self) -> Self {
        -self
    }
    fn t_pow(&self, e: usize) -> Self {
        Poly::pow(self, e)
    }
    fn div_const(&self, other: &Self) -> Option<Self> {
        if other.degree() != Some(0) {
            return None;
        }
        Some(self.scale(&other.coeff(0).inv()?))
    }
}

impl Poly {
    /// Parse the text grammar (`x^3 - 2*x + 1`, rational constants as `1/2`).
    pub fn parse(s: &str, field: FieldSpec) -> Result<Poly, ParseError> {
        parse_expr(s, field)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parse_roundtrip() {
        let q = FieldSpec::rational();
        let f = Poly::parse("x^3 - 2*x + 1", q).unwrap();
        assert_eq!(f.to_string(), "1 - 2*x + x^3");
        assert_eq!(Poly::parse(&f.to_string(), q).unwrap(), f);
        let g = Poly::parse("x/2 - 3/4", q).unwrap();
        assert_eq!(g.to_string(), "-3/4 + 1/2*x");
        assert_eq!(Poly::parse(&g.to_string(), q).unwrap(), g);
        let f5 = FieldSpec::new(5).unwrap();
        assert_eq!(Poly::parse("7*x - 1", f5).unwrap().to_string(), "4 + 2*x");
    }

    #[test]
    fn parse_errors_carry_position() {
        let q = FieldSpec::rational();
        let e = Poly::parse("x + $", q).unwrap_err();
        assert_eq!(e.pos, 4);
        let e = Poly::parse("x + y", q).unwrap_err();
        assert_eq!(e.pos, 4);
        assert!(Poly::parse("x/(x+1)", q).is_err());
        assert!(Poly::parse("(x+1", q).is_err());
    }
}
