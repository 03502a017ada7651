//! Coefficient fields: the rationals and prime fields 𝔽_p.

use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_bigint::{BigInt, BigUint};
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, ToPrimitive, Zero};
use serde::{Deserialize, Serialize};

use super::PolyError;

/// Characteristic of the coefficient field: 0 means ℚ, otherwise a prime p.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct FieldSpec {
    p: u64,
}

/// Largest prime characteristic accepted (keeps residue products inside u128).
pub const MAX_PRIME: u64 = (1 << 31) - 1;

impl FieldSpec {
    /// The field ℚ.
    pub const fn rational() -> Self {
        FieldSpec { p: 0 }
    }

    /// Build a field from its characteristic; `0` gives ℚ, otherwise `p` must be prime.
    pub fn new(characteristic: u64) -> Result<Self, PolyError> {
        if characteristic == 0 {
            return Ok(Self::rational());
        }
        if characteristic > MAX_PRIME || !is_prime(characteristic) {
            return Err(PolyError::BadCharacteristic(characteristic));
        }
        Ok(FieldSpec { p: characteristic })
    }

    pub fn characteristic(&self) -> u64 {
        self.p
    }

    pub fn is_char_zero(&self) -> bool {
        self.p == 0
    }

    /// `Some(p)` in positive characteristic.
    pub fn prime(&self) -> Option<u64> {
        (self.p != 0).then_some(self.p)
    }

    pub fn zero(&self) -> Coeff {
        self.from_i64(0)
    }

    pub fn one(&self) -> Coeff {
        self.from_i64(1)
    }

    pub fn from_i64(&self, n: i64) -> Coeff {
        if self.p == 0 {
            Coeff::Q(BigRational::from_integer(BigInt::from(n)))
        } else {
            Coeff::Fp {
                v: n.rem_euclid(self.p as i64) as u64,
                p: self.p,
            }
        }
    }

    pub fn from_u64(&self, n: u64) -> Coeff {
        if self.p == 0 {
            Coeff::Q(BigRational::from_integer(BigInt::from(n)))
        } else {
            Coeff::Fp {
                v: n % self.p,
                p: self.p,
            }
        }
    }

    pub fn from_bigint(&self, n: &BigInt) -> Coeff {
        if self.p == 0 {
            Coeff::Q(BigRational::from_integer(n.clone()))
        } else {
            let r = n.mod_floor(&BigInt::from(self.p));
            Coeff::Fp {
                v: r.to_u64().expect("residue fits"),
                p: self.p,
            }
        }
    }

    pub fn from_biguint(&self, n: &BigUint) -> Coeff {
        if self.p == 0 {
            Coeff::Q(BigRational::from_integer(BigInt::from(n.clone())))
        } else {
            let r = n % BigUint::from(self.p);
            Coeff::Fp {
                v: r.to_u64().expect("residue fits"),
                p: self.p,
            }
        }
    }

    /// The fraction `num/den`; fails when `den` vanishes in the field.
    pub fn from_ratio(&self, num: i64, den: i64) -> Result<Coeff, PolyError> {
        let d = self.from_i64(den).inv().ok_or(PolyError::DivisionByZero)?;
        Ok(self.from_i64(num) * d)
    }

    /// Binomial coefficient computed in ℤ, then mapped into the field.
    pub fn binomial(&self, n: usize, k: usize) -> Coeff {
        if k > n {
            return self.zero();
        }
        let b: BigUint = num_integer::binomial(BigUint::from(n), BigUint::from(k));
        self.from_biguint(&b)
    }

    /// n! mapped into the field.
    pub fn factorial(&self, n: usize) -> Coeff {
        let mut acc = BigUint::one();
        for i in 2..=n {
            acc *= BigUint::from(i);
        }
        self.from_biguint(&acc)
    }
}

impl fmt::Display for FieldSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.p == 0 {
            write!(f, "Q")
        } else {
            write!(f, "F_{}", self.p)
        }
    }
}

pub(crate) fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    let mut d = 2u64;
    while d * d <= n {
        if n.is_multiple_of(d) {
            return false;
        }
        d += 1;
    }
    true
}

/// A field element. Rationals are kept reduced; residues lie in `[0, p)`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub enum Coeff {
    Q(BigRational),
    Fp { v: u64, p: u64 },
}

impl Coeff {
    pub fn field(&self) -> FieldSpec {
        match self {
            Coeff::Q(_) => FieldSpec::rational(),
            Coeff::Fp { p, .. } => FieldSpec { p: *p },
        }
    }

    pub fn is_zero(&self) -> bool {
        match self {
            Coeff::Q(q) => q.is_zero(),
            Coeff::Fp { v, .. } => *v == 0,
        }
    }

    pub fn is_one(&self) -> bool {
        match self {
            Coeff::Q(q) => q.is_one(),
            Coeff::Fp { v, .. } => *v == 1,
        }
    }

    /// Multiplicative inverse, `None` for zero.
    pub fn inv(&self) -> Option<Coeff> {
        if self.is_zero() {
            return None;
        }
        Some(match self {
            Coeff::Q(q) => Coeff::Q(q.recip()),
            Coeff::Fp { v, p } => Coeff::Fp {
                v: pow_mod(*v, p - 2, *p),
                p: *p,
            },
        })
    }

    pub fn div(&self, other: &Coeff) -> Result<Coeff, PolyError> {
        Ok(self * &other.inv().ok_or(PolyError::DivisionByZero)?)
    }

    pub fn pow(&self, mut e: u64) -> Coeff {
        let mut base = self.clone();
        let mut acc = self.field().one();
        while e > 0 {
            if e & 1 == 1 {
                acc = &acc * &base;
            }
            base = &base * &base;
            e >>= 1;
        }
        acc
    }

    fn check(&self, other: &Coeff) {
        assert_eq!(self.field(), other.field(), "coefficient field mismatch");
    }
}

fn pow_mod(b: u64, mut e: u64, m: u64) -> u64 {
    let mut acc: u128 = 1;
    let mut base = (b % m) as u128;
    while e > 0 {
        if e & 1 == 1 {
            acc = acc * base % m as u128;
        }
        base = base * base % m as u128;
        e >>= 1;
    }
    acc as u64
}

impl Add<&Coeff> for &Coeff {
    type Output = Coeff;
    fn add(self, rhs: &Coeff) -> Coeff {
        self.check(rhs);
        match (self, rhs) {
            (Coeff::Q(a), Coeff::Q(b)) => Coeff::Q(a + b),
            (Coeff::Fp { v: a, p }, Coeff::Fp { v: b, .. }) => Coeff::Fp {
                v: ((*a as u128 + *b as u128) % *p as u128) as u64,
                p: *p,
            },
            _ => unreachable!(),
        }
    }
}

impl Sub<&Coeff> for &Coeff {
    type Output = Coeff;
    fn sub(self, rhs: &Coeff) -> Coeff {
        self + &(-rhs)
    }
}

impl Mul<&Coeff> for &Coeff {
    type Output = Coeff;
    fn mul(self, rhs: &Coeff) -> Coeff {
        self.check(rhs);
        match (self, rhs) {
            (Coeff::Q(a), Coeff::Q(b)) => Coeff::Q(a * b),
            (Coeff::Fp { v: a, p }, Coeff::Fp { v: b, .. }) => Coeff::Fp {
                v: ((*a as u128 * *b as u128) % *p as u128) as u64,
                p: *p,
            },
            _ => unreachable!(),
        }
    }
}

impl Neg for &Coeff {
    type Output = Coeff;
    fn neg(self) -> Coeff {
        match self {
            Coeff::Q(a) => Coeff::Q(-a),
            Coeff::Fp { v, p } => Coeff::Fp {
                v: if *v == 0 { 0 } else { p - v },
                p: *p,
            },
        }
    }
}

macro_rules! forward_owned {
    ($tr:ident, $m:ident) => {
        impl $tr<Coeff> for Coeff {
            type Output = Coeff;
            fn $m(self, rhs: Coeff) -> Coeff {
                (&self).$m(&rhs)
            }
        }
        impl $tr<&Coeff> for Coeff {
            type Output = Coeff;
            fn $m(self, rhs: &Coeff) -> Coeff {
                (&self).$m(rhs)
            }
        }
    };
}
forward_owned!(Add, add);
forward_owned!(Sub, sub);
forward_owned!(Mul, mul);

impl Neg for Coeff {
    type Output = Coeff;
    fn neg(self) -> Coeff {
        -&self
    }
}

impl fmt::Display for Coeff {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Coeff::Q(q) => {
                if q.denom().is_one() {
                    write!(f, "{}", q.numer())
                } else {
                    write!(f, "{}/{}", q.numer(), q.denom())
                }
            }
            Coeff::Fp { v, .. } => write!(f, "{v}"),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn primality_checked() {
        assert!(FieldSpec::new(4).is_err());
        assert!(FieldSpec::new(1).is_err());
        assert!(FieldSpec::new(7).is_ok());
        assert!(FieldSpec::new(0).unwrap().is_char_zero());
    }

    #[test]
    fn residues_reduced() {
        let f = FieldSpec::new(5).unwrap();
        assert_eq!(f.from_i64(-1), f.from_i64(4));
        assert_eq!(f.from_i64(3).inv().unwrap(), f.from_i64(2));
        assert_eq!(f.binomial(5, 2), f.zero());
        assert_eq!(f.factorial(4), f.from_i64(-1));
    }

    #[test]
    fn rationals_exact() {
        let q = FieldSpec::rational();
        let half = q.from_ratio(1, 2).unwrap();
        assert_eq!(&half + &half, q.one());
        assert_eq!(half.to_string(), "1/2");
        assert!(q.from_ratio(1, 0).is_err());
    }
}
