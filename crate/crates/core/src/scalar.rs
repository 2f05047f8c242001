//! The exact ground-field scalar: arbitrary-precision rationals by default,
//! with prime fields available as an alternative.
//!
//! All arithmetic in the crate flows through [`ExactScalar`]; nothing is ever
//! rounded. Values are kept in canonical form (reduced fraction with positive
//! denominator, or a residue in `0..p`).

use std::fmt;
use std::ops::{Add, AddAssign, Mul, MulAssign, Neg, Sub, SubAssign};

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};

/// The ground field a computation runs over.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Field {
    /// The rational numbers.
    Rational,
    /// The prime field with the given modulus.
    Prime(u64),
}

impl Field {
    /// Validates the field description (modulus must be prime).
    pub fn validated(self) -> Result<Field> {
        match self {
            Field::Rational => Ok(self),
            Field::Prime(p) => {
                if is_prime_u64(p) {
                    Ok(self)
                } else {
                    Err(Error::Parse(format!("{p} is not prime")))
                }
            }
        }
    }

    /// The additive identity of this field.
    pub fn zero(self) -> ExactScalar {
        match self {
            Field::Rational => ExactScalar::Rational(BigRational::zero()),
            Field::Prime(p) => ExactScalar::Prime { value: 0, modulus: p },
        }
    }

    /// The multiplicative identity of this field.
    pub fn one(self) -> ExactScalar {
        match self {
            Field::Rational => ExactScalar::Rational(BigRational::one()),
            Field::Prime(p) => ExactScalar::Prime { value: 1 % p, modulus: p },
        }
    }

    /// The image of the integer `n` in this field.
    pub fn from_i64(self, n: i64) -> ExactScalar {
        match self {
            Field::Rational => ExactScalar::Rational(BigRational::from_integer(BigInt::from(n))),
            Field::Prime(p) => {
                let r = n.rem_euclid(p as i64) as u64;
                ExactScalar::Prime { value: r % p, modulus: p }
            }
        }
    }

    /// Parses the canonical string form: `p/q` or `p` over the rationals,
    /// a plain residue over a prime field.
    pub fn parse(self, s: &str) -> Result<ExactScalar> {
        let s = s.trim();
        match self {
            Field::Rational => {
                let (num, den) = match s.split_once('/') {
                    Some((n, d)) => (n, d),
                    None => (s, "1"),
                };
                let n: BigInt = num
                    .parse()
                    .map_err(|_| Error::Parse(format!("bad numerator {num:?}")))?;
                let d: BigInt = den
                    .parse()
                    .map_err(|_| Error::Parse(format!("bad denominator {den:?}")))?;
                if d.is_zero() {
                    return Err(Error::Parse("zero denominator".into()));
                }
                Ok(ExactScalar::Rational(BigRational::new(n, d)))
            }
            Field::Prime(_) => {
                let n: i64 = s
                    .parse()
                    .map_err(|_| Error::Parse(format!("bad residue {s:?}")))?;
                Ok(self.from_i64(n))
            }
        }
    }
}

/// An exact element of the ground field.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum ExactScalar {
    /// A reduced fraction with positive denominator.
    Rational(BigRational),
    /// A residue modulo a prime.
    Prime { value: u64, modulus: u64 },
}

impl ExactScalar {
    /// Builds a rational from a numerator/denominator pair.
    pub fn ratio(num: i64, den: i64) -> ExactScalar {
        assert!(den != 0, "zero denominator");
        ExactScalar::Rational(BigRational::new(BigInt::from(num), BigInt::from(den)))
    }

    /// The field this scalar lives in.
    pub fn field(&self) -> Field {
        match self {
            ExactScalar::Rational(_) => Field::Rational,
            ExactScalar::Prime { modulus, .. } => Field::Prime(*modulus),
        }
    }

    pub fn is_zero(&self) -> bool {
        match self {
            ExactScalar::Rational(r) => r.is_zero(),
            ExactScalar::Prime { value, .. } => *value == 0,
        }
    }

    pub fn is_one(&self) -> bool {
        match self {
            ExactScalar::Rational(r) => r.is_one(),
            ExactScalar::Prime { value, modulus } => *value == 1 % *modulus,
        }
    }

    fn check_same_field(&self, other: &ExactScalar) {
        debug_assert_eq!(
            self.field(),
            other.field(),
            "scalars from different fields combined"
        );
        if self.field() != other.field() {
            panic!(
                "scalars from different fields combined: {:?} vs {:?}",
                self.field(),
                other.field()
            );
        }
    }

    /// Multiplicative inverse; `None` for zero.
    pub fn inverse(&self) -> Option<ExactScalar> {
        if self.is_zero() {
            return None;
        }
        Some(match self {
            ExactScalar::Rational(r) => ExactScalar::Rational(r.recip()),
            ExactScalar::Prime { value, modulus } => ExactScalar::Prime {
                value: mod_inverse(*value, *modulus),
                modulus: *modulus,
            },
        })
    }

    /// Exact division; errors on a zero divisor.
    pub fn div(&self, other: &ExactScalar) -> Result<ExactScalar> {
        self.check_same_field(other);
        let inv = other
            .inverse()
            .ok_or_else(|| Error::NotNormalizable("division by zero".into()))?;
        Ok(self.clone() * inv)
    }

    /// Renders the canonical string form (`p/q`, `p` when the denominator is 1).
    pub fn to_canonical_string(&self) -> String {
        match self {
            ExactScalar::Rational(r) => {
                if r.denom().is_one() {
                    r.numer().to_string()
                } else {
                    format!("{}/{}", r.numer(), r.denom())
                }
            }
            ExactScalar::Prime { value, .. } => value.to_string(),
        }
    }

    /// The rational value, if this scalar is rational.
    pub fn as_rational(&self) -> Option<&BigRational> {
        match self {
            ExactScalar::Rational(r) => Some(r),
            _ => None,
        }
    }

    /// True when the scalar equals the integer `n` in its field.
    pub fn eq_i64(&self, n: i64) -> bool {
        *self == self.field().from_i64(n)
    }

    /// Sign for rationals (-1, 0, 1); prime-field elements report 0 or 1.
    pub fn signum(&self) -> i8 {
        match self {
            ExactScalar::Rational(r) => {
                if r.is_zero() {
                    0
                } else if r.is_positive() {
                    1
                } else {
                    -1
                }
            }
            ExactScalar::Prime { value, .. } => {
                if *value == 0 {
                    0
                } else {
                    1
                }
            }
        }
    }
}

impl fmt::Display for ExactScalar {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.to_canonical_string())
    }
}

impl Add for ExactScalar {
    type Output = ExactScalar;
    fn add(self, rhs: ExactScalar) -> ExactScalar {
        self.check_same_field(&rhs);
        match (self, rhs) {
            (ExactScalar::Rational(a), ExactScalar::Rational(b)) => ExactScalar::Rational(a + b),
            (ExactScalar::Prime { value: a, modulus }, ExactScalar::Prime { value: b, .. }) => {
                ExactScalar::Prime {
                    value: add_mod(a, b, modulus),
                    modulus,
                }
            }
            _ => unreachable!(),
        }
    }
}

impl AddAssign for ExactScalar {
    fn add_assign(&mut self, rhs: ExactScalar) {
        *self = self.clone() + rhs;
    }
}

impl Sub for ExactScalar {
    type Output = ExactScalar;
    fn sub(self, rhs: ExactScalar) -> ExactScalar {
        self + (-rhs)
    }
}

impl SubAssign for ExactScalar {
    fn sub_assign(&mut self, rhs: ExactScalar) {
        *self = self.clone() - rhs;
    }
}

impl Mul for ExactScalar {
    type Output = ExactScalar;
    fn mul(self, rhs: ExactScalar) -> ExactScalar {
        self.check_same_field(&rhs);
        match (self, rhs) {
            (ExactScalar::Rational(a), ExactScalar::Rational(b)) => ExactScalar::Rational(a * b),
            (ExactScalar::Prime { value: a, modulus }, ExactScalar::Prime { value: b, .. }) => {
                ExactScalar::Prime {
                    value: mul_mod(a, b, modulus),
                    modulus,
                }
            }
            _ => unreachable!(),
        }
    }
}

impl MulAssign for ExactScalar {
    fn mul_assign(&mut self, rhs: ExactScalar) {
        *self = self.clone() * rhs;
    }
}

impl Neg for ExactScalar {
    type Output = ExactScalar;
    fn neg(self) -> ExactScalar {
        match self {
            ExactScalar::Rational(r) => ExactScalar::Rational(-r),
            ExactScalar::Prime { value, modulus } => ExactScalar::Prime {
                value: if value == 0 { 0 } else { modulus - value },
                modulus,
            },
        }
    }
}

fn add_mod(a: u64, b: u64, p: u64) -> u64 {
    ((a as u128 + b as u128) % p as u128) as u64
}

fn mul_mod(a: u64, b: u64, p: u64) -> u64 {
    ((a as u128 * b as u128) % p as u128) as u64
}

fn pow_mod(mut base: u64, mut exp: u64, p: u64) -> u64 {
    let mut acc: u64 = 1 % p;
    base %= p;
    while exp > 0 {
        if exp & 1 == 1 {
            acc = mul_mod(acc, base, p);
        }
        base = mul_mod(base, base, p);
        exp >>= 1;
    }
    acc
}

fn mod_inverse(a: u64, p: u64) -> u64 {
    // p is prime, a nonzero mod p.
    pow_mod(a, p - 2, p)
}

/// Deterministic Miller-Rabin for u64.
pub fn is_prime_u64(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    for p in [2u64, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37] {
        if n == p {
            return true;
        }
        if n % p == 0 {
            return false;
        }
    }
    let mut d = n - 1;
    let mut s = 0;
    while d % 2 == 0 {
        d /= 2;
        s += 1;
    }
    'witness: for a in [2u64, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37] {
        let mut x = pow_mod(a, d, n);
        if x == 1 || x == n - 1 {
            continue;
        }
        for _ in 0..s - 1 {
            x = mul_mod(x, x, n);
            if x == n - 1 {
                continue 'witness;
            }
        }
        return false;
    }
    true
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn rational(n: i64, d: i64) -> ExactScalar {
        ExactScalar::ratio(n, d)
    }

    #[test]
    fn canonical_strings() {
        assert_eq!(rational(6, 4).to_canonical_string(), "3/2");
        assert_eq!(rational(-6, 4).to_canonical_string(), "-3/2");
        assert_eq!(rational(8, 4).to_canonical_string(), "2");
        assert_eq!(rational(0, 7).to_canonical_string(), "0");
        let p = Field::Prime(7).from_i64(-3);
        assert_eq!(p.to_canonical_string(), "4");
    }

    #[test]
    fn parse_round_trips() {
        for s in ["0", "5", "-5", "3/2", "-11/13"] {
            let v = Field::Rational.parse(s).unwrap();
            assert_eq!(v.to_canonical_string(), s);
        }
        assert!(Field::Rational.parse("1/0").is_err());
        let v = Field::Prime(5).parse("7").unwrap();
        assert_eq!(v, Field::Prime(5).from_i64(2));
    }

    #[test]
    fn prime_field_inverses() {
        let f = Field::Prime(13);
        for v in 1..13 {
            let x = f.from_i64(v);
            let inv = x.inverse().unwrap();
            assert!((x * inv).is_one());
        }
        assert!(f.zero().inverse().is_none());
    }

    #[test]
    fn primality() {
        assert!(is_prime_u64(2));
        assert!(is_prime_u64(7));
        assert!(is_prime_u64(1_000_000_007));
        assert!(!is_prime_u64(1));
        assert!(!is_prime_u64(91));
        assert!(Field::Prime(6).validated().is_err());
    }

    fn arb_rational() -> impl Strategy<Value = ExactScalar> {
        (-50i64..=50, 1i64..=12).prop_map(|(n, d)| ExactScalar::ratio(n, d))
    }

    fn arb_fp() -> impl Strategy<Value = ExactScalar> {
        (0i64..31).prop_map(|v| Field::Prime(31).from_i64(v))
    }

    proptest! {
        #[test]
        fn rational_field_axioms(a in arb_rational(), b in arb_rational(), c in arb_rational()) {
            // associativity
            prop_assert_eq!((a.clone() + b.clone()) + c.clone(), a.clone() + (b.clone() + c.clone()));
            prop_assert_eq!((a.clone() * b.clone()) * c.clone(), a.clone() * (b.clone() * c.clone()));
            // commutativity
            prop_assert_eq!(a.clone() + b.clone(), b.clone() + a.clone());
            prop_assert_eq!(a.clone() * b.clone(), b.clone() * a.clone());
            // distributivity
            prop_assert_eq!(a.clone() * (b.clone() + c.clone()),
                            a.clone() * b.clone() + a.clone() * c.clone());
            // inverses
            if !a.is_zero() {
                prop_assert!((a.clone() * a.inverse().unwrap()).is_one());
            }
            prop_assert!((a.clone() - a.clone()).is_zero());
        }

        #[test]
        fn prime_field_axioms(a in arb_fp(), b in arb_fp(), c in arb_fp()) {
            prop_assert_eq!((a.clone() + b.clone()) + c.clone(), a.clone() + (b.clone() + c.clone()));
            prop_assert_eq!((a.clone() * b.clone()) * c.clone(), a.clone() * (b.clone() * c.clone()));
            prop_assert_eq!(a.clone() * (b.clone() + c.clone()),
                            a.clone() * b.clone() + a.clone() * c.clone());
            if !a.is_zero() {
                prop_assert!((a.clone() * a.inverse().unwrap()).is_one());
            }
        }
    }
}
