//! Exact scalar fields.
//!
//! Everything above this module is generic over [`Scalar`]: the rationals
//! (arbitrary precision, always reduced) and prime fields `Fp<P>` with the
//! modulus fixed at compile time. Floating point types are deliberately not
//! implementors; rank and kernel computations here must be exact.

use std::fmt;
use std::ops::{Add, Div, Mul, Neg, Rem, Sub};
use std::str::FromStr;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{Num, One, Zero};
use rand::Rng;
use serde::{Deserialize, Serialize};

use crate::exactalg::{self, Echelon, Matrix};

/// Arbitrary-precision rational numbers.
pub type Rational = BigRational;

/// Identifies the coefficient field of a monad or matrix at runtime.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(tag = "type")]
pub enum FieldTag {
    #[serde(rename = "Q")]
    Q,
    #[serde(rename = "Fp")]
    Fp { p: u64 },
}

impl fmt::Display for FieldTag {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            FieldTag::Q => write!(f, "Q"),
            FieldTag::Fp { p } => write!(f, "F_{p}"),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
#[error("cannot parse {input:?} as an element of {field}")]
pub struct ParseScalarError {
    pub input: String,
    pub field: FieldTag,
}

/// An exact field usable as matrix and polynomial coefficients.
pub trait Scalar:
    Num + Neg<Output = Self> + Clone + Eq + fmt::Debug + fmt::Display + Send + Sync + 'static
{
    fn field() -> FieldTag;

    fn from_i64(v: i64) -> Self;

    /// Parses the canonical text form (`"a/b"` or `"a"` over Q, a decimal
    /// residue over F_p).
    fn parse(s: &str) -> Result<Self, ParseScalarError>;

    /// Draws a random element. Over F_p this is uniform; over Q it is a small
    /// integer, which keeps coefficient growth in check.
    fn sample<R: Rng + ?Sized>(rng: &mut R) -> Self;

    /// Multiplicative inverse. Panics on zero.
    fn inverse(&self) -> Self {
        assert!(!self.is_zero(), "inverse of zero");
        Self::one() / self.clone()
    }

    /// Row echelon form with pivot columns. The default is plain Gaussian
    /// elimination; fields with coefficient growth may override.
    fn echelon(m: &Matrix<Self>) -> Echelon<Self> {
        exactalg::gauss_echelon(m)
    }
}

impl Scalar for Rational {
    fn field() -> FieldTag {
        FieldTag::Q
    }

    fn from_i64(v: i64) -> Self {
        Rational::from_integer(BigInt::from(v))
    }

    fn parse(s: &str) -> Result<Self, ParseScalarError> {
        let err = || ParseScalarError { input: s.to_string(), field: FieldTag::Q };
        let t = s.trim();
        match t.split_once('/') {
            Some((a, b)) => {
                let num = BigInt::from_str(a).map_err(|_| err())?;
                let den = BigInt::from_str(b).map_err(|_| err())?;
                if den.is_zero() {
                    return Err(err());
                }
                Ok(Rational::new(num, den))
            }
            None => BigInt::from_str(t).map(Rational::from_integer).map_err(|_| err()),
        }
    }

    fn sample<R: Rng + ?Sized>(rng: &mut R) -> Self {
        Self::from_i64(rng.gen_range(-9..=9))
    }

    fn echelon(m: &Matrix<Self>) -> Echelon<Self> {
        exactalg::bareiss_echelon(m)
    }
}

const fn is_prime(p: u64) -> bool {
    if p < 2 {
        return false;
    }
    let mut d = 2;
    while d * d <= p {
        if p.is_multiple_of(d) {
            return false;
        }
        d += 1;
    }
    true
}

/// Residue class modulo the odd prime `P`, stored in `[0, P)`.
#[derive(Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Default)]
pub struct Fp<const P: u64>(u64);

impl<const P: u64> Fp<P> {
    const PRIME_CHECK: () = assert!(P > 2 && P < (1 << 62) && is_prime(P), "modulus must be an odd prime");

    pub fn new(v: u64) -> Self {
        #[allow(clippy::let_unit_value)]
        let () = Self::PRIME_CHECK;
        Fp(v % P)
    }

    pub fn value(self) -> u64 {
        self.0
    }

    pub const fn modulus() -> u64 {
        P
    }

    fn pow(self, mut e: u64) -> Self {
        let mut base = self;
        let mut acc = Fp::new(1);
        while e > 0 {
            if e & 1 == 1 {
                acc = acc * base;
            }
            base = base * base;
            e >>= 1;
        }
        acc
    }
}

impl<const P: u64> fmt::Debug for Fp<P> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.0)
    }
}

impl<const P: u64> fmt::Display for Fp<P> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.0)
    }
}

impl<const P: u64> Add for Fp<P> {
    type Output = Self;
    fn add(self, rhs: Self) -> Self {
        let s = self.0 + rhs.0;
        Fp(if s >= P { s - P } else { s })
    }
}

impl<const P: u64> Sub for Fp<P> {
    type Output = Self;
    fn sub(self, rhs: Self) -> Self {
        Fp(if self.0 >= rhs.0 { self.0 - rhs.0 } else { self.0 + P - rhs.0 })
    }
}

impl<const P: u64> Mul for Fp<P> {
    type Output = Self;
    fn mul(self, rhs: Self) -> Self {
        Fp(((self.0 as u128 * rhs.0 as u128) % P as u128) as u64)
    }
}

impl<const P: u64> Div for Fp<P> {
    type Output = Self;
    fn div(self, rhs: Self) -> Self {
        assert!(rhs.0 != 0, "division by zero in F_{P}");
        self * rhs.pow(P - 2)
    }
}

impl<const P: u64> Rem for Fp<P> {
    type Output = Self;
    fn rem(self, rhs: Self) -> Self {
        assert!(rhs.0 != 0, "remainder by zero in F_{P}");
        Fp(0)
    }
}

impl<const P: u64> Neg for Fp<P> {
    type Output = Self;
    fn neg(self) -> Self {
        Fp(if self.0 == 0 { 0 } else { P - self.0 })
    }
}

impl<const P: u64> Zero for Fp<P> {
    fn zero() -> Self {
        Fp::new(0)
    }
    fn is_zero(&self) -> bool {
        self.0 == 0
    }
}

impl<const P: u64> One for Fp<P> {
    fn one() -> Self {
        Fp::new(1)
    }
}

impl<const P: u64> Num for Fp<P> {
    type FromStrRadixErr = ParseScalarError;

    fn from_str_radix(s: &str, radix: u32) -> Result<Self, Self::FromStrRadixErr> {
        let v = BigInt::parse_bytes(s.trim().as_bytes(), radix)
            .ok_or_else(|| ParseScalarError { input: s.to_string(), field: FieldTag::Fp { p: P } })?;
        let r = ((v % BigInt::from(P)) + BigInt::from(P)) % BigInt::from(P);
        Ok(Fp::new(u64::try_from(r).expect("residue fits in u64")))
    }
}

impl<const P: u64> Scalar for Fp<P> {
    fn field() -> FieldTag {
        FieldTag::Fp { p: P }
    }

    fn from_i64(v: i64) -> Self {
        Fp::new(v.rem_euclid(P as i64) as u64)
    }

    fn parse(s: &str) -> Result<Self, ParseScalarError> {
        Self::from_str_radix(s, 10)
    }

    fn sample<R: Rng + ?Sized>(rng: &mut R) -> Self {
        Fp::new(rng.gen_range(0..P))
    }

    fn inverse(&self) -> Self {
        assert!(self.0 != 0, "inverse of zero");
        self.pow(P - 2)
    }
}

/// The sampling field used by default for randomized experiments.
pub type F101 = Fp<101>;

/// Rounds a rational to an integer if it is one.
pub fn rational_to_i64(q: &Rational) -> Option<i64> {
    if !q.is_integer() {
        return None;
    }
    i64::try_from(q.to_integer()).ok()
}

/// Primes accepted for `{"type":"Fp"}` documents. The modulus is a type
/// parameter, so runtime dispatch needs a closed list.
pub const SUPPORTED_PRIMES: &[u64] = &[
    3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37, 41, 43, 47, 53, 59, 61, 67, 71, 73, 79, 83, 89, 97,
    101, 103, 107, 109, 113, 127, 32003,
];

/// Runs `$body` with `$S` bound to the scalar type named by a [`FieldTag`].
///
/// Evaluates to `Result<_, UnsupportedField>`.
#[macro_export]
macro_rules! with_scalar {
    ($tag:expr, $S:ident => $body:expr) => {
        $crate::__with_scalar_impl!($tag, $S => $body;
            3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37, 41, 43, 47, 53, 59, 61, 67, 71, 73, 79, 83, 89,
            97, 101, 103, 107, 109, 113, 127, 32003)
    };
}

#[doc(hidden)]
#[macro_export]
macro_rules! __with_scalar_impl {
    ($tag:expr, $S:ident => $body:expr; $($p:literal),*) => {
        match $tag {
            $crate::FieldTag::Q => {
                #[allow(dead_code)]
                type $S = $crate::Rational;
                Ok($body)
            }
            $($crate::FieldTag::Fp { p: $p } => {
                #[allow(dead_code)]
                type $S = $crate::Fp<$p>;
                Ok($body)
            })*
            other => Err($crate::UnsupportedField(other)),
        }
    };
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, thiserror::Error)]
#[error("unsupported coefficient field {0}")]
pub struct UnsupportedField(pub FieldTag);

#[cfg(test)]
mod tests {
    use super::*;
    use rand::SeedableRng;

    type F7 = Fp<7>;

    #[test]
    fn prime_field_arithmetic() {
        let a = F7::new(3);
        let b = F7::new(5);
        assert_eq!((a + b).value(), 1);
        assert_eq!((a - b).value(), 5);
        assert_eq!((a * b).value(), 1);
        assert_eq!((a / b) * b, a);
        assert_eq!((-a).value(), 4);
        assert_eq!(a.inverse().value(), 5);
        assert_eq!(F7::from_i64(-1).value(), 6);
    }

    #[test]
    fn every_nonzero_residue_is_invertible() {
        for v in 1..101 {
            let x = F101::new(v);
            assert_eq!(x * x.inverse(), F101::one());
        }
    }

    #[test]
    fn rational_parse_reduces() {
        let q = Rational::parse("6/-4").unwrap();
        assert_eq!(q.to_string(), "-3/2");
        assert_eq!(Rational::parse("7").unwrap().to_string(), "7");
        assert!(Rational::parse("1/0").is_err());
        assert!(Rational::parse("x").is_err());
    }

    #[test]
    fn residue_parse_wraps() {
        assert_eq!(F101::parse("-1").unwrap().value(), 100);
        assert_eq!(F101::parse("205").unwrap().value(), 3);
        assert!(F101::parse("abc").is_err());
    }

    #[test]
    fn field_tag_json() {
        assert_eq!(serde_json::to_string(&FieldTag::Q).unwrap(), r#"{"type":"Q"}"#);
        assert_eq!(serde_json::to_string(&FieldTag::Fp { p: 101 }).unwrap(), r#"{"type":"Fp","p":101}"#);
        let t: FieldTag = serde_json::from_str(r#"{"type":"Fp","p":7}"#).unwrap();
        assert_eq!(t, FieldTag::Fp { p: 7 });
    }

    #[test]
    fn dispatch_macro_binds_type() {
        let r = with_scalar!(FieldTag::Fp { p: 13 }, S => S::field());
        assert_eq!(r, Ok(FieldTag::Fp { p: 13 }));
        let r = with_scalar!(FieldTag::Q, S => S::from_i64(2).to_string());
        assert_eq!(r, Ok("2".to_string()));
        assert!(with_scalar!(FieldTag::Fp { p: 9973 }, S => S::field()).is_err());
    }

    #[test]
    fn supported_prime_list_is_prime() {
        for &p in SUPPORTED_PRIMES {
            assert!(is_prime(p) && p > 2);
        }
    }

    #[test]
    fn sampling_is_seeded() {
        let mut a = rand_chacha::ChaCha8Rng::seed_from_u64(4);
        let mut b = rand_chacha::ChaCha8Rng::seed_from_u64(4);
        let xs: Vec<F101> = (0..10).map(|_| F101::sample(&mut a)).collect();
        let ys: Vec<F101> = (0..10).map(|_| F101::sample(&mut b)).collect();
        assert_eq!(xs, ys);
    }
}
