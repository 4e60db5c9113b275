//! The weight field: exact rationals by default, binary floats with a
//! relative tolerance for interoperability.
//!
//! Mixed arithmetic promotes to `Float`, taking the larger of the two
//! tolerances. Equality on rationals is exact; on floats it is
//! `|x - y| <= tol * max(1, |x|, |y|)`.

use alloc::string::String;
use core::fmt;
use core::ops::{Add, AddAssign, Mul, MulAssign, Neg, Sub, SubAssign};
use core::str::FromStr;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};

use crate::error::Error;

/// Tolerance used by [`Scalar::float`].
pub const DEFAULT_TOLERANCE: f64 = 1e-9;

#[derive(Clone, Debug)]
pub enum Scalar {
    Rational(BigRational),
    Float { value: f64, tolerance: f64 },
}

impl Scalar {
    pub fn zero() -> Self {
        Scalar::Rational(BigRational::zero())
    }

    pub fn one() -> Self {
        Scalar::Rational(BigRational::one())
    }

    /// Exact `num/den`. Fails on a zero denominator.
    pub fn ratio(num: i64, den: i64) -> Result<Self, Error> {
        if den == 0 {
            return Err(Error::DivisionByZero);
        }
        Ok(Scalar::Rational(BigRational::new(num.into(), den.into())))
    }

    pub fn from_big(num: BigInt, den: BigInt) -> Result<Self, Error> {
        if den.is_zero() {
            return Err(Error::DivisionByZero);
        }
        Ok(Scalar::Rational(BigRational::new(num, den)))
    }

    pub fn float(value: f64) -> Self {
        Scalar::Float {
            value,
            tolerance: DEFAULT_TOLERANCE,
        }
    }

    pub fn float_with_tolerance(value: f64, tolerance: f64) -> Self {
        Scalar::Float {
            value,
            tolerance: tolerance.abs(),
        }
    }

    pub fn is_exact(&self) -> bool {
        matches!(self, Scalar::Rational(_))
    }

    pub fn as_rational(&self) -> Option<&BigRational> {
        match self {
            Scalar::Rational(r) => Some(r),
            Scalar::Float { .. } => None,
        }
    }

    pub fn to_f64(&self) -> f64 {
        match self {
            Scalar::Rational(r) => r.to_f64().unwrap_or(f64::NAN),
            Scalar::Float { value, .. } => *value,
        }
    }

    fn tolerance(&self) -> f64 {
        match self {
            Scalar::Rational(_) => 0.0,
            Scalar::Float { tolerance, .. } => *tolerance,
        }
    }

    /// Zero test under the active equality (absolute tolerance for floats).
    pub fn is_zero(&self) -> bool {
        match self {
            Scalar::Rational(r) => r.is_zero(),
            Scalar::Float { value, tolerance } => value.abs() <= *tolerance,
        }
    }

    pub fn inv(&self) -> Result<Self, Error> {
        if self.is_zero() {
            return Err(Error::DivisionByZero);
        }
        Ok(match self {
            Scalar::Rational(r) => Scalar::Rational(r.recip()),
            Scalar::Float { value, tolerance } => Scalar::Float {
                value: 1.0 / value,
                tolerance: *tolerance,
            },
        })
    }

    pub fn checked_div(&self, rhs: &Scalar) -> Result<Self, Error> {
        Ok(self * &rhs.inv()?)
    }

    pub fn pow(&self, exp: u32) -> Self {
        let mut acc = Scalar::one();
        for _ in 0..exp {
            acc = &acc * self;
        }
        acc
    }

    fn binary(
        &self,
        rhs: &Scalar,
        exact: impl FnOnce(&BigRational, &BigRational) -> BigRational,
        float: impl FnOnce(f64, f64) -> f64,
    ) -> Scalar {
        match (self, rhs) {
            (Scalar::Rational(a), Scalar::Rational(b)) => Scalar::Rational(exact(a, b)),
            _ => Scalar::Float {
                value: float(self.to_f64(), rhs.to_f64()),
                tolerance: self.tolerance().max(rhs.tolerance()),
            },
        }
    }
}

impl Default for Scalar {
    fn default() -> Self {
        Scalar::zero()
    }
}

impl From<i64> for Scalar {
    fn from(v: i64) -> Self {
        Scalar::Rational(BigRational::from_integer(v.into()))
    }
}

impl From<BigRational> for Scalar {
    fn from(v: BigRational) -> Self {
        Scalar::Rational(v)
    }
}

impl PartialEq for Scalar {
    fn eq(&self, other: &Self) -> bool {
        match (self, other) {
            (Scalar::Rational(a), Scalar::Rational(b)) => a == b,
            _ => {
                let (x, y) = (self.to_f64(), other.to_f64());
                let tol = self.tolerance().max(other.tolerance());
                (x - y).abs() <= tol * 1f64.max(x.abs()).max(y.abs())
            }
        }
    }
}

impl fmt::Display for Scalar {
    /// Rationals always print as `p/q`; floats print as decimal literals.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Scalar::Rational(r) => write!(f, "{}/{}", r.numer(), r.denom()),
            Scalar::Float { value, .. } => write!(f, "{value:?}"),
        }
    }
}

impl FromStr for Scalar {
    type Err = Error;

    /// Parses `p/q` or a bare integer `p` as an exact rational.
    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let bad = || Error::MalformedScalar(String::from(s));
        let s = s.trim();
        let (num, den) = match s.split_once('/') {
            Some((p, q)) => (p.trim(), q.trim()),
            None => (s, "1"),
        };
        let num: BigInt = num.parse().map_err(|_| bad())?;
        let den: BigInt = den.parse().map_err(|_| bad())?;
        if den.is_zero() {
            return Err(bad());
        }
        Ok(Scalar::Rational(BigRational::new(num, den)))
    }
}

macro_rules! forward_binop {
    ($trait:ident, $method:ident, $assign_trait:ident, $assign:ident, $exact:expr, $float:expr) => {
        impl $trait<&Scalar> for &Scalar {
            type Output = Scalar;
            fn $method(self, rhs: &Scalar) -> Scalar {
                self.binary(rhs, $exact, $float)
            }
        }
        impl $trait<Scalar> for Scalar {
            type Output = Scalar;
            fn $method(self, rhs: Scalar) -> Scalar {
                (&self).$method(&rhs)
            }
        }
        impl $trait<&Scalar> for Scalar {
            type Output = Scalar;
            fn $method(self, rhs: &Scalar) -> Scalar {
                (&self).$method(rhs)
            }
        }
        impl $trait<Scalar> for &Scalar {
            type Output = Scalar;
            fn $method(self, rhs: Scalar) -> Scalar {
                self.$method(&rhs)
            }
        }
        impl $assign_trait<&Scalar> for Scalar {
            fn $assign(&mut self, rhs: &Scalar) {
                *self = (&*self).$method(rhs);
            }
        }
        impl $assign_trait<Scalar> for Scalar {
            fn $assign(&mut self, rhs: Scalar) {
                *self = (&*self).$method(&rhs);
            }
        }
    };
}

forward_binop!(Add, add, AddAssign, add_assign, |a, b| a + b, |x, y| x + y);
forward_binop!(Sub, sub, SubAssign, sub_assign, |a, b| a - b, |x, y| x - y);
forward_binop!(Mul, mul, MulAssign, mul_assign, |a, b| a * b, |x, y| x * y);

impl Neg for &Scalar {
    type Output = Scalar;
    fn neg(self) -> Scalar {
        match self {
            Scalar::Rational(r) => Scalar::Rational(-r),
            Scalar::Float { value, tolerance } => Scalar::Float {
                value: -value,
                tolerance: *tolerance,
            },
        }
    }
}

impl Neg for Scalar {
    type Output = Scalar;
    fn neg(self) -> Scalar {
        -&self
    }
}

impl core::iter::Sum for Scalar {
    fn sum<I: Iterator<Item = Scalar>>(iter: I) -> Scalar {
        iter.fold(Scalar::zero(), |acc, x| acc + x)
    }
}

impl core::iter::Product for Scalar {
    fn product<I: Iterator<Item = Scalar>>(iter: I) -> Scalar {
        iter.fold(Scalar::one(), |acc, x| acc * x)
    }
}

/// Absolute value; used by float-mode reporting.
pub fn abs(x: &Scalar) -> Scalar {
    match x {
        Scalar::Rational(r) => Scalar::Rational(r.abs()),
        Scalar::Float { value, tolerance } => Scalar::Float {
            value: value.abs(),
            tolerance: *tolerance,
        },
    }
}
