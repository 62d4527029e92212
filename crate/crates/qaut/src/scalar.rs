//! Coefficient scalars for the noncommutative algebra layer.
//!
//! The polynomial and rewriting layers are generic over [`Scalar`]; the
//! engine's working instantiation is [`GaussQ`], the field ℚ(i) of Gaussian
//! rationals with arbitrary-precision components.  Exactness is what makes
//! ideal-membership answers decisions rather than estimates, so everything on
//! the symbolic path stays in `GaussQ`; floating point appears only in the
//! numeric representation layer ([`crate::models`]).

use num::complex::Complex64;
use num::{BigRational, One, ToPrimitive, Zero};
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

/// Coefficient scalar for noncommutative *-polynomials.
///
/// Implementations must be fields with an involutive conjugation.  The
/// rewriting layer additionally requires [`ExactScalar`] so that zero tests
/// are exact.
pub trait Scalar:
    Clone
    + PartialEq
    + fmt::Debug
    + fmt::Display
    + Add<Output = Self>
    + Sub<Output = Self>
    + Mul<Output = Self>
    + Neg<Output = Self>
    + Zero
    + One
{
    /// Complex conjugate (identity on real scalars).
    fn conj(&self) -> Self;

    /// Multiplicative inverse; `None` for zero.
    fn inv(&self) -> Option<Self>;

    /// Embeds a machine integer.
    fn from_int(n: i64) -> Self;
}

/// Marker for scalars whose equality test is exact.  Rewriting, completion and
/// ideal membership are only available over such scalars.
pub trait ExactScalar: Scalar {}

/// A Gaussian rational: an element of ℚ(i) with exact rational components.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct GaussQ {
    /// Real part, exact.
    pub re: BigRational,
    /// Imaginary part, exact.
    pub im: BigRational,
}

impl GaussQ {
    pub fn new(re: BigRational, im: BigRational) -> Self {
        GaussQ { re, im }
    }

    /// The rational `p/q` as a Gaussian rational.
    ///
    /// # Panics
    /// Panics if `q == 0`.
    pub fn ratio(p: i64, q: i64) -> Self {
        assert!(q != 0, "denominator must be nonzero");
        GaussQ {
            re: BigRational::new(p.into(), q.into()),
            im: BigRational::zero(),
        }
    }

    /// The imaginary unit i.
    pub fn i() -> Self {
        GaussQ {
            re: BigRational::zero(),
            im: BigRational::one(),
        }
    }

    /// Squared modulus |z|² = re² + im², a nonnegative rational.
    pub fn norm_sqr(&self) -> BigRational {
        &self.re * &self.re + &self.im * &self.im
    }

    /// Nearest floating-point value, for hand-off to the numeric layer.
    pub fn to_c64(&self) -> Complex64 {
        Complex64::new(
            self.re.to_f64().unwrap_or(f64::NAN),
            self.im.to_f64().unwrap_or(f64::NAN),
        )
    }
}

impl From<i64> for GaussQ {
    fn from(n: i64) -> Self {
        GaussQ::from_int(n)
    }
}

impl Add for GaussQ {
    type Output = GaussQ;
    fn add(self, rhs: GaussQ) -> GaussQ {
        GaussQ {
            re: self.re + rhs.re,
            im: self.im + rhs.im,
        }
    }
}

impl Sub for GaussQ {
    type Output = GaussQ;
    fn sub(self, rhs: GaussQ) -> GaussQ {
        GaussQ {
            re: self.re - rhs.re,
            im: self.im - rhs.im,
        }
    }
}

impl Mul for GaussQ {
    type Output = GaussQ;
    fn mul(self, rhs: GaussQ) -> GaussQ {
        let re = &self.re * &rhs.re - &self.im * &rhs.im;
        let im = &self.re * &rhs.im + &self.im * &rhs.re;
        GaussQ { re, im }
    }
}

impl Neg for GaussQ {
    type Output = GaussQ;
    fn neg(self) -> GaussQ {
        GaussQ {
            re: -self.re,
            im: -self.im,
        }
    }
}

impl Zero for GaussQ {
    fn zero() -> Self {
        GaussQ {
            re: BigRational::zero(),
            im: BigRational::zero(),
        }
    }
    fn is_zero(&self) -> bool {
        self.re.is_zero() && self.im.is_zero()
    }
}

impl One for GaussQ {
    fn one() -> Self {
        GaussQ {
            re: BigRational::one(),
            im: BigRational::zero(),
        }
    }
}

impl Scalar for GaussQ {
    fn conj(&self) -> Self {
        GaussQ {
            re: self.re.clone(),
            im: -self.im.clone(),
        }
    }

    fn inv(&self) -> Option<Self> {
        if self.is_zero() {
            return None;
        }
        let n = self.norm_sqr();
        Some(GaussQ {
            re: &self.re / &n,
            im: -(&self.im / &n),
        })
    }

    fn from_int(n: i64) -> Self {
        GaussQ {
            re: BigRational::from_integer(n.into()),
            im: BigRational::zero(),
        }
    }
}

impl ExactScalar for GaussQ {}

impl fmt::Display for GaussQ {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.im.is_zero() {
            return write!(f, "{}", self.re);
        }
        if self.re.is_zero() {
            return write!(f, "{}i", self.im);
        }
        if self.im < BigRational::zero() {
            write!(f, "{}-{}i", self.re, -self.im.clone())
        } else {
            write!(f, "{}+{}i", self.re, self.im)
        }
    }
}

impl Scalar for Complex64 {
    fn conj(&self) -> Self {
        Complex64::conj(self)
    }

    fn inv(&self) -> Option<Self> {
        if self.re == 0.0 && self.im == 0.0 {
            None
        } else {
            Some(Complex64::new(1.0, 0.0) / self)
        }
    }

    fn from_int(n: i64) -> Self {
        Complex64::new(n as f64, 0.0)
    }
}
