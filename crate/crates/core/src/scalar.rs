//! Scalar fields the operator algebra is generic over.
//!
//! [`Gauss`] is an exact Gaussian rational `a + b·i` with arbitrary-precision
//! components; [`C64`] is the double-precision complex backend.

use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_rational::BigRational;
use num_traits::{Signed, ToPrimitive};

use crate::rational::Rat;

pub use num_complex::Complex64 as C64;

/// Field operations needed by [`crate::Operator`].
pub trait Scalar: Clone + fmt::Debug + PartialEq + Send + Sync + 'static {
    /// True when arithmetic is exact and only literal zero counts as zero.
    const EXACT: bool;
    const NAME: &'static str;

    fn zero() -> Self;
    fn one() -> Self;
    fn from_gauss(g: &Gauss) -> Self;
    /// Real square root of a non-negative rational, if representable.
    fn sqrt_of(q: &BigRational) -> Option<Self>;

    fn is_zero(&self) -> bool;
    fn abs(&self) -> f64;

    fn plus(&self, rhs: &Self) -> Self;
    fn minus(&self, rhs: &Self) -> Self;
    fn times(&self, rhs: &Self) -> Self;
    fn negated(&self) -> Self;

    fn accumulate(&mut self, rhs: &Self) {
        *self = self.plus(rhs);
    }

    fn from_rational(q: &BigRational) -> Self {
        Self::from_gauss(&Gauss::real(q.clone()))
    }

    fn from_i64(n: i64) -> Self {
        Self::from_gauss(&Gauss::from(n))
    }

    /// Residual tolerance under which a float check counts as passing.
    fn tolerance() -> f64;
}

/// Exact complex rational `re + im·i` with [`Rat`] components.
#[derive(Clone, PartialEq, Eq, Hash, Default)]
pub struct Gauss {
    pub re: Rat,
    pub im: Rat,
}

impl Gauss {
    pub fn new(re: impl Into<Rat>, im: impl Into<Rat>) -> Self {
        Gauss {
            re: re.into(),
            im: im.into(),
        }
    }

    pub fn real(re: impl Into<Rat>) -> Self {
        Gauss {
            re: re.into(),
            im: Rat::int(0),
        }
    }

    pub fn imag(im: impl Into<Rat>) -> Self {
        Gauss {
            re: Rat::int(0),
            im: im.into(),
        }
    }

    pub fn i() -> Self {
        Gauss::imag(Rat::int(1))
    }

    pub fn ratio(num: i64, den: i64) -> Self {
        Gauss::real(Rat::new(num, den))
    }

    pub fn is_zero(&self) -> bool {
        self.re.is_zero() && self.im.is_zero()
    }

    pub fn is_real(&self) -> bool {
        self.im.is_zero()
    }

    pub fn conj(&self) -> Self {
        Gauss {
            re: self.re.clone(),
            im: -&self.im,
        }
    }

    pub fn norm_sqr(&self) -> Rat {
        &(&self.re * &self.re) + &(&self.im * &self.im)
    }

    /// Multiplicative inverse, `None` for zero.
    pub fn inv(&self) -> Option<Self> {
        let n = self.norm_sqr().recip()?;
        Some(Gauss {
            re: &self.re * &n,
            im: -&(&self.im * &n),
        })
    }

    pub fn to_c64(&self) -> C64 {
        C64::new(self.re.to_f64(), self.im.to_f64())
    }
}

impl From<i64> for Gauss {
    fn from(n: i64) -> Self {
        Gauss::real(Rat::int(n))
    }
}

impl From<BigRational> for Gauss {
    fn from(q: BigRational) -> Self {
        Gauss::real(q)
    }
}

impl<'a> Add<&'a Gauss> for &'a Gauss {
    type Output = Gauss;
    fn add(self, rhs: &Gauss) -> Gauss {
        Gauss {
            re: &self.re + &rhs.re,
            im: &self.im + &rhs.im,
        }
    }
}

impl<'a> Sub<&'a Gauss> for &'a Gauss {
    type Output = Gauss;
    fn sub(self, rhs: &Gauss) -> Gauss {
        Gauss {
            re: &self.re - &rhs.re,
            im: &self.im - &rhs.im,
        }
    }
}

impl<'a> Mul<&'a Gauss> for &'a Gauss {
    type Output = Gauss;
    fn mul(self, rhs: &Gauss) -> Gauss {
        // Purely real factors are by far the common case.
        if self.im.is_zero() && rhs.im.is_zero() {
            return Gauss::real(&self.re * &rhs.re);
        }
        Gauss {
            re: &(&self.re * &rhs.re) - &(&self.im * &rhs.im),
            im: &(&self.re * &rhs.im) + &(&self.im * &rhs.re),
        }
    }
}

impl Neg for &Gauss {
    type Output = Gauss;
    fn neg(self) -> Gauss {
        Gauss {
            re: -&self.re,
            im: -&self.im,
        }
    }
}

macro_rules! forward_owned {
    ($($tr:ident $m:ident),*) => {$(
        impl $tr for Gauss {
            type Output = Gauss;
            fn $m(self, rhs: Gauss) -> Gauss { (&self).$m(&rhs) }
        }
    )*};
}
forward_owned!(Add add, Sub sub, Mul mul);

impl Neg for Gauss {
    type Output = Gauss;
    fn neg(self) -> Gauss {
        -&self
    }
}

impl fmt::Display for Gauss {
    /// `3`, `-1/2`, `i`, `-2/3*i`, `(1/2+3*i)`.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let im_part = |f: &mut fmt::Formatter<'_>, im: &Rat| -> fmt::Result {
            if im.is_one() {
                write!(f, "i")
            } else {
                write!(f, "{im}*i")
            }
        };
        match (self.re.is_zero(), self.im.is_zero()) {
            (_, true) => write!(f, "{}", self.re),
            (true, false) => {
                if self.im.is_negative() {
                    write!(f, "-")?;
                }
                im_part(f, &self.im.abs())
            }
            (false, false) => {
                write!(f, "({}", self.re)?;
                write!(f, "{}", if self.im.is_negative() { "-" } else { "+" })?;
                im_part(f, &self.im.abs())?;
                write!(f, ")")
            }
        }
    }
}

impl fmt::Debug for Gauss {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

/// Exact square root of a non-negative rational, when both parts are perfect squares.
pub fn exact_sqrt(q: &BigRational) -> Option<BigRational> {
    if q.is_negative() {
        return None;
    }
    let n = q.numer().sqrt();
    let d = q.denom().sqrt();
    (&n * &n == *q.numer() && &d * &d == *q.denom()).then(|| BigRational::new(n, d))
}

impl Scalar for Gauss {
    const EXACT: bool = true;
    const NAME: &'static str = "exact";

    fn zero() -> Self {
        Gauss::default()
    }
    fn one() -> Self {
        Gauss::from(1)
    }
    fn from_gauss(g: &Gauss) -> Self {
        g.clone()
    }
    fn sqrt_of(q: &BigRational) -> Option<Self> {
        exact_sqrt(q).map(Gauss::real)
    }
    fn is_zero(&self) -> bool {
        Gauss::is_zero(self)
    }
    fn abs(&self) -> f64 {
        self.to_c64().norm()
    }
    fn plus(&self, rhs: &Self) -> Self {
        self + rhs
    }
    fn minus(&self, rhs: &Self) -> Self {
        self - rhs
    }
    fn times(&self, rhs: &Self) -> Self {
        self * rhs
    }
    fn negated(&self) -> Self {
        -self
    }
    fn accumulate(&mut self, rhs: &Self) {
        self.re += &rhs.re;
        self.im += &rhs.im;
    }
    fn from_rational(q: &BigRational) -> Self {
        Gauss::real(Rat::from(q))
    }
    fn tolerance() -> f64 {
        0.0
    }
}

impl Scalar for C64 {
    const EXACT: bool = false;
    const NAME: &'static str = "float";

    fn zero() -> Self {
        C64::new(0.0, 0.0)
    }
    fn one() -> Self {
        C64::new(1.0, 0.0)
    }
    fn from_gauss(g: &Gauss) -> Self {
        g.to_c64()
    }
    fn sqrt_of(q: &BigRational) -> Option<Self> {
        let x = q.to_f64()?;
        (x >= 0.0).then(|| C64::new(x.sqrt(), 0.0))
    }
    fn is_zero(&self) -> bool {
        self.re == 0.0 && self.im == 0.0
    }
    fn abs(&self) -> f64 {
        self.norm()
    }
    fn plus(&self, rhs: &Self) -> Self {
        self + rhs
    }
    fn minus(&self, rhs: &Self) -> Self {
        self - rhs
    }
    fn times(&self, rhs: &Self) -> Self {
        self * rhs
    }
    fn negated(&self) -> Self {
        -self
    }
    fn accumulate(&mut self, rhs: &Self) {
        *self += rhs;
    }
    fn tolerance() -> f64 {
        1e-10
    }
}

/// Parses `p`, `p/q` or a decimal-free signed rational.
pub fn parse_rational(s: &str) -> Option<BigRational> {
    let s = s.trim();
    let q: BigRational = s.parse().ok()?;
    Some(q)
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn q(n: i64, d: i64) -> BigRational {
        BigRational::new(n.into(), d.into())
    }

    #[test]
    fn display_forms() {
        assert_eq!(Gauss::ratio(-1, 2).to_string(), "-1/2");
        assert_eq!(Gauss::i().to_string(), "i");
        assert_eq!((-Gauss::i()).to_string(), "-i");
        assert_eq!(Gauss::imag(q(-2, 3)).to_string(), "-2/3*i");
        assert_eq!(Gauss::new(q(1, 2), q(3, 1)).to_string(), "(1/2+3*i)");
        assert_eq!(Gauss::new(q(1, 2), q(-1, 1)).to_string(), "(1/2-i)");
    }

    #[test]
    fn lowest_terms() {
        let g = Gauss::new(q(4, -6), q(10, 5));
        assert_eq!(g.re, Rat::new(-2, 3));
        assert_eq!(g.im, Rat::int(2));
    }

    #[test]
    fn i_squared() {
        assert_eq!(&Gauss::i() * &Gauss::i(), Gauss::from(-1));
    }

    #[test]
    fn sqrt_exactness() {
        assert_eq!(exact_sqrt(&q(9, 4)), Some(q(3, 2)));
        assert_eq!(exact_sqrt(&q(2, 1)), None);
        assert_eq!(exact_sqrt(&q(-1, 1)), None);
    }

    fn gauss() -> impl Strategy<Value = Gauss> {
        (-50i64..50, 1i64..20, -50i64..50, 1i64..20).prop_map(|(a, b, c, d)| Gauss::new(q(a, b), q(c, d)))
    }

    proptest! {
        #[test]
        fn field_laws(a in gauss(), b in gauss(), c in gauss()) {
            prop_assert_eq!(&(&a + &b) + &c, &a + &(&b + &c));
            prop_assert_eq!(&a * &(&b + &c), &(&a * &b) + &(&a * &c));
            prop_assert_eq!(&(&a * &b) * &c, &a * &(&b * &c));
            if let Some(inv) = b.inv() {
                prop_assert_eq!(&(&a * &b) * &inv, a.clone());
            }
        }
    }
}
