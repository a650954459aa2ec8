//! Exact rationals with an inline fast path for word-sized values.

use std::cmp::Ordering;
use std::fmt;
use std::hash::{Hash, Hasher};
use std::ops::{Add, AddAssign, Div, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};

/// Rational number in lowest terms with positive denominator.
///
/// Values whose numerator and denominator fit in `i64` are stored inline and
/// combined with `i128` intermediates; anything larger falls back to
/// [`BigRational`]. The representation is canonical: a value is `Big` only
/// when it does not fit inline.
#[derive(Clone)]
pub enum Rat {
    Small(i64, i64),
    Big(BigRational),
}

impl Rat {
    pub fn int(n: i64) -> Self {
        Rat::Small(n, 1)
    }

    pub fn new(n: i64, d: i64) -> Self {
        assert!(d != 0, "zero denominator");
        reduce(n as i128, d as i128)
    }

    pub fn is_zero(&self) -> bool {
        matches!(self, Rat::Small(0, _))
    }

    pub fn is_one(&self) -> bool {
        matches!(self, Rat::Small(1, 1))
    }

    pub fn is_negative(&self) -> bool {
        match self {
            Rat::Small(n, _) => *n < 0,
            Rat::Big(q) => q.is_negative(),
        }
    }

    pub fn is_integer(&self) -> bool {
        match self {
            Rat::Small(_, d) => *d == 1,
            Rat::Big(q) => q.is_integer(),
        }
    }

    pub fn abs(&self) -> Rat {
        if self.is_negative() {
            -self
        } else {
            self.clone()
        }
    }

    pub fn to_big(&self) -> BigRational {
        match self {
            Rat::Small(n, d) => BigRational::new_raw(BigInt::from(*n), BigInt::from(*d)),
            Rat::Big(q) => q.clone(),
        }
    }

    pub fn to_f64(&self) -> f64 {
        match self {
            Rat::Small(n, d) => *n as f64 / *d as f64,
            Rat::Big(q) => q.to_f64().unwrap_or(f64::NAN),
        }
    }

    pub fn recip(&self) -> Option<Rat> {
        match self {
            Rat::Small(0, _) => None,
            Rat::Small(n, d) => Some(reduce(*d as i128, *n as i128)),
            Rat::Big(q) => Some(Rat::from(q.recip())),
        }
    }
}

fn reduce(mut n: i128, mut d: i128) -> Rat {
    if d < 0 {
        n = -n;
        d = -d;
    }
    if d != 1 {
        let g = match (u64::try_from(n.unsigned_abs()), u64::try_from(d)) {
            (Ok(a), Ok(b)) => binary_gcd(a, b) as i128,
            _ => n.gcd(&d),
        };
        if g > 1 {
            n /= g;
            d /= g;
        }
    }
    match (i64::try_from(n), i64::try_from(d)) {
        (Ok(n), Ok(d)) => Rat::Small(n, if n == 0 { 1 } else { d }),
        _ => Rat::Big(BigRational::new(BigInt::from(n), BigInt::from(d))),
    }
}

fn binary_gcd(mut a: u64, mut b: u64) -> u64 {
    if a == 0 {
        return b;
    }
    if b == 0 {
        return a;
    }
    let shift = (a | b).trailing_zeros();
    a >>= a.trailing_zeros();
    loop {
        b >>= b.trailing_zeros();
        if a > b {
            std::mem::swap(&mut a, &mut b);
        }
        b -= a;
        if b == 0 {
            return a << shift;
        }
    }
}

impl From<BigRational> for Rat {
    fn from(q: BigRational) -> Self {
        match (q.numer().to_i64(), q.denom().to_i64()) {
            (Some(n), Some(d)) => Rat::Small(n, d),
            _ => Rat::Big(q),
        }
    }
}

impl From<&BigRational> for Rat {
    fn from(q: &BigRational) -> Self {
        match (q.numer().to_i64(), q.denom().to_i64()) {
            (Some(n), Some(d)) => Rat::Small(n, d),
            _ => Rat::Big(q.clone()),
        }
    }
}

impl From<i64> for Rat {
    fn from(n: i64) -> Self {
        Rat::int(n)
    }
}

impl Default for Rat {
    fn default() -> Self {
        Rat::int(0)
    }
}

impl PartialEq for Rat {
    fn eq(&self, other: &Rat) -> bool {
        match (self, other) {
            (Rat::Small(a, b), Rat::Small(c, d)) => a == c && b == d,
            (Rat::Big(x), Rat::Big(y)) => x == y,
            // canonical form: a Big never equals a Small
            _ => false,
        }
    }
}

impl Eq for Rat {}

impl Hash for Rat {
    fn hash<H: Hasher>(&self, state: &mut H) {
        match self {
            Rat::Small(n, d) => (0u8, n, d).hash(state),
            Rat::Big(q) => (1u8, q).hash(state),
        }
    }
}

impl PartialOrd for Rat {
    fn partial_cmp(&self, other: &Rat) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for Rat {
    fn cmp(&self, other: &Rat) -> Ordering {
        match (self, other) {
            (Rat::Small(a, b), Rat::Small(c, d)) => (*a as i128 * *d as i128).cmp(&(*c as i128 * *b as i128)),
            _ => self.to_big().cmp(&other.to_big()),
        }
    }
}

impl<'a> Add<&'a Rat> for &'a Rat {
    type Output = Rat;
    fn add(self, rhs: &Rat) -> Rat {
        match (self, rhs) {
            (Rat::Small(a, 1), Rat::Small(c, 1)) => reduce(*a as i128 + *c as i128, 1),
            (Rat::Small(a, b), Rat::Small(c, d)) => reduce(
                *a as i128 * *d as i128 + *c as i128 * *b as i128,
                *b as i128 * *d as i128,
            ),
            _ => Rat::from(self.to_big() + rhs.to_big()),
        }
    }
}

impl<'a> Sub<&'a Rat> for &'a Rat {
    type Output = Rat;
    fn sub(self, rhs: &Rat) -> Rat {
        self + &(-rhs)
    }
}

impl<'a> Mul<&'a Rat> for &'a Rat {
    type Output = Rat;
    fn mul(self, rhs: &Rat) -> Rat {
        match (self, rhs) {
            (Rat::Small(0, _), _) | (_, Rat::Small(0, _)) => Rat::int(0),
            (Rat::Small(a, b), Rat::Small(c, d)) => reduce(*a as i128 * *c as i128, *b as i128 * *d as i128),
            _ => Rat::from(self.to_big() * rhs.to_big()),
        }
    }
}

impl<'a> Div<&'a Rat> for &'a Rat {
    type Output = Rat;
    #[allow(clippy::suspicious_arithmetic_impl)]
    fn div(self, rhs: &Rat) -> Rat {
        self * &rhs.recip().expect("division by zero")
    }
}

impl Neg for &Rat {
    type Output = Rat;
    fn neg(self) -> Rat {
        match self {
            Rat::Small(n, d) => match n.checked_neg() {
                Some(m) => Rat::Small(m, *d),
                None => Rat::from(-self.to_big()),
            },
            Rat::Big(q) => Rat::from(-q.clone()),
        }
    }
}

impl Neg for Rat {
    type Output = Rat;
    fn neg(self) -> Rat {
        -&self
    }
}

impl AddAssign<&Rat> for Rat {
    fn add_assign(&mut self, rhs: &Rat) {
        if rhs.is_zero() {
            return;
        }
        *self = &*self + rhs;
    }
}

impl Zero for Rat {
    fn zero() -> Self {
        Rat::int(0)
    }
    fn is_zero(&self) -> bool {
        Rat::is_zero(self)
    }
}

impl Add for Rat {
    type Output = Rat;
    fn add(self, rhs: Rat) -> Rat {
        &self + &rhs
    }
}

impl Mul for Rat {
    type Output = Rat;
    fn mul(self, rhs: Rat) -> Rat {
        &self * &rhs
    }
}

impl One for Rat {
    fn one() -> Self {
        Rat::int(1)
    }
}

impl fmt::Display for Rat {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Rat::Small(n, 1) => write!(f, "{n}"),
            Rat::Small(n, d) => write!(f, "{n}/{d}"),
            Rat::Big(q) if q.is_integer() => write!(f, "{}", q.numer()),
            Rat::Big(q) => write!(f, "{}/{}", q.numer(), q.denom()),
        }
    }
}

impl fmt::Debug for Rat {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}
