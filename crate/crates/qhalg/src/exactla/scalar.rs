//! Exact field elements: rationals (with an `i64` fast path) and residues mod p.

use std::cmp::Ordering;
use std::fmt;
use std::ops::{Add, Div, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};

/// The coefficient field of a computation.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Field {
    Q,
    Fp(u64),
}

impl Field {
    pub fn zero(self) -> Scalar {
        match self {
            Field::Q => Scalar::Q(Rat::S(0, 1)),
            Field::Fp(p) => Scalar::Fp(0, p),
        }
    }

    pub fn one(self) -> Scalar {
        self.int(1)
    }

    pub fn int(self, n: i64) -> Scalar {
        match self {
            Field::Q => Scalar::Q(Rat::S(n, 1)),
            Field::Fp(p) => Scalar::Fp(n.rem_euclid(p as i64) as u64, p),
        }
    }

    /// `num / den`; panics if `den` vanishes in the field.
    pub fn ratio(self, num: i64, den: i64) -> Scalar {
        self.int(num) / self.int(den)
    }

    /// Parses `n` or `n/d` (optionally signed).
    pub fn parse(self, s: &str) -> Option<Scalar> {
        let s = s.trim();
        let (n, d) = match s.split_once('/') {
            Some((n, d)) => (n.trim(), d.trim()),
            None => (s, "1"),
        };
        let n: BigInt = n.parse().ok()?;
        let d: BigInt = d.parse().ok()?;
        if d.is_zero() {
            return None;
        }
        let q = Scalar::Q(Rat::from_big(BigRational::new(n, d)));
        match self {
            Field::Q => Some(q),
            Field::Fp(p) => q.reduce_mod(p),
        }
    }

    pub fn name(self) -> String {
        match self {
            Field::Q => "Q".to_string(),
            Field::Fp(p) => format!("Fp:{p}"),
        }
    }

    pub fn characteristic(self) -> u64 {
        match self {
            Field::Q => 0,
            Field::Fp(p) => p,
        }
    }
}

pub fn is_prime(p: u64) -> bool {
    if p < 2 {
        return false;
    }
    let mut d = 2u64;
    while d * d <= p {
        if p.is_multiple_of(d) {
            return false;
        }
        d += 1;
    }
    true
}

/// Rational number, kept as a reduced `i64` pair when it fits.
#[derive(Clone, Debug)]
pub enum Rat {
    S(i64, i64),
    B(BigRational),
}

fn gcd_i128(mut a: i128, mut b: i128) -> i128 {
    a = a.abs();
    b = b.abs();
    while b != 0 {
        let t = a % b;
        a = b;
        b = t;
    }
    a
}

impl Rat {
    fn from_i128(mut n: i128, mut d: i128) -> Rat {
        if d < 0 {
            n = -n;
            d = -d;
        }
        let g = gcd_i128(n, d);
        if g > 1 {
            n /= g;
            d /= g;
        }
        if n == 0 {
            return Rat::S(0, 1);
        }
        match (i64::try_from(n), i64::try_from(d)) {
            (Ok(a), Ok(b)) => Rat::S(a, b),
            _ => Rat::B(BigRational::new(BigInt::from(n), BigInt::from(d))),
        }
    }

    fn from_big(r: BigRational) -> Rat {
        match (r.numer().to_i64(), r.denom().to_i64()) {
            (Some(a), Some(b)) => Rat::S(a, b),
            _ => Rat::B(r),
        }
    }

    fn to_big(&self) -> BigRational {
        match self {
            Rat::S(a, b) => BigRational::new_raw(BigInt::from(*a), BigInt::from(*b)),
            Rat::B(r) => r.clone(),
        }
    }

    fn is_zero(&self) -> bool {
        match self {
            Rat::S(a, _) => *a == 0,
            Rat::B(r) => r.is_zero(),
        }
    }

    fn add(&self, o: &Rat) -> Rat {
        if let (Rat::S(a, b), Rat::S(c, d)) = (self, o) {
            let (a, b, c, d) = (*a as i128, *b as i128, *c as i128, *d as i128);
            if let (Some(x), Some(y)) = (a.checked_mul(d), c.checked_mul(b)) {
                if let (Some(n), Some(m)) = (x.checked_add(y), b.checked_mul(d)) {
                    return Rat::from_i128(n, m);
                }
            }
        }
        Rat::from_big(self.to_big() + o.to_big())
    }

    fn mul(&self, o: &Rat) -> Rat {
        if let (Rat::S(a, b), Rat::S(c, d)) = (self, o) {
            let n = (*a as i128) * (*c as i128);
            let m = (*b as i128) * (*d as i128);
            return Rat::from_i128(n, m);
        }
        Rat::from_big(self.to_big() * o.to_big())
    }

    fn neg(&self) -> Rat {
        match self {
            Rat::S(a, b) => match a.checked_neg() {
                Some(n) => Rat::S(n, *b),
                None => Rat::from_big(-self.to_big()),
            },
            Rat::B(r) => Rat::from_big(-r.clone()),
        }
    }

    fn inv(&self) -> Rat {
        match self {
            Rat::S(a, b) => Rat::from_i128(*b as i128, *a as i128),
            Rat::B(r) => Rat::from_big(r.recip()),
        }
    }

    fn cmp_value(&self, o: &Rat) -> Ordering {
        if let (Rat::S(a, b), Rat::S(c, d)) = (self, o) {
            return ((*a as i128) * (*d as i128)).cmp(&((*c as i128) * (*b as i128)));
        }
        self.to_big().cmp(&o.to_big())
    }
}

/// An exact field element. Rationals and residues mix by reducing the
/// rational modulo p (its denominator must be invertible).
#[derive(Clone, Debug)]
pub enum Scalar {
    Q(Rat),
    Fp(u64, u64),
}

fn pow_mod(b: u64, mut e: u64, p: u64) -> u64 {
    let mut r = 1u128;
    let mut bb = (b % p) as u128;
    let pp = p as u128;
    while e > 0 {
        if e & 1 == 1 {
            r = r * bb % pp;
        }
        bb = bb * bb % pp;
        e >>= 1;
    }
    r as u64
}

impl Scalar {
    pub fn is_zero(&self) -> bool {
        match self {
            Scalar::Q(r) => r.is_zero(),
            Scalar::Fp(v, _) => *v == 0,
        }
    }

    pub fn is_one(&self) -> bool {
        match self {
            Scalar::Q(Rat::S(a, b)) => *a == 1 && *b == 1,
            Scalar::Q(Rat::B(r)) => r.is_one(),
            Scalar::Fp(v, _) => *v == 1,
        }
    }

    /// Multiplicative inverse; panics on zero.
    pub fn inv(&self) -> Scalar {
        assert!(!self.is_zero(), "inverse of zero");
        match self {
            Scalar::Q(r) => Scalar::Q(r.inv()),
            Scalar::Fp(v, p) => Scalar::Fp(pow_mod(*v, p - 2, *p), *p),
        }
    }

    pub fn field(&self) -> Field {
        match self {
            Scalar::Q(_) => Field::Q,
            Scalar::Fp(_, p) => Field::Fp(*p),
        }
    }

    fn reduce_mod(&self, p: u64) -> Option<Scalar> {
        match self {
            Scalar::Fp(v, q) => (p == *q).then_some(Scalar::Fp(*v, p)),
            Scalar::Q(r) => {
                let b = r.to_big();
                let pb = BigInt::from(p);
                let n = b.numer().mod_floor(&pb).to_u64()?;
                let d = b.denom().mod_floor(&pb).to_u64()?;
                if d == 0 {
                    return None;
                }
                let dinv = pow_mod(d, p - 2, p);
                Some(Scalar::Fp(((n as u128 * dinv as u128) % p as u128) as u64, p))
            }
        }
    }

    fn coerce(a: &Scalar, b: &Scalar) -> (Scalar, Scalar) {
        match (a, b) {
            (Scalar::Q(_), Scalar::Fp(_, p)) => (
                a.reduce_mod(*p).expect("denominator divisible by p"),
                b.clone(),
            ),
            (Scalar::Fp(_, p), Scalar::Q(_)) => (
                a.clone(),
                b.reduce_mod(*p).expect("denominator divisible by p"),
            ),
            _ => (a.clone(), b.clone()),
        }
    }

    /// Rational value, if this is a rational.
    pub fn to_big_rational(&self) -> Option<BigRational> {
        match self {
            Scalar::Q(r) => Some(r.to_big()),
            Scalar::Fp(..) => None,
        }
    }

    pub fn from_big_rational(r: BigRational) -> Scalar {
        Scalar::Q(Rat::from_big(r))
    }

    /// Small integer value if exactly representable (residues map to `0..p`).
    pub fn to_i64(&self) -> Option<i64> {
        match self {
            Scalar::Q(Rat::S(a, 1)) => Some(*a),
            Scalar::Q(_) => None,
            Scalar::Fp(v, _) => i64::try_from(*v).ok(),
        }
    }

    pub fn pow(&self, e: u32) -> Scalar {
        let mut r = self.field().one();
        for _ in 0..e {
            r = &r * self;
        }
        r
    }

    /// Ordering on rationals; residues compare by representative.
    pub fn cmp_value(&self, other: &Scalar) -> Ordering {
        match (self, other) {
            (Scalar::Q(a), Scalar::Q(b)) => a.cmp_value(b),
            (Scalar::Fp(a, _), Scalar::Fp(b, _)) => a.cmp(b),
            _ => {
                let (x, y) = Scalar::coerce(self, other);
                x.cmp_value(&y)
            }
        }
    }

    pub fn abs_is_small(&self) -> bool {
        matches!(self, Scalar::Q(Rat::S(..)) | Scalar::Fp(..))
    }

    pub fn is_negative(&self) -> bool {
        match self {
            Scalar::Q(Rat::S(a, _)) => *a < 0,
            Scalar::Q(Rat::B(r)) => r.is_negative(),
            Scalar::Fp(..) => false,
        }
    }
}

impl PartialEq for Scalar {
    fn eq(&self, other: &Scalar) -> bool {
        match (self, other) {
            (Scalar::Q(a), Scalar::Q(b)) => a.cmp_value(b) == Ordering::Equal,
            (Scalar::Fp(a, p), Scalar::Fp(b, q)) => a == b && p == q,
            _ => {
                let (x, y) = Scalar::coerce(self, other);
                x == y
            }
        }
    }
}

impl Eq for Scalar {}

impl fmt::Display for Scalar {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Scalar::Q(Rat::S(a, 1)) => write!(f, "{a}"),
            Scalar::Q(Rat::S(a, b)) => write!(f, "{a}/{b}"),
            Scalar::Q(Rat::B(r)) => {
                if r.denom().is_one() {
                    write!(f, "{}", r.numer())
                } else {
                    write!(f, "{}/{}", r.numer(), r.denom())
                }
            }
            Scalar::Fp(v, _) => write!(f, "{v}"),
        }
    }
}

impl<'a> Add<&'a Scalar> for &'a Scalar {
    type Output = Scalar;
    fn add(self, o: &Scalar) -> Scalar {
        match (self, o) {
            (Scalar::Q(a), Scalar::Q(b)) => Scalar::Q(a.add(b)),
            (Scalar::Fp(a, p), Scalar::Fp(b, q)) => {
                assert_eq!(p, q, "mixed prime fields");
                Scalar::Fp(((*a as u128 + *b as u128) % *p as u128) as u64, *p)
            }
            _ => {
                let (x, y) = Scalar::coerce(self, o);
                &x + &y
            }
        }
    }
}

impl<'a> Mul<&'a Scalar> for &'a Scalar {
    type Output = Scalar;
    fn mul(self, o: &Scalar) -> Scalar {
        match (self, o) {
            (Scalar::Q(a), Scalar::Q(b)) => Scalar::Q(a.mul(b)),
            (Scalar::Fp(a, p), Scalar::Fp(b, q)) => {
                assert_eq!(p, q, "mixed prime fields");
                Scalar::Fp(((*a as u128 * *b as u128) % *p as u128) as u64, *p)
            }
            _ => {
                let (x, y) = Scalar::coerce(self, o);
                &x * &y
            }
        }
    }
}

impl Neg for &Scalar {
    type Output = Scalar;
    fn neg(self) -> Scalar {
        match self {
            Scalar::Q(a) => Scalar::Q(a.neg()),
            Scalar::Fp(v, p) => Scalar::Fp(if *v == 0 { 0 } else { p - v }, *p),
        }
    }
}

impl<'a> Sub<&'a Scalar> for &'a Scalar {
    type Output = Scalar;
    fn sub(self, o: &Scalar) -> Scalar {
        self + &(-o)
    }
}

impl<'a> Div<&'a Scalar> for &'a Scalar {
    type Output = Scalar;
    #[allow(clippy::suspicious_arithmetic_impl)]
    fn div(self, o: &Scalar) -> Scalar {
        self * &o.inv()
    }
}

macro_rules! owned_ops {
    ($tr:ident, $m:ident) => {
        impl $tr<Scalar> for Scalar {
            type Output = Scalar;
            fn $m(self, o: Scalar) -> Scalar {
                (&self).$m(&o)
            }
        }
        impl<'a> $tr<&'a Scalar> for Scalar {
            type Output = Scalar;
            fn $m(self, o: &Scalar) -> Scalar {
                (&self).$m(o)
            }
        }
    };
}
owned_ops!(Add, add);
owned_ops!(Sub, sub);
owned_ops!(Mul, mul);
owned_ops!(Div, div);

impl Neg for Scalar {
    type Output = Scalar;
    fn neg(self) -> Scalar {
        -&self
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn rational_arithmetic_is_exact() {
        let q = Field::Q;
        let a = q.ratio(3, 7);
        assert!((&a + &(-&a)).is_zero());
        assert!((&a * &a.inv()).is_one());
        assert_eq!(q.ratio(2, 4), q.ratio(1, 2));
        assert_eq!(q.parse("-6/4").unwrap(), q.ratio(-3, 2));
    }

    #[test]
    fn small_path_overflows_into_big() {
        let q = Field::Q;
        let big = q.int(i64::MAX);
        let s = &big + &big;
        assert_eq!(s.to_string(), "18446744073709551614");
        let back = &s - &big;
        assert_eq!(back, big);
        assert!(matches!(back, Scalar::Q(Rat::S(..))));
    }

    #[test]
    fn prime_field_arithmetic() {
        let f = Field::Fp(7);
        let a = f.int(3);
        assert_eq!(&a * &a.inv(), f.one());
        assert_eq!(&f.int(5) + &f.int(4), f.int(2));
        assert_eq!(f.parse("1/2").unwrap(), f.int(4));
        assert!(Field::Fp(5).parse("1/5").is_none());
    }

    #[test]
    fn mixing_reduces_rationals() {
        let f = Field::Fp(5);
        let x = &Field::Q.int(7) + &f.int(1);
        assert_eq!(x, f.int(3));
        assert!(Field::Q.zero() == f.zero());
    }

    #[test]
    fn primality() {
        assert!(is_prime(2) && is_prime(101) && !is_prime(1) && !is_prime(91));
    }
}
