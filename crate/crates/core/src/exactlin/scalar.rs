//! Exact scalars over the rationals or a prime field.
//!
//! Rationals keep a machine-word fast path and promote to arbitrary precision
//! only when an intermediate result no longer fits.

use std::cmp::Ordering;
use std::fmt;
use std::ops::{Add, AddAssign, Mul, Neg, Sub, SubAssign};

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// The ground field.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum Field {
    #[serde(rename = "Q")]
    Rational,
    #[serde(rename = "Fp")]
    Prime(u64),
}

impl Field {
    pub fn prime(p: u64) -> Result<Field> {
        if p < 2 || p >= (1u64 << 61) || !is_prime(p) {
            return Err(Error::Field(format!("{p} is not a prime below 2^61")));
        }
        Ok(Field::Prime(p))
    }

    pub fn characteristic(&self) -> u64 {
        match self {
            Field::Rational => 0,
            Field::Prime(p) => *p,
        }
    }

    pub fn zero(&self) -> Scalar {
        self.from_i64(0)
    }

    pub fn one(&self) -> Scalar {
        self.from_i64(1)
    }

    pub fn from_i64(&self, n: i64) -> Scalar {
        match *self {
            Field::Rational => Scalar::Q(Rat::Small(n, 1)),
            Field::Prime(p) => Scalar::Fp { v: n.rem_euclid(p as i64) as u64, p },
        }
    }

    pub fn from_ratio(&self, num: i64, den: i64) -> Result<Scalar> {
        if den == 0 {
            return Err(Error::Field("zero denominator".into()));
        }
        let n = self.from_i64(num);
        let d = self.from_i64(den);
        n.checked_div(&d)
            .ok_or_else(|| Error::Field(format!("{den} is not invertible in {self}")))
    }

    /// Parses `"3"`, `"-2/5"` (and for prime fields, any integer or ratio).
    pub fn parse(&self, s: &str) -> Result<Scalar> {
        let s = s.trim();
        let bad = || Error::Parse(format!("malformed coefficient {s:?}"));
        let (ns, ds) = match s.split_once('/') {
            Some((a, b)) => (a.trim(), b.trim()),
            None => (s, "1"),
        };
        let n: BigInt = ns.parse().map_err(|_| bad())?;
        let d: BigInt = ds.parse().map_err(|_| bad())?;
        if d.is_zero() {
            return Err(bad());
        }
        match *self {
            Field::Rational => Ok(Scalar::Q(Rat::from_big(BigRational::new(n, d)))),
            Field::Prime(p) => {
                let pb = BigInt::from(p);
                let nv = n.mod_floor(&pb).to_u64().unwrap();
                let dv = d.mod_floor(&pb).to_u64().unwrap();
                if dv == 0 {
                    return Err(Error::Field(format!("denominator vanishes mod {p}")));
                }
                Ok(Scalar::Fp { v: mul_mod(nv, inv_mod(dv, p), p), p })
            }
        }
    }
}

impl fmt::Display for Field {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Field::Rational => write!(f, "Q"),
            Field::Prime(p) => write!(f, "F_{p}"),
        }
    }
}

fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    let mut i = 2u64;
    while i.saturating_mul(i) <= n {
        if n % i == 0 {
            return false;
        }
        i += 1;
        if i > 3_000_000 {
            // Trial division is enough for the moduli anyone types by hand.
            break;
        }
    }
    true
}

#[inline]
fn mul_mod(a: u64, b: u64, p: u64) -> u64 {
    ((a as u128 * b as u128) % p as u128) as u64
}

fn inv_mod(a: u64, p: u64) -> u64 {
    // p prime: a^(p-2)
    let mut base = a % p;
    let mut e = p - 2;
    let mut acc = 1u64;
    while e > 0 {
        if e & 1 == 1 {
            acc = mul_mod(acc, base, p);
        }
        base = mul_mod(base, base, p);
        e >>= 1;
    }
    acc
}

/// A normalized rational; `Small` is used whenever numerator and denominator fit in `i64`.
#[derive(Clone, Debug)]
pub enum Rat {
    Small(i64, i64),
    Big(BigRational),
}

impl Rat {
    fn from_big(r: BigRational) -> Rat {
        if let (Some(n), Some(d)) = (r.numer().to_i64(), r.denom().to_i64()) {
            Rat::Small(n, d)
        } else {
            Rat::Big(r)
        }
    }

    fn to_big(&self) -> BigRational {
        match self {
            Rat::Small(n, d) => BigRational::new_raw(BigInt::from(*n), BigInt::from(*d)),
            Rat::Big(r) => r.clone(),
        }
    }

    fn from_i128(n: i128, d: i128) -> Rat {
        let g = n.gcd(&d);
        let (mut n, mut d) = if g > 1 { (n / g, d / g) } else { (n, d) };
        if d < 0 {
            n = -n;
            d = -d;
        }
        match (i64::try_from(n), i64::try_from(d)) {
            (Ok(a), Ok(b)) => Rat::Small(a, b),
            _ => Rat::Big(BigRational::new(BigInt::from(n), BigInt::from(d))),
        }
    }

    fn is_zero(&self) -> bool {
        match self {
            Rat::Small(n, _) => *n == 0,
            Rat::Big(r) => r.is_zero(),
        }
    }

    fn add(&self, o: &Rat) -> Rat {
        match (self, o) {
            (Rat::Small(a, b), Rat::Small(c, d)) => {
                if b == d {
                    return Rat::from_i128(*a as i128 + *c as i128, *b as i128);
                }
                let (a, b, c, d) = (*a as i128, *b as i128, *c as i128, *d as i128);
                match (a.checked_mul(d), c.checked_mul(b), b.checked_mul(d)) {
                    (Some(x), Some(y), Some(z)) => match x.checked_add(y) {
                        Some(s) => Rat::from_i128(s, z),
                        None => Rat::from_big(self.to_big() + o.to_big()),
                    },
                    _ => Rat::from_big(self.to_big() + o.to_big()),
                }
            }
            _ => Rat::from_big(self.to_big() + o.to_big()),
        }
    }

    fn mul(&self, o: &Rat) -> Rat {
        match (self, o) {
            (Rat::Small(a, b), Rat::Small(c, d)) => {
                if *a == 0 || *c == 0 {
                    return Rat::Small(0, 1);
                }
                Rat::from_i128(*a as i128 * *c as i128, *b as i128 * *d as i128)
            }
            _ => Rat::from_big(self.to_big() * o.to_big()),
        }
    }

    fn neg(&self) -> Rat {
        match self {
            Rat::Small(a, b) if *a != i64::MIN => Rat::Small(-a, *b),
            _ => Rat::from_big(-self.to_big()),
        }
    }

    fn inv(&self) -> Option<Rat> {
        if self.is_zero() {
            return None;
        }
        Some(match self {
            Rat::Small(a, b) => Rat::from_i128(*b as i128, *a as i128),
            Rat::Big(r) => Rat::from_big(r.recip()),
        })
    }

    fn cmp_value(&self, o: &Rat) -> Ordering {
        match (self, o) {
            (Rat::Small(a, b), Rat::Small(c, d)) => {
                (*a as i128 * *d as i128).cmp(&(*c as i128 * *b as i128))
            }
            _ => self.to_big().cmp(&o.to_big()),
        }
    }
}

impl PartialEq for Rat {
    fn eq(&self, o: &Rat) -> bool {
        match (self, o) {
            (Rat::Small(a, b), Rat::Small(c, d)) => a == c && b == d,
            (Rat::Big(x), Rat::Big(y)) => x == y,
            _ => false,
        }
    }
}

impl fmt::Display for Rat {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Rat::Small(n, 1) => write!(f, "{n}"),
            Rat::Small(n, d) => write!(f, "{n}/{d}"),
            Rat::Big(r) if r.denom().is_one() => write!(f, "{}", r.numer()),
            Rat::Big(r) => write!(f, "{}/{}", r.numer(), r.denom()),
        }
    }
}

/// An element of a [`Field`]. Mixing elements of different fields panics.
#[derive(Clone, Debug, PartialEq)]
pub enum Scalar {
    Q(Rat),
    Fp { v: u64, p: u64 },
}

impl Scalar {
    pub fn field(&self) -> Field {
        match self {
            Scalar::Q(_) => Field::Rational,
            Scalar::Fp { p, .. } => Field::Prime(*p),
        }
    }

    #[inline]
    pub fn is_zero(&self) -> bool {
        match self {
            Scalar::Q(r) => r.is_zero(),
            Scalar::Fp { v, .. } => *v == 0,
        }
    }

    pub fn is_one(&self) -> bool {
        match self {
            Scalar::Q(Rat::Small(1, 1)) => true,
            Scalar::Q(_) => false,
            Scalar::Fp { v, .. } => *v == 1,
        }
    }

    pub fn inv(&self) -> Option<Scalar> {
        match self {
            Scalar::Q(r) => r.inv().map(Scalar::Q),
            Scalar::Fp { v, p } => (*v != 0).then(|| Scalar::Fp { v: inv_mod(*v, *p), p: *p }),
        }
    }

    pub fn checked_div(&self, o: &Scalar) -> Option<Scalar> {
        o.inv().map(|i| self * &i)
    }

    /// `(-1)^e · self`.
    #[inline]
    pub fn signed(self, odd: bool) -> Scalar {
        if odd {
            -self
        } else {
            self
        }
    }

    /// Integer value when the scalar is an integer (rationals) or its canonical representative.
    pub fn to_i64(&self) -> Option<i64> {
        match self {
            Scalar::Q(Rat::Small(n, 1)) => Some(*n),
            Scalar::Q(_) => None,
            Scalar::Fp { v, .. } => i64::try_from(*v).ok(),
        }
    }

    /// Total order on rationals; prime-field elements compare by representative.
    pub fn cmp_value(&self, o: &Scalar) -> Ordering {
        match (self, o) {
            (Scalar::Q(a), Scalar::Q(b)) => a.cmp_value(b),
            (Scalar::Fp { v: a, .. }, Scalar::Fp { v: b, .. }) => a.cmp(b),
            _ => panic!("comparing scalars of different fields"),
        }
    }

    pub fn is_negative(&self) -> bool {
        match self {
            Scalar::Q(Rat::Small(n, _)) => *n < 0,
            Scalar::Q(Rat::Big(r)) => r.is_negative(),
            Scalar::Fp { .. } => false,
        }
    }
}

impl fmt::Display for Scalar {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Scalar::Q(r) => write!(f, "{r}"),
            Scalar::Fp { v, .. } => write!(f, "{v}"),
        }
    }
}

impl<'a> Add<&'a Scalar> for &'a Scalar {
    type Output = Scalar;
    #[inline]
    fn add(self, o: &Scalar) -> Scalar {
        match (self, o) {
            (Scalar::Q(a), Scalar::Q(b)) => Scalar::Q(a.add(b)),
            (Scalar::Fp { v: a, p }, Scalar::Fp { v: b, p: q }) if p == q => {
                let s = a + b;
                Scalar::Fp { v: if s >= *p { s - p } else { s }, p: *p }
            }
            _ => panic!("adding scalars of different fields"),
        }
    }
}

impl<'a> Sub<&'a Scalar> for &'a Scalar {
    type Output = Scalar;
    #[inline]
    fn sub(self, o: &Scalar) -> Scalar {
        self + &(-o.clone())
    }
}

impl<'a> Mul<&'a Scalar> for &'a Scalar {
    type Output = Scalar;
    #[inline]
    fn mul(self, o: &Scalar) -> Scalar {
        match (self, o) {
            (Scalar::Q(a), Scalar::Q(b)) => Scalar::Q(a.mul(b)),
            (Scalar::Fp { v: a, p }, Scalar::Fp { v: b, p: q }) if p == q => {
                Scalar::Fp { v: mul_mod(*a, *b, *p), p: *p }
            }
            _ => panic!("multiplying scalars of different fields"),
        }
    }
}

impl Add for Scalar {
    type Output = Scalar;
    fn add(self, o: Scalar) -> Scalar {
        &self + &o
    }
}

impl Sub for Scalar {
    type Output = Scalar;
    fn sub(self, o: Scalar) -> Scalar {
        &self - &o
    }
}

impl Mul for Scalar {
    type Output = Scalar;
    fn mul(self, o: Scalar) -> Scalar {
        &self * &o
    }
}

impl Neg for Scalar {
    type Output = Scalar;
    #[inline]
    fn neg(self) -> Scalar {
        match self {
            Scalar::Q(a) => Scalar::Q(a.neg()),
            Scalar::Fp { v, p } => Scalar::Fp { v: if v == 0 { 0 } else { p - v }, p },
        }
    }
}

impl AddAssign<&Scalar> for Scalar {
    #[inline]
    fn add_assign(&mut self, o: &Scalar) {
        *self = &*self + o;
    }
}

impl SubAssign<&Scalar> for Scalar {
    #[inline]
    fn sub_assign(&mut self, o: &Scalar) {
        *self = &*self - o;
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn rational_fast_path_promotes() {
        let q = Field::Rational;
        let big = q.from_i64(i64::MAX);
        let s = &big + &big;
        assert!(matches!(s, Scalar::Q(Rat::Big(_))));
        let back = &s - &big;
        assert_eq!(back, big);
        assert!(matches!(back, Scalar::Q(Rat::Small(_, _))));
    }

    #[test]
    fn parse_and_print() {
        let q = Field::Rational;
        assert_eq!(q.parse("-4/6").unwrap().to_string(), "-2/3");
        assert!(q.parse("1/0").is_err());
        assert!(q.parse("x").is_err());
        let f = Field::prime(7).unwrap();
        assert_eq!(f.parse("1/2").unwrap().to_string(), "4");
        assert!(Field::prime(9).is_err());
    }

    #[test]
    fn prime_field_inverse() {
        let f = Field::prime(101).unwrap();
        for n in 1..101 {
            let a = f.from_i64(n);
            assert!((&a * &a.inv().unwrap()).is_one());
        }
    }
}
