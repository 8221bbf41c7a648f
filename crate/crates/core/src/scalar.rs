//! Exact real scalars of the form `Σ q_d·√d` with rational `q_d` and
//! squarefree radicands `d`.
//!
//! Every amplitude produced by the boson and fermion actions lives in this
//! fragment of the real algebraic numbers: the boson ladder weights are `√m`,
//! and normalization constants are square roots of products of factorials.

use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, AddAssign, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};
use serde::de::{self, Deserializer};
use serde::ser::Serializer;
use serde::{Deserialize, Serialize};

/// Splits `n` into `(s, d)` with `n = s²·d` and `d` squarefree.
///
/// Trial division up to `√n`; all radicands arising here stay far below the
/// range where this becomes slow.
pub fn square_part(n: u64) -> (u64, u64) {
    assert!(n >= 1, "square_part of zero");
    let mut rest = n;
    let mut outside = 1u64;
    let mut inside = 1u64;
    let mut p = 2u64;
    while p.saturating_mul(p) <= rest {
        let mut e = 0u32;
        while rest.is_multiple_of(p) {
            rest /= p;
            e += 1;
        }
        outside *= p.pow(e / 2);
        if e % 2 == 1 {
            inside *= p;
        }
        p += if p == 2 { 1 } else { 2 };
    }
    // whatever remains is prime or 1
    inside *= rest;
    (outside, inside)
}

pub fn is_squarefree(n: u64) -> bool {
    n >= 1 && square_part(n).0 == 1
}

// Word-sized fast paths for rational arithmetic; most coefficients are small
// and BigInt gcds dominate otherwise.
fn small(q: &BigRational) -> Option<(i128, i128)> {
    Some((q.numer().to_i64()? as i128, q.denom().to_i64()? as i128))
}

fn from_reduced(num: i128, den: i128) -> BigRational {
    BigRational::new_raw(BigInt::from(num), BigInt::from(den))
}

fn q_mul(p: &BigRational, q: &BigRational) -> BigRational {
    match (small(p), small(q)) {
        (Some((a, b)), Some((c, d))) => {
            if a == 0 || c == 0 {
                return BigRational::zero();
            }
            let (g1, g2) = (a.gcd(&d), c.gcd(&b));
            from_reduced((a / g1) * (c / g2), (b / g2) * (d / g1))
        }
        _ => p * q,
    }
}

fn q_add(p: &BigRational, q: &BigRational) -> BigRational {
    match (small(p), small(q)) {
        (Some((a, b)), Some((c, d))) => {
            let num = a * d + c * b;
            if num == 0 {
                return BigRational::zero();
            }
            let den = b * d;
            let g = num.gcd(&den);
            from_reduced(num / g, den / g)
        }
        _ => p + q,
    }
}

/// Exact element `Σ q_d·√d`, stored canonically: keys squarefree, values
/// nonzero. Structural equality is value equality.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Default)]
pub struct RadicalScalar {
    terms: BTreeMap<u64, BigRational>,
}

impl RadicalScalar {
    pub fn zero() -> Self {
        Self::default()
    }

    pub fn one() -> Self {
        Self::from_integer(1)
    }

    pub fn from_integer(n: i64) -> Self {
        Self::from_rational(BigRational::from_integer(BigInt::from(n)))
    }

    pub fn from_rational(q: BigRational) -> Self {
        Self::term(1, q)
    }

    /// `num/den`; panics on a zero denominator.
    pub fn from_ratio(num: i64, den: i64) -> Self {
        assert!(den != 0, "zero denominator");
        Self::from_rational(BigRational::new(BigInt::from(num), BigInt::from(den)))
    }

    /// `q·√n` for any positive `n`, canonicalized.
    pub fn term(n: u64, q: BigRational) -> Self {
        assert!(n >= 1, "radicand must be positive");
        let mut out = Self::zero();
        if q.is_zero() {
            return out;
        }
        let (s, d) = square_part(n);
        out.terms
            .insert(d, q * BigRational::from_integer(BigInt::from(s)));
        out
    }

    /// Canonical `√n`.
    pub fn sqrt_of_nat(n: u64) -> Self {
        Self::term(n, BigRational::one())
    }

    /// `√(k!)`.
    pub fn sqrt_factorial(k: u64) -> Self {
        // accumulate exactly instead of forming k! as u64
        (1..=k).fold(Self::one(), |acc, i| acc.mul(&Self::sqrt_of_nat(i)))
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_one(&self) -> bool {
        self.terms.len() == 1 && self.terms.get(&1).is_some_and(|q| q.is_one())
    }

    /// The rational part if the value is rational.
    pub fn as_rational(&self) -> Option<BigRational> {
        match self.terms.len() {
            0 => Some(BigRational::zero()),
            1 => self.terms.get(&1).cloned(),
            _ => None,
        }
    }

    /// Radicand/coefficient pairs in increasing radicand order.
    pub fn terms(&self) -> impl Iterator<Item = (u64, &BigRational)> {
        self.terms.iter().map(|(d, q)| (*d, q))
    }

    pub fn add(&self, other: &Self) -> Self {
        let mut out = self.clone();
        out.add_assign_ref(other);
        out
    }

    fn add_assign_ref(&mut self, other: &Self) {
        for (d, q) in &other.terms {
            match self.terms.get_mut(d) {
                Some(e) => {
                    *e = q_add(e, q);
                    if e.is_zero() {
                        self.terms.remove(d);
                    }
                }
                None => {
                    self.terms.insert(*d, q.clone());
                }
            }
        }
    }

    pub fn neg(&self) -> Self {
        Self {
            terms: self.terms.iter().map(|(d, q)| (*d, -q.clone())).collect(),
        }
    }

    pub fn sub(&self, other: &Self) -> Self {
        self.add(&other.neg())
    }

    /// Exact product; `√a·√b = g·√((a/g)(b/g))` with `g = gcd(a, b)` for
    /// squarefree `a`, `b`.
    pub fn mul(&self, other: &Self) -> Self {
        let mut out = Self::zero();
        for (a, p) in &self.terms {
            for (b, q) in &other.terms {
                let g = a.gcd(b);
                let d = (a / g)
                    .checked_mul(b / g)
                    .expect("radicand overflow in RadicalScalar::mul");
                let coeff = q_mul(&q_mul(p, q), &BigRational::from_integer(BigInt::from(g)));
                match out.terms.get_mut(&d) {
                    Some(e) => *e = q_add(e, &coeff),
                    None => {
                        out.terms.insert(d, coeff);
                    }
                }
            }
        }
        out.terms.retain(|_, q| !q.is_zero());
        out
    }

    pub fn scale_rational(&self, q: &BigRational) -> Self {
        if q.is_zero() {
            return Self::zero();
        }
        Self {
            terms: self.terms.iter().map(|(d, c)| (*d, c * q)).collect(),
        }
    }

    pub fn scale_int(&self, k: i64) -> Self {
        self.scale_rational(&BigRational::from_integer(BigInt::from(k)))
    }

    /// Division by a nonzero rational. Returns `None` for zero.
    pub fn div_rational(&self, q: &BigRational) -> Option<Self> {
        if q.is_zero() {
            None
        } else {
            Some(self.scale_rational(&q.recip()))
        }
    }

    /// Division by `√n` (`n ≥ 1`): multiply by `√n / n`.
    pub fn div_sqrt_nat(&self, n: u64) -> Self {
        assert!(n >= 1, "division by sqrt(0)");
        let inv = BigRational::new(BigInt::one(), BigInt::from(n));
        self.mul(&Self::sqrt_of_nat(n)).scale_rational(&inv)
    }

    /// `1/(q√d)` for a single nonzero term; `None` otherwise.
    pub fn recip_term(&self) -> Option<Self> {
        if self.terms.len() != 1 {
            return None;
        }
        let (d, q) = self.terms.iter().next()?;
        // 1/(q√d) = √d / (q d)
        let denom = q * BigRational::from_integer(BigInt::from(*d));
        Self::sqrt_of_nat(*d).div_rational(&denom)
    }

    /// The exact square, useful when the value is known to be `±√r`.
    pub fn square(&self) -> Self {
        self.mul(self)
    }

    pub fn to_f64(&self) -> f64 {
        self.terms
            .iter()
            .map(|(d, q)| rational_to_f64(q) * (*d as f64).sqrt())
            .sum()
    }

    /// Decimal rendering with 12 significant digits.
    pub fn to_decimal(&self) -> String {
        format_significant(self.to_f64(), 12)
    }
}

fn rational_to_f64(q: &BigRational) -> f64 {
    match (q.numer().to_f64(), q.denom().to_f64()) {
        (Some(n), Some(d)) if n.is_finite() && d.is_finite() => n / d,
        _ => q.to_f64().unwrap_or(f64::NAN),
    }
}

/// `%g`-style rendering: `digits` significant digits, trailing zeros removed.
pub fn format_significant(x: f64, digits: usize) -> String {
    if x == 0.0 {
        return "0".to_string();
    }
    if !x.is_finite() {
        return x.to_string();
    }
    let exp = x.abs().log10().floor() as i32;
    if exp < -5 || exp >= digits as i32 {
        let s = format!("{:.*e}", digits - 1, x);
        // trim mantissa zeros: 1.500000e3 -> 1.5e3
        match s.split_once('e') {
            Some((m, e)) => format!("{}e{}", trim_zeros(m), e),
            None => s,
        }
    } else {
        let decimals = (digits as i32 - 1 - exp).max(0) as usize;
        trim_zeros(&format!("{:.*}", decimals, x)).to_string()
    }
}

fn trim_zeros(s: &str) -> &str {
    if s.contains('.') {
        s.trim_end_matches('0').trim_end_matches('.')
    } else {
        s
    }
}

impl fmt::Display for RadicalScalar {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        for (i, (d, q)) in self.terms.iter().enumerate() {
            let negative = q.is_negative();
            let mag = q.abs();
            if i == 0 {
                if negative {
                    write!(f, "-")?;
                }
            } else {
                write!(f, "{}", if negative { " - " } else { " + " })?;
            }
            let mag_str = if mag.is_integer() {
                mag.numer().to_string()
            } else {
                format!("({}/{})", mag.numer(), mag.denom())
            };
            match (*d, mag.is_one()) {
                (1, _) => write!(
                    f,
                    "{}",
                    if mag.is_integer() {
                        mag.numer().to_string()
                    } else {
                        format!("{}/{}", mag.numer(), mag.denom())
                    }
                )?,
                (d, true) => write!(f, "√{}", d)?,
                (d, false) => write!(f, "{}√{}", mag_str, d)?,
            }
        }
        Ok(())
    }
}

impl<'a> Add<&'a RadicalScalar> for &'a RadicalScalar {
    type Output = RadicalScalar;
    fn add(self, rhs: &RadicalScalar) -> RadicalScalar {
        RadicalScalar::add(self, rhs)
    }
}

impl<'a> Sub<&'a RadicalScalar> for &'a RadicalScalar {
    type Output = RadicalScalar;
    fn sub(self, rhs: &RadicalScalar) -> RadicalScalar {
        RadicalScalar::sub(self, rhs)
    }
}

impl Neg for &RadicalScalar {
    type Output = RadicalScalar;
    fn neg(self) -> RadicalScalar {
        RadicalScalar::neg(self)
    }
}

impl AddAssign<&RadicalScalar> for RadicalScalar {
    fn add_assign(&mut self, rhs: &RadicalScalar) {
        self.add_assign_ref(rhs);
    }
}

impl<'a> Mul<&'a RadicalScalar> for &'a RadicalScalar {
    type Output = RadicalScalar;
    fn mul(self, rhs: &RadicalScalar) -> RadicalScalar {
        RadicalScalar::mul(self, rhs)
    }
}

// JSON: {"terms": [{"radicand": d, "num": p, "den": q}, ...]} sorted by radicand.
// Numerators and denominators that do not fit in i64 are written as strings.

#[derive(Serialize, Deserialize)]
struct TermRepr {
    radicand: u64,
    num: IntRepr,
    den: IntRepr,
}

#[derive(Serialize, Deserialize)]
struct ScalarRepr {
    terms: Vec<TermRepr>,
}

struct IntRepr(BigInt);

impl Serialize for IntRepr {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        match self.0.to_i64() {
            Some(v) => s.serialize_i64(v),
            None => s.serialize_str(&self.0.to_string()),
        }
    }
}

impl<'de> Deserialize<'de> for IntRepr {
    fn deserialize<D: Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        let v = serde_json::Value::deserialize(d)?;
        match v {
            serde_json::Value::Number(n) => n
                .as_i64()
                .map(|x| IntRepr(BigInt::from(x)))
                .ok_or_else(|| de::Error::custom("integer out of range")),
            serde_json::Value::String(s) => {
                s.parse::<BigInt>().map(IntRepr).map_err(de::Error::custom)
            }
            _ => Err(de::Error::custom("expected integer")),
        }
    }
}

impl Serialize for RadicalScalar {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        ScalarRepr {
            terms: self
                .terms
                .iter()
                .map(|(d, q)| TermRepr {
                    radicand: *d,
                    num: IntRepr(q.numer().clone()),
                    den: IntRepr(q.denom().clone()),
                })
                .collect(),
        }
        .serialize(s)
    }
}

impl<'de> Deserialize<'de> for RadicalScalar {
    fn deserialize<D: Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        let repr = ScalarRepr::deserialize(d)?;
        let mut out = RadicalScalar::zero();
        for t in repr.terms {
            if t.radicand == 0 {
                return Err(de::Error::custom("radicand must be positive"));
            }
            if t.den.0.is_zero() {
                return Err(de::Error::custom("zero denominator"));
            }
            out += &RadicalScalar::term(t.radicand, BigRational::new(t.num.0, t.den.0));
        }
        Ok(out)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn s(n: u64) -> RadicalScalar {
        RadicalScalar::sqrt_of_nat(n)
    }

    fn big(n: i64, d: i64) -> BigRational {
        BigRational::new(BigInt::from(n), BigInt::from(d))
    }

    #[test]
    fn fast_paths_agree_with_bigrational() {
        let vals = [
            big(0, 1),
            big(3, 7),
            big(-5, 14),
            big(i64::MAX, 3),
            big(i64::MIN + 1, i64::MAX),
            big(1, i64::MAX),
        ];
        for p in &vals {
            for q in &vals {
                let (m, a) = (q_mul(p, q), q_add(p, q));
                assert_eq!(m, p * q);
                assert_eq!(a, p + q);
                // canonical storage, not just value equality
                assert_eq!((m.numer(), m.denom()), ((p * q).numer(), (p * q).denom()));
                assert_eq!((a.numer(), a.denom()), ((p + q).numer(), (p + q).denom()));
            }
        }
    }

    #[test]
    fn like_terms_merge() {
        assert_eq!(&s(2) + &s(2), s(2).scale_int(2));
        assert_eq!(&s(2) + &s(2).neg(), RadicalScalar::zero());
        let sum = &RadicalScalar::one() + &s(2);
        let terms: Vec<_> = sum.terms().map(|(d, q)| (d, q.to_integer())).collect();
        assert_eq!(terms, vec![(1, BigInt::from(1)), (2, BigInt::from(1))]);
    }

    #[test]
    fn products_extract_square_part() {
        assert_eq!(&s(2) * &s(2), RadicalScalar::from_integer(2));
        assert_eq!(&s(2) * &s(3), s(6));
        assert_eq!(&s(6) * &s(2), s(3).scale_int(2));
        // 12 = 4·3 by integer squaring: (2√3)² = 12 = (√6·√2)²
        assert_eq!((&s(6) * &s(2)).square(), RadicalScalar::from_integer(12));
    }

    #[test]
    fn sqrt_of_nat_canonical() {
        assert_eq!(s(8), s(2).scale_int(2));
        assert!(s(1).is_one());
        let six = s(6);
        assert_eq!(six.terms().count(), 1);
        assert_eq!(six.terms().next().unwrap().0, 6);
        assert_eq!(RadicalScalar::sqrt_factorial(3), s(6));
        assert_eq!(RadicalScalar::sqrt_factorial(4), s(6).scale_int(2));
    }

    #[test]
    fn sqrt_squares_to_n() {
        for n in 1..=10_000u64 {
            assert_eq!(
                &s(n) * &s(n),
                RadicalScalar::from_integer(n as i64),
                "n = {n}"
            );
        }
    }

    #[test]
    fn square_part_small() {
        assert_eq!(square_part(1), (1, 1));
        assert_eq!(square_part(72), (6, 2));
        assert_eq!(square_part(97), (1, 97));
        assert_eq!(square_part(479_001_600), (1440, 231)); // 12!
        assert!(is_squarefree(30));
        assert!(!is_squarefree(18));
    }

    #[test]
    fn division() {
        let half_root2 = s(2).div_sqrt_nat(4);
        assert_eq!(
            half_root2,
            s(2).scale_rational(&BigRational::new(1.into(), 2.into()))
        );
        let inv = RadicalScalar::one().div_sqrt_nat(2);
        assert_eq!(&inv * &s(2), RadicalScalar::one());
        assert!(s(3).div_rational(&BigRational::zero()).is_none());
    }

    #[test]
    fn rendering() {
        assert_eq!(s(2).to_string(), "√2");
        assert_eq!(RadicalScalar::one().div_sqrt_nat(2).to_string(), "(1/2)√2");
        assert_eq!((&RadicalScalar::one() + &s(2).neg()).to_string(), "1 - √2");
        assert_eq!(RadicalScalar::zero().to_string(), "0");
        assert_eq!(s(2).to_decimal(), "1.41421356237");
        assert_eq!(RadicalScalar::from_integer(3).to_decimal(), "3");
        assert_eq!(format_significant(1.5e-7, 12), "1.5e-7");
    }

    #[test]
    fn json_shape() {
        let x = &RadicalScalar::one() + &s(8);
        let j = serde_json::to_value(&x).unwrap();
        assert_eq!(
            j,
            serde_json::json!({"terms": [
                {"radicand": 1, "num": 1, "den": 1},
                {"radicand": 2, "num": 2, "den": 1}
            ]})
        );
        let back: RadicalScalar = serde_json::from_value(j).unwrap();
        assert_eq!(back, x);
    }
}
