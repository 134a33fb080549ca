//! Exact field scalars: rationals and Gaussian rationals.
//!
//! Every value is kept in a unique canonical form so scalars can serve as
//! term keys: fractions are reduced, Gaussian denominators are rationalized
//! componentwise, and a Gaussian value with vanishing imaginary part is
//! stored as a plain rational.

use std::cmp::Ordering;
use std::fmt;
use std::ops::{Add, Div, Mul, Neg, Sub};
use std::str::FromStr;

use num_bigint::BigInt;
use num_complex::Complex64;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};

use crate::error::EngineError;

/// Which field a scalar (or a whole configuration) lives in.
#[derive(
    Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, serde::Serialize, serde::Deserialize,
)]
#[serde(rename_all = "lowercase")]
pub enum FieldTag {
    Rational,
    Gaussian,
}

impl fmt::Display for FieldTag {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            FieldTag::Rational => write!(f, "rational"),
            FieldTag::Gaussian => write!(f, "gaussian"),
        }
    }
}

/// An exact element of Q or Q(i).
///
/// The `Gaussian` variant always has a nonzero imaginary part; a purely real
/// value normalizes to `Rational`, which makes equality canonical across the
/// two fields.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub enum FieldScalar {
    Rational(BigRational),
    Gaussian { re: BigRational, im: BigRational },
}

impl FieldScalar {
    pub fn zero() -> Self {
        FieldScalar::Rational(BigRational::zero())
    }

    pub fn one() -> Self {
        FieldScalar::Rational(BigRational::one())
    }

    pub fn from_integer(n: i64) -> Self {
        FieldScalar::Rational(BigRational::from_integer(BigInt::from(n)))
    }

    pub fn from_ratio(num: i64, den: i64) -> Self {
        assert!(den != 0, "zero denominator");
        FieldScalar::Rational(BigRational::new(BigInt::from(num), BigInt::from(den)))
    }

    pub fn i() -> Self {
        FieldScalar::Gaussian {
            re: BigRational::zero(),
            im: BigRational::one(),
        }
    }

    pub fn from_gaussian_parts(re: BigRational, im: BigRational) -> Self {
        if im.is_zero() {
            FieldScalar::Rational(re)
        } else {
            FieldScalar::Gaussian { re, im }
        }
    }

    pub fn gaussian_int(re: i64, im: i64) -> Self {
        Self::from_gaussian_parts(
            BigRational::from_integer(BigInt::from(re)),
            BigRational::from_integer(BigInt::from(im)),
        )
    }

    pub fn re(&self) -> BigRational {
        match self {
            FieldScalar::Rational(r) => r.clone(),
            FieldScalar::Gaussian { re, .. } => re.clone(),
        }
    }

    pub fn im(&self) -> BigRational {
        match self {
            FieldScalar::Rational(_) => BigRational::zero(),
            FieldScalar::Gaussian { im, .. } => im.clone(),
        }
    }

    pub fn is_zero(&self) -> bool {
        matches!(self, FieldScalar::Rational(r) if r.is_zero())
    }

    pub fn is_one(&self) -> bool {
        matches!(self, FieldScalar::Rational(r) if r.is_one())
    }

    pub fn is_rational(&self) -> bool {
        matches!(self, FieldScalar::Rational(_))
    }

    pub fn field_tag(&self) -> FieldTag {
        match self {
            FieldScalar::Rational(_) => FieldTag::Rational,
            FieldScalar::Gaussian { .. } => FieldTag::Gaussian,
        }
    }

    pub fn conj(&self) -> Self {
        match self {
            FieldScalar::Rational(r) => FieldScalar::Rational(r.clone()),
            FieldScalar::Gaussian { re, im } => FieldScalar::Gaussian {
                re: re.clone(),
                im: -im.clone(),
            },
        }
    }

    /// Field norm: x·x̄ (= x² for rationals). Always a rational.
    pub fn norm(&self) -> BigRational {
        match self {
            FieldScalar::Rational(r) => r * r,
            FieldScalar::Gaussian { re, im } => re * re + im * im,
        }
    }

    pub fn inv(&self) -> Result<Self, EngineError> {
        if self.is_zero() {
            return Err(EngineError::DivisionByZero);
        }
        match self {
            FieldScalar::Rational(r) => Ok(FieldScalar::Rational(r.recip())),
            FieldScalar::Gaussian { re, im } => {
                let n = re * re + im * im;
                Ok(FieldScalar::from_gaussian_parts(re / &n, -(im / &n)))
            }
        }
    }

    pub fn checked_div(&self, rhs: &Self) -> Result<Self, EngineError> {
        Ok(self.clone() * rhs.inv()?)
    }

    /// 1 − x, used constantly by the symbol-level differentials.
    pub fn one_minus(&self) -> Self {
        Self::one() - self.clone()
    }

    pub fn to_complex(&self) -> Complex64 {
        fn ratf(r: &BigRational) -> f64 {
            // Direct conversion overflows for huge numerators; go through a
            // quotient with controlled magnitude.
            r.to_f64().unwrap_or_else(|| {
                let n = r.numer().to_f64();
                let d = r.denom().to_f64();
                match (n, d) {
                    (Some(n), Some(d)) => n / d,
                    _ => {
                        // Fall back on bit-length scaling.
                        let shift = (r.numer().bits() as i64 - r.denom().bits() as i64).max(0);
                        let num =
                            (r.numer() >> shift as u64).to_f64().unwrap_or(f64::INFINITY);
                        let den = r.denom().to_f64().unwrap_or(f64::INFINITY);
                        num / den * 2f64.powi(shift as i32)
                    }
                }
            })
        }
        match self {
            FieldScalar::Rational(r) => Complex64::new(ratf(r), 0.0),
            FieldScalar::Gaussian { re, im } => Complex64::new(ratf(re), ratf(im)),
        }
    }

    /// Canonical associate modulo the unit group (torsion): for rationals the
    /// absolute value, for Gaussian values the unique associate with re > 0,
    /// or re = 0 and im > 0. Used by F*⊗Q tensor slots where units die.
    pub fn unit_normalized(&self) -> Self {
        match self {
            FieldScalar::Rational(r) => FieldScalar::Rational(r.abs()),
            FieldScalar::Gaussian { re, im } => {
                // Exactly one associate lands in the half-open quadrant
                // re > 0, im >= 0.
                let mut cur = FieldScalar::Gaussian {
                    re: re.clone(),
                    im: im.clone(),
                };
                for _ in 0..4 {
                    let (r, i) = (cur.re(), cur.im());
                    if r.is_positive() && !i.is_negative() {
                        return cur;
                    }
                    cur = cur * FieldScalar::i();
                }
                cur
            }
        }
    }

    /// Canonical string form: `p/q`, `p`, or `a/b+c/d*i` (sign folded in).
    pub fn encode(&self) -> String {
        fn rat(r: &BigRational) -> String {
            if r.denom().is_one() {
                r.numer().to_string()
            } else {
                format!("{}/{}", r.numer(), r.denom())
            }
        }
        match self {
            FieldScalar::Rational(r) => rat(r),
            FieldScalar::Gaussian { re, im } => {
                let sign = if im.is_negative() { "-" } else { "+" };
                format!("{}{}{}*i", rat(re), sign, rat(&im.abs()))
            }
        }
    }

    pub fn parse(s: &str) -> Result<Self, EngineError> {
        let bad = || EngineError::Parse(format!("invalid scalar `{s}`"));
        let t = s.trim();
        if let Some(body) = t.strip_suffix("*i").or_else(|| t.strip_suffix("i")) {
            // Split real and imaginary part at the last top-level +/- that is
            // not the leading sign.
            let bytes = body.as_bytes();
            let mut split = None;
            for (k, &b) in bytes.iter().enumerate().skip(1) {
                if (b == b'+' || b == b'-') && bytes[k - 1] != b'/' && bytes[k - 1] != b'*' {
                    split = Some(k);
                }
            }
            let k = split.ok_or_else(bad)?;
            let re = parse_rat(&body[..k]).map_err(|_| bad())?;
            let sign = if bytes[k] == b'-' { -1 } else { 1 };
            let im_str = body[k + 1..].trim_end_matches('*');
            let im = parse_rat(im_str).map_err(|_| bad())? * BigRational::from_integer(sign.into());
            Ok(Self::from_gaussian_parts(re, im))
        } else {
            Ok(FieldScalar::Rational(parse_rat(t).map_err(|_| bad())?))
        }
    }
}

fn parse_rat(s: &str) -> Result<BigRational, ()> {
    let t = s.trim();
    if let Some((n, d)) = t.split_once('/') {
        let num = BigInt::from_str(n.trim()).map_err(|_| ())?;
        let den = BigInt::from_str(d.trim()).map_err(|_| ())?;
        if den.is_zero() {
            return Err(());
        }
        Ok(BigRational::new(num, den))
    } else {
        let num = BigInt::from_str(t).map_err(|_| ())?;
        Ok(BigRational::from_integer(num))
    }
}

impl fmt::Display for FieldScalar {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.encode())
    }
}

impl PartialOrd for FieldScalar {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for FieldScalar {
    fn cmp(&self, other: &Self) -> Ordering {
        (self.re(), self.im()).cmp(&(other.re(), other.im()))
    }
}

impl Add for FieldScalar {
    type Output = FieldScalar;
    fn add(self, rhs: FieldScalar) -> FieldScalar {
        FieldScalar::from_gaussian_parts(self.re() + rhs.re(), self.im() + rhs.im())
    }
}

impl Sub for FieldScalar {
    type Output = FieldScalar;
    fn sub(self, rhs: FieldScalar) -> FieldScalar {
        FieldScalar::from_gaussian_parts(self.re() - rhs.re(), self.im() - rhs.im())
    }
}

impl Neg for FieldScalar {
    type Output = FieldScalar;
    fn neg(self) -> FieldScalar {
        FieldScalar::from_gaussian_parts(-self.re(), -self.im())
    }
}

impl Mul for FieldScalar {
    type Output = FieldScalar;
    fn mul(self, rhs: FieldScalar) -> FieldScalar {
        match (&self, &rhs) {
            (FieldScalar::Rational(a), FieldScalar::Rational(b)) => FieldScalar::Rational(a * b),
            _ => {
                let (a, b) = (self.re(), self.im());
                let (c, d) = (rhs.re(), rhs.im());
                FieldScalar::from_gaussian_parts(&a * &c - &b * &d, &a * &d + &b * &c)
            }
        }
    }
}

impl<'a> Mul<&'a FieldScalar> for FieldScalar {
    type Output = FieldScalar;
    fn mul(self, rhs: &'a FieldScalar) -> FieldScalar {
        self * rhs.clone()
    }
}

impl Div for FieldScalar {
    type Output = FieldScalar;
    fn div(self, rhs: FieldScalar) -> FieldScalar {
        self.checked_div(&rhs).expect("division by zero scalar")
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn canonical_real_gaussian_collapses() {
        let x = FieldScalar::from_gaussian_parts(
            BigRational::new(BigInt::from(3), BigInt::from(2)),
            BigRational::zero(),
        );
        assert_eq!(x, FieldScalar::from_ratio(3, 2));
        assert!(x.is_rational());
    }

    #[test]
    fn arithmetic_and_inverse() {
        let z = FieldScalar::gaussian_int(3, 4);
        let w = z.clone() * z.inv().unwrap();
        assert!(w.is_one());
        let s = FieldScalar::from_ratio(-12, 5);
        assert_eq!(s.encode(), "-12/5");
    }

    #[test]
    fn encode_parse_round_trip() {
        for s in [
            FieldScalar::from_ratio(-12, 5),
            FieldScalar::gaussian_int(3, -4),
            FieldScalar::from_gaussian_parts(
                BigRational::new(BigInt::from(1), BigInt::from(2)),
                BigRational::new(BigInt::from(-7), BigInt::from(3)),
            ),
            FieldScalar::zero(),
            FieldScalar::i(),
        ] {
            let enc = s.encode();
            assert_eq!(FieldScalar::parse(&enc).unwrap(), s, "round trip {enc}");
        }
    }

    #[test]
    fn unit_normalization_is_canonical() {
        let z = FieldScalar::gaussian_int(0, -5);
        assert_eq!(z.unit_normalized(), FieldScalar::from_integer(5));
        let z = FieldScalar::gaussian_int(-2, 1);
        let n = z.unit_normalized();
        assert!(n.re().is_positive());
        for unit in [
            FieldScalar::i(),
            FieldScalar::from_integer(-1),
            FieldScalar::i() * FieldScalar::from_integer(-1),
        ] {
            assert_eq!((z.clone() * unit).unit_normalized(), n);
        }
    }
}
