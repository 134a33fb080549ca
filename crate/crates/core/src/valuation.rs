//! Valuation vectors: exact factorization of field elements into prime
//! exponent vectors, the model of F*⊗Q used by every Λᵏ F* computation.
//!
//! Rational values factor over Z; Gaussian values factor over Z[i] with the
//! ramified/split/inert trichotomy. Units are torsion and tracked separately
//! so they can be discarded once coefficients are rationalized.

use std::cell::RefCell;
use std::collections::{BTreeMap, HashMap};
use std::fmt;
use std::sync::Arc;

use num_bigint::{BigInt, BigUint, Sign};
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};

use crate::error::{EngineError, Result};
use crate::scalar::{FieldScalar, FieldTag};

/// Hard cap on the norm magnitude we are willing to factor.
const MAGNITUDE_BITS: u64 = 512;
/// Iteration cap for a single rho attempt before declaring a resource error.
const RHO_MAX_ITERS: u64 = 1 << 27;

/// A prime of the ambient field in its canonical associate.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum PrimeKey {
    Rational(BigUint),
    Gaussian { re: BigUint, im: BigUint },
}

impl fmt::Display for PrimeKey {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            PrimeKey::Rational(p) => write!(f, "{p}"),
            PrimeKey::Gaussian { re, im } => {
                if im.is_zero() {
                    write!(f, "{re}")
                } else {
                    write!(f, "{re}+{im}i")
                }
            }
        }
    }
}

/// Sparse exponent vector with a torsion unit tag (a power of i; rational
/// signs are i²).
#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct ValuationVector {
    pub entries: BTreeMap<PrimeKey, i64>,
    pub unit_ipow: u8,
}

impl ValuationVector {
    pub fn is_trivial(&self) -> bool {
        self.entries.is_empty() && self.unit_ipow == 0
    }

    pub fn exponents_empty(&self) -> bool {
        self.entries.is_empty()
    }

    pub fn add(&self, other: &ValuationVector) -> ValuationVector {
        let mut entries = self.entries.clone();
        for (k, v) in &other.entries {
            let e = entries.entry(k.clone()).or_insert(0);
            *e += v;
            if *e == 0 {
                entries.remove(k);
            }
        }
        ValuationVector {
            entries,
            unit_ipow: (self.unit_ipow + other.unit_ipow) % 4,
        }
    }

    pub fn sub(&self, other: &ValuationVector) -> ValuationVector {
        let mut entries = self.entries.clone();
        for (k, v) in &other.entries {
            let e = entries.entry(k.clone()).or_insert(0);
            *e -= v;
            if *e == 0 {
                entries.remove(k);
            }
        }
        ValuationVector {
            entries,
            unit_ipow: (4 + self.unit_ipow - other.unit_ipow % 4) % 4,
        }
    }

    /// Multiply the primes back together; test support for the
    /// reconstruction invariant.
    pub fn reconstruct(&self) -> FieldScalar {
        let mut acc = match self.unit_ipow % 4 {
            0 => FieldScalar::one(),
            1 => FieldScalar::i(),
            2 => FieldScalar::from_integer(-1),
            _ => FieldScalar::i() * FieldScalar::from_integer(-1),
        };
        for (key, &exp) in &self.entries {
            let base = match key {
                PrimeKey::Rational(p) => {
                    FieldScalar::Rational(BigRational::from_integer(BigInt::from(p.clone())))
                }
                PrimeKey::Gaussian { re, im } => FieldScalar::from_gaussian_parts(
                    BigRational::from_integer(BigInt::from(re.clone())),
                    BigRational::from_integer(BigInt::from(im.clone())),
                ),
            };
            let pos = base.clone();
            let factor = if exp >= 0 { pos } else { pos.inv().unwrap() };
            for _ in 0..exp.unsigned_abs() {
                acc = acc * factor.clone();
            }
        }
        acc
    }
}

/// Factor a nonzero scalar over the given ambient field.
///
/// Rational values inside a Gaussian suite factor over Z[i], so that the
/// multiplicativity invariant holds across mixed products.
pub fn valuations(x: &FieldScalar, field: FieldTag) -> Result<ValuationVector> {
    if x.is_zero() {
        return Err(EngineError::Domain("valuations of zero".into()));
    }
    match field {
        FieldTag::Rational => {
            if !x.is_rational() {
                return Err(EngineError::Domain(format!(
                    "non-rational scalar {x} in rational field"
                )));
            }
            let r = x.re();
            let num = r.numer().clone();
            let den = r.denom().clone();
            let mut v = factor_integer_vec(num.magnitude())?;
            let dvec = factor_integer_vec(den.magnitude())?;
            v = v.sub_map(&dvec);
            let unit = if num.sign() == Sign::Minus { 2 } else { 0 };
            Ok(ValuationVector {
                entries: v
                    .0
                    .into_iter()
                    .map(|(p, e)| (PrimeKey::Rational(p), e))
                    .collect(),
                unit_ipow: unit,
            })
        }
        FieldTag::Gaussian => {
            // Clear denominators: x = (a + b i)/d with integers a, b, d > 0.
            let re = x.re();
            let im = x.im();
            let d = re.denom().lcm(im.denom());
            let a = re.numer() * (&d / re.denom());
            let b = im.numer() * (&d / im.denom());
            let num_v = factor_gaussian_int(&a, &b)?;
            let den_v = factor_gaussian_int(&BigInt::from(d), &BigInt::zero())?;
            Ok(num_v.sub(&den_v))
        }
    }
}

struct ExpMap(BTreeMap<BigUint, i64>);

impl ExpMap {
    fn sub_map(mut self, other: &ExpMap) -> ExpMap {
        for (p, e) in &other.0 {
            let v = self.0.entry(p.clone()).or_insert(0);
            *v -= e;
            if *v == 0 {
                self.0.remove(p);
            }
        }
        self
    }
}

fn factor_integer_vec(n: &BigUint) -> Result<ExpMap> {
    let factors = factor_cached(n)?;
    Ok(ExpMap(
        factors.iter().map(|(p, e)| (p.clone(), *e as i64)).collect(),
    ))
}

/// Factor the Gaussian integer a + b i into canonical Gaussian primes and a
/// unit power of i.
fn factor_gaussian_int(a: &BigInt, b: &BigInt) -> Result<ValuationVector> {
    if a.is_zero() && b.is_zero() {
        return Err(EngineError::Domain("factor of zero".into()));
    }
    let norm: BigInt = a * a + b * b;
    let norm_factors = factor_cached(norm.magnitude())?;

    let mut z = (a.clone(), b.clone());
    let mut entries: BTreeMap<PrimeKey, i64> = BTreeMap::new();

    for (p, e_norm) in norm_factors.iter() {
        if p == &BigUint::from(2u32) {
            // Ramified: norm exponent equals the (1+i)-exponent.
            let pi = (BigInt::one(), BigInt::one());
            let mut count = 0i64;
            loop {
                match gaussian_exact_div(&z, &pi) {
                    Some(q) => {
                        z = q;
                        count += 1;
                    }
                    None => break,
                }
            }
            debug_assert_eq!(count, *e_norm as i64);
            if count != 0 {
                entries.insert(
                    PrimeKey::Gaussian {
                        re: BigUint::one(),
                        im: BigUint::one(),
                    },
                    count,
                );
            }
        } else if p % 4u32 == BigUint::from(3u32) {
            // Inert: p itself is the Gaussian prime; norm exponent is even.
            let half = (*e_norm / 2) as i64;
            let pi = (BigInt::from(p.clone()), BigInt::zero());
            for _ in 0..half {
                z = gaussian_exact_div(&z, &pi)
                    .expect("inert prime must divide to its norm multiplicity");
            }
            entries.insert(
                PrimeKey::Gaussian {
                    re: p.clone(),
                    im: BigUint::zero(),
                },
                half,
            );
        } else {
            // Split: p = π π̄. Determine how the exponent distributes.
            let (pr, pi_im) = split_prime(p)?;
            let pi = (pr.clone(), pi_im.clone());
            let pibar_raw = (pr.clone(), -pi_im.clone());
            let pibar = canonical_associate(&pibar_raw).0;

            let mut k = 0i64;
            loop {
                match gaussian_exact_div(&z, &pi) {
                    Some(q) => {
                        z = q;
                        k += 1;
                    }
                    None => break,
                }
            }
            let l = *e_norm as i64 - k;
            for _ in 0..l {
                z = gaussian_exact_div(&z, &pibar)
                    .expect("conjugate prime must divide the cofactor");
            }
            if k != 0 {
                entries.insert(
                    PrimeKey::Gaussian {
                        re: pi.0.magnitude().clone(),
                        im: pi.1.magnitude().clone(),
                    },
                    k,
                );
            }
            if l != 0 {
                entries.insert(
                    PrimeKey::Gaussian {
                        re: pibar.0.magnitude().clone(),
                        im: pibar.1.magnitude().clone(),
                    },
                    l,
                );
            }
        }
    }

    // What remains must be a unit.
    let unit_ipow = match (z.0.to_i8(), z.1.to_i8()) {
        (Some(1), Some(0)) => 0,
        (Some(0), Some(1)) => 1,
        (Some(-1), Some(0)) => 2,
        (Some(0), Some(-1)) => 3,
        _ => {
            return Err(EngineError::Domain(format!(
                "gaussian factorization left non-unit cofactor {}+{}i",
                z.0, z.1
            )))
        }
    };
    Ok(ValuationVector { entries, unit_ipow })
}

/// Canonical associate: the unique rotate with re > 0 and im >= 0. Returns
/// the associate and the power of i applied.
fn canonical_associate(z: &(BigInt, BigInt)) -> ((BigInt, BigInt), u8) {
    let mut cur = z.clone();
    for k in 0..4u8 {
        if cur.0.is_positive() && !cur.1.is_negative() {
            return (cur, k);
        }
        // Multiply by i: (a, b) -> (-b, a).
        cur = (-cur.1.clone(), cur.0.clone());
    }
    (cur, 0)
}

/// Exact division in Z[i]; `None` when the divisor does not divide.
fn gaussian_exact_div(z: &(BigInt, BigInt), w: &(BigInt, BigInt)) -> Option<(BigInt, BigInt)> {
    let n = &w.0 * &w.0 + &w.1 * &w.1;
    // z * conj(w)
    let re = &z.0 * &w.0 + &z.1 * &w.1;
    let im = &z.1 * &w.0 - &z.0 * &w.1;
    if (&re % &n).is_zero() && (&im % &n).is_zero() {
        Some((re / &n, im / &n))
    } else {
        None
    }
}

/// Find the canonical Gaussian prime over the split rational prime p.
fn split_prime(p: &BigUint) -> Result<(BigInt, BigInt)> {
    let p_int = BigInt::from(p.clone());
    // Square root of -1 mod p via a quadratic non-residue.
    let exp_half = (p - 1u32) >> 1;
    let exp_quarter = (p - 1u32) >> 2;
    let mut s = None;
    for a in 2u32..1000 {
        let a_big = BigUint::from(a);
        if a_big.modpow(&exp_half, p) == p - 1u32 {
            s = Some(a_big.modpow(&exp_quarter, p));
            break;
        }
    }
    let s = s.ok_or_else(|| {
        EngineError::Resource(format!("no quadratic non-residue below 1000 for prime {p}"))
    })?;
    // gcd(p, s + i) in Z[i].
    let g = gaussian_gcd((p_int, BigInt::zero()), (BigInt::from(s), BigInt::one()));
    Ok(canonical_associate(&g).0)
}

fn gaussian_gcd(mut a: (BigInt, BigInt), mut b: (BigInt, BigInt)) -> (BigInt, BigInt) {
    while !(b.0.is_zero() && b.1.is_zero()) {
        let n = &b.0 * &b.0 + &b.1 * &b.1;
        let re = &a.0 * &b.0 + &a.1 * &b.1;
        let im = &a.1 * &b.0 - &a.0 * &b.1;
        let q_re = round_div(&re, &n);
        let q_im = round_div(&im, &n);
        let r = (
            &a.0 - (&q_re * &b.0 - &q_im * &b.1),
            &a.1 - (&q_re * &b.1 + &q_im * &b.0),
        );
        a = b;
        b = r;
    }
    a
}

fn round_div(a: &BigInt, b: &BigInt) -> BigInt {
    // Round a/b to the nearest integer, b > 0.
    let num: BigInt = a * 2 + b;
    let den: BigInt = b * 2;
    num.div_floor(&den)
}

// ---------------------------------------------------------------------------
// Integer factorization: memo + sieve + Miller-Rabin + Brent rho.
// ---------------------------------------------------------------------------

thread_local! {
    static FACTOR_CACHE: RefCell<HashMap<BigUint, Arc<Vec<(BigUint, u32)>>>> =
        RefCell::new(HashMap::new());
}

fn small_primes() -> &'static [u64] {
    use std::sync::OnceLock;
    static PRIMES: OnceLock<Vec<u64>> = OnceLock::new();
    PRIMES.get_or_init(|| {
        let n = 10_000usize;
        let mut sieve = vec![true; n + 1];
        let mut out = Vec::new();
        for p in 2..=n {
            if sieve[p] {
                out.push(p as u64);
                let mut q = p * p;
                while q <= n {
                    sieve[q] = false;
                    q += p;
                }
            }
        }
        out
    })
}

/// Factor a positive integer with memoization; behaves as a pure memo.
pub fn factor_cached(n: &BigUint) -> Result<Arc<Vec<(BigUint, u32)>>> {
    if n.is_zero() {
        return Err(EngineError::Domain("factor of zero".into()));
    }
    if n.bits() > MAGNITUDE_BITS {
        return Err(EngineError::Resource(format!(
            "factorization magnitude bound exceeded ({} bits): {n}",
            n.bits()
        )));
    }
    if let Some(hit) = FACTOR_CACHE.with(|c| c.borrow().get(n).cloned()) {
        return Ok(hit);
    }
    let factors = Arc::new(factor_fresh(n)?);
    FACTOR_CACHE.with(|c| c.borrow_mut().insert(n.clone(), factors.clone()));
    Ok(factors)
}

fn factor_fresh(n: &BigUint) -> Result<Vec<(BigUint, u32)>> {
    let mut out: BTreeMap<BigUint, u32> = BTreeMap::new();
    let mut rest = n.clone();
    for &p in small_primes() {
        if rest.is_one() {
            break;
        }
        let pb = BigUint::from(p);
        if &pb * &pb > rest {
            break;
        }
        while (&rest % &pb).is_zero() {
            *out.entry(pb.clone()).or_insert(0) += 1;
            rest /= &pb;
        }
    }
    if !rest.is_one() {
        let mut stack = vec![rest];
        while let Some(m) = stack.pop() {
            if m.is_one() {
                continue;
            }
            if is_prime(&m) {
                *out.entry(m).or_insert(0) += 1;
                continue;
            }
            let d = rho_split(&m)?;
            let q = &m / &d;
            stack.push(d);
            stack.push(q);
        }
    }
    Ok(out.into_iter().collect())
}

fn is_prime(n: &BigUint) -> bool {
    if n < &BigUint::from(2u32) {
        return false;
    }
    for &p in &[2u32, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37] {
        let pb = BigUint::from(p);
        if n == &pb {
            return true;
        }
        if (n % &pb).is_zero() {
            return false;
        }
    }
    // Miller-Rabin, deterministic for n < 3.3e24 with this witness set and
    // overwhelming beyond (inputs stay far below the magnitude bound).
    let n_minus_1 = n - 1u32;
    let s = n_minus_1.trailing_zeros().unwrap_or(0);
    let d = &n_minus_1 >> s;
    'witness: for &a in &[2u32, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37, 41, 43, 47, 53] {
        let ab = BigUint::from(a) % n;
        if ab.is_zero() {
            continue;
        }
        let mut x = ab.modpow(&d, n);
        if x.is_one() || x == n_minus_1 {
            continue;
        }
        for _ in 1..s {
            x = (&x * &x) % n;
            if x == n_minus_1 {
                continue 'witness;
            }
        }
        return false;
    }
    true
}

fn rho_split(n: &BigUint) -> Result<BigUint> {
    // The fast path needs headroom for doubling below the modulus.
    if n.bits() <= 126 {
        let n128 = n.to_u128().expect("bits checked");
        if let Some(d) = rho_u128(n128) {
            return Ok(BigUint::from(d));
        }
        return Err(EngineError::Resource(format!(
            "rho iteration budget exhausted on {n}"
        )));
    }
    rho_big(n)
}

/// (a * b) mod m for u128 via 64-bit limbs; requires m < 2^126.
fn mul_mod_u128(a: u128, b: u128, m: u128) -> u128 {
    let (a0, a1) = (a & u64::MAX as u128, a >> 64);
    let (b0, b1) = (b & u64::MAX as u128, b >> 64);
    let ll = a0 * b0;
    let lh = a0 * b1;
    let hl = a1 * b0;
    let hh = a1 * b1;
    // value = hi * 2^128 + lo
    let mid = lh.wrapping_add(hl);
    let mid_overflow = if mid < lh { 1u128 << 64 } else { 0 };
    let lo = ll.wrapping_add(mid << 64);
    let lo_carry = if lo < ll { 1u128 } else { 0 };
    let hi = hh + (mid >> 64) + mid_overflow + lo_carry;

    // Fold 256 bits MSB-first; rem < m < 2^126 keeps the doubling in range.
    let mut rem: u128 = 0;
    for i in (0..128).rev() {
        rem = (rem << 1) | ((hi >> i) & 1);
        if rem >= m {
            rem -= m;
        }
    }
    for i in (0..128).rev() {
        rem = (rem << 1) | ((lo >> i) & 1);
        if rem >= m {
            rem -= m;
        }
    }
    rem
}

fn rho_u128(n: u128) -> Option<u128> {
    if n % 2 == 0 {
        return Some(2);
    }
    for c in 1u128..=64 {
        let f = |v: u128| {
            let s = mul_mod_u128(v, v, n);
            let t = s + c;
            if t >= n {
                t - n
            } else {
                t
            }
        };
        let mut x: u128 = 2;
        let mut y: u128 = 2;
        let mut d: u128 = 1;
        let mut q: u128 = 1;
        let mut iters: u64 = 0;
        while d == 1 {
            if iters > RHO_MAX_ITERS {
                return None;
            }
            x = f(x);
            y = f(f(y));
            let diff = if x > y { x - y } else { y - x };
            if diff == 0 {
                d = n;
                break;
            }
            q = mul_mod_u128(q, diff, n);
            iters += 1;
            if iters % 128 == 0 {
                d = gcd_u128(q, n);
            }
        }
        if d == 1 {
            d = gcd_u128(q, n);
        }
        if d != n && d != 1 {
            return Some(d);
        }
    }
    None
}

fn gcd_u128(mut a: u128, mut b: u128) -> u128 {
    while b != 0 {
        let t = a % b;
        a = b;
        b = t;
    }
    a
}

fn rho_big(n: &BigUint) -> Result<BigUint> {
    let one = BigUint::one();
    let mut c = BigUint::one();
    for _ in 0..64 {
        let mut x = BigUint::from(2u32);
        let mut y = BigUint::from(2u32);
        let mut d = BigUint::one();
        let mut q = BigUint::one();
        let f = |v: &BigUint| (v * v + &c) % n;
        let mut iters: u64 = 0;
        while d.is_one() {
            if iters > RHO_MAX_ITERS {
                return Err(EngineError::Resource(format!(
                    "rho iteration budget exhausted on {n}"
                )));
            }
            x = f(&x);
            y = f(&f(&y));
            let diff = if x > y { &x - &y } else { &y - &x };
            if diff.is_zero() {
                d = n.clone();
                break;
            }
            q = (&q * &diff) % n;
            iters += 1;
            if iters % 128 == 0 {
                d = q.gcd(n);
            }
        }
        if d.is_one() {
            d = q.gcd(n);
        }
        if !d.is_one() && &d != n {
            return Ok(d);
        }
        c += &one;
    }
    Err(EngineError::Resource(format!("rho failed to split {n}")))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn key_rat(p: u64) -> PrimeKey {
        PrimeKey::Rational(BigUint::from(p))
    }

    #[test]
    fn rational_example_minus_twelve_fifths() {
        let v = valuations(&FieldScalar::from_ratio(-12, 5), FieldTag::Rational).unwrap();
        let mut expected = BTreeMap::new();
        expected.insert(key_rat(2), 2);
        expected.insert(key_rat(3), 1);
        expected.insert(key_rat(5), -1);
        assert_eq!(v.entries, expected);
        assert_eq!(v.unit_ipow, 2);
    }

    #[test]
    fn one_is_trivial() {
        let v = valuations(&FieldScalar::one(), FieldTag::Rational).unwrap();
        assert!(v.is_trivial());
        let v = valuations(&FieldScalar::one(), FieldTag::Gaussian).unwrap();
        assert!(v.is_trivial());
    }

    #[test]
    fn zero_is_domain_error() {
        assert!(valuations(&FieldScalar::zero(), FieldTag::Rational).is_err());
    }

    #[test]
    fn gaussian_three_plus_four_i() {
        let v = valuations(&FieldScalar::gaussian_int(3, 4), FieldTag::Gaussian).unwrap();
        assert_eq!(v.entries.len(), 1);
        let (key, exp) = v.entries.iter().next().unwrap();
        assert_eq!(
            key,
            &PrimeKey::Gaussian {
                re: BigUint::from(2u32),
                im: BigUint::from(1u32)
            }
        );
        assert_eq!(*exp, 2);
        // Multiply back and compare canonical forms.
        assert_eq!(v.reconstruct(), FieldScalar::gaussian_int(3, 4));
    }

    #[test]
    fn reconstruction_round_trip() {
        for (re, im) in [(7, 0), (0, 7), (-9, 14), (5, -12), (1, 1), (-30, 42)] {
            let x = FieldScalar::gaussian_int(re, im);
            let v = valuations(&x, FieldTag::Gaussian).unwrap();
            assert_eq!(v.reconstruct(), x, "reconstruct {re}+{im}i");
        }
        for (n, d) in [(40, 27), (-7, 22), (1, 1), (-1, 3)] {
            let x = FieldScalar::from_ratio(n, d);
            let v = valuations(&x, FieldTag::Rational).unwrap();
            assert_eq!(v.reconstruct(), x);
        }
    }

    #[test]
    fn multiplicativity() {
        let x = FieldScalar::gaussian_int(3, 5);
        let y = FieldScalar::gaussian_int(-2, 7);
        let vx = valuations(&x, FieldTag::Gaussian).unwrap();
        let vy = valuations(&y, FieldTag::Gaussian).unwrap();
        let vxy = valuations(&(x * y), FieldTag::Gaussian).unwrap();
        assert_eq!(vx.add(&vy), vxy);
    }

    #[test]
    fn unit_stability_of_associates() {
        let x = FieldScalar::gaussian_int(4, 7);
        let vx = valuations(&x, FieldTag::Gaussian).unwrap();
        let xi = x * FieldScalar::i();
        let vxi = valuations(&xi, FieldTag::Gaussian).unwrap();
        assert_eq!(vx.entries, vxi.entries);
        assert_eq!((vx.unit_ipow + 1) % 4, vxi.unit_ipow);
    }

    #[test]
    fn splits_large_semiprime() {
        // Two ten-digit primes.
        let p = BigUint::from(4_000_000_007u64);
        let q = BigUint::from(4_000_000_009u64);
        let n = &p * &q;
        let f = factor_cached(&n).unwrap();
        assert_eq!(f.as_slice(), &[(p, 1), (q, 1)]);
    }

    #[test]
    fn mul_mod_u128_matches_bigint() {
        let cases: [(u128, u128, u128); 4] = [
            (u128::MAX / 3, u128::MAX / 5, (1u128 << 125) + 1237),
            (
                123456789012345678901234567890u128,
                98765432109876543210987654321u128,
                (1u128 << 100) + 7,
            ),
            (2, 3, 5),
            ((1u128 << 120) + 17, (1u128 << 119) + 3, (1u128 << 121) + 9),
        ];
        for (a, b, m) in cases {
            let a = a % m;
            let b = b % m;
            let got = mul_mod_u128(a, b, m);
            let want = (BigUint::from(a) * BigUint::from(b)) % BigUint::from(m);
            assert_eq!(BigUint::from(got), want, "a={a} b={b} m={m}");
        }
    }
}
