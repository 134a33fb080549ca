//! Realization homomorphisms: formal sums evaluated into sparse real
//! tensors over valuation multi-indices, with single-valued polylogarithms
//! on the symbol slots.
//!
//! Weight-2 slots realize through the Bloch–Wigner function (triangle pairs
//! through a₂ first), weight-3 slots through P₃ (tetrahedron pairs through
//! a₃ first), F* slots through valuation vectors, and Λ²B₂ through a
//! deterministic pseudo-random probe of the (D ⊕ δ₂)-vector of each symbol.

use std::collections::{BTreeMap, HashMap};

use num_complex::Complex64;
use num_rational::BigRational;
use num_traits::ToPrimitive;

use crate::error::{EngineError, Result};
use crate::formal::{FormalSum, FormalTerm};
use crate::geom::{cross_ratio, SimplexPair};
use crate::maps::{a2, a3, A3Variant, R3Mode};
use crate::scalar::{FieldScalar, FieldTag};
use crate::valuation::{valuations, PrimeKey, ValuationVector};

use super::polylog::{bloch_wigner, sv_trilog};

/// Which homomorphism applies to each slot of the target group.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum RealizationSignature {
    /// Z[F*] at weight 2: {x}₂ ↦ D(x).
    ScalarWeight2,
    /// Z[F*] at weight 3: {x}₃ ↦ P₃(x).
    ScalarWeight3,
    /// Λ²F*: wedge of valuation vectors.
    Lambda2FStar,
    /// Λ³F*.
    Lambda3FStar,
    /// B_w ⊗ F* (pairs allowed in the symbol slot via a₂/a₃).
    TensorScalarFStar { weight: u8 },
    /// F* ⊗ B_w.
    TensorFStarScalar { weight: u8 },
    /// B₂ ⊗ Λ²F*.
    TensorScalarWedge2 { weight: u8 },
    /// (F*)⊗³ — also accepts P¹ simplex pairs via the cross-ratio a₁.
    FStarTriple,
    /// Λ²B₂ through the probe realization.
    Lambda2Weight2Probe,
}

/// One tensor index: a prime of the ambient field or a probe channel.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord)]
pub enum RKey {
    P(PrimeKey),
    Probe(u8),
}

/// Sparse real tensor over valuation multi-indices together with the total
/// magnitude of the contributions that built it.
#[derive(Debug, Clone, Default)]
pub struct RealizationResult {
    pub entries: BTreeMap<Vec<RKey>, f64>,
    pub magnitude: f64,
}

impl RealizationResult {
    pub fn residual(&self) -> f64 {
        if self.magnitude == 0.0 {
            return 0.0;
        }
        let max = self
            .entries
            .values()
            .fold(0.0f64, |m, v| m.max(v.abs()));
        max / self.magnitude
    }

    pub fn max_entry(&self) -> f64 {
        self.entries.values().fold(0.0f64, |m, v| m.max(v.abs()))
    }

    fn bump(&mut self, key: Vec<RKey>, value: f64) {
        if value == 0.0 {
            return;
        }
        let e = self.entries.entry(key).or_insert(0.0);
        *e += value;
        if *e == 0.0 {
            // Keep exact integer cancellations sparse.
            let snapshot = self
                .entries
                .iter()
                .filter(|(_, v)| **v == 0.0)
                .map(|(k, _)| k.clone())
                .collect::<Vec<_>>();
            for k in snapshot {
                self.entries.remove(&k);
            }
        }
    }

    pub fn add(&mut self, other: &RealizationResult) {
        for (k, v) in &other.entries {
            self.bump(k.clone(), *v);
        }
        self.magnitude += other.magnitude;
    }
}

const PROBE_CHANNELS: u8 = 8;

/// Evaluation context: ambient field plus pure memo caches.
pub struct RealizeCtx {
    pub field: FieldTag,
    d_cache: HashMap<FieldScalar, f64>,
    p3_cache: HashMap<FieldScalar, f64>,
    a2_cache: HashMap<SimplexPair, f64>,
    a3_cache: HashMap<SimplexPair, f64>,
    val_cache: HashMap<FieldScalar, ValuationVector>,
}

impl RealizeCtx {
    pub fn new(field: FieldTag) -> Self {
        RealizeCtx {
            field,
            d_cache: HashMap::new(),
            p3_cache: HashMap::new(),
            a2_cache: HashMap::new(),
            a3_cache: HashMap::new(),
            val_cache: HashMap::new(),
        }
    }

    pub fn embed(&self, x: &FieldScalar) -> Complex64 {
        x.to_complex()
    }

    pub fn d(&mut self, x: &FieldScalar) -> f64 {
        if let Some(v) = self.d_cache.get(x) {
            return *v;
        }
        let v = bloch_wigner(x.to_complex());
        self.d_cache.insert(x.clone(), v);
        v
    }

    pub fn p3(&mut self, x: &FieldScalar) -> f64 {
        if let Some(v) = self.p3_cache.get(x) {
            return *v;
        }
        let v = sv_trilog(x.to_complex());
        self.p3_cache.insert(x.clone(), v);
        v
    }

    pub fn val(&mut self, x: &FieldScalar) -> Result<ValuationVector> {
        if let Some(v) = self.val_cache.get(x) {
            return Ok(v.clone());
        }
        let v = valuations(x, self.field)?;
        self.val_cache.insert(x.clone(), v.clone());
        Ok(v)
    }

    /// Realized value of a weight-2 symbol slot: D on symbols, D∘a₂ on
    /// triangle pairs.
    pub fn weight2_value(&mut self, term: &FormalTerm) -> Result<f64> {
        match term {
            FormalTerm::Li { weight: 2, arg } => Ok(self.d(arg)),
            FormalTerm::Pair(p) if p.dim == 2 => {
                if let Some(v) = self.a2_cache.get(p) {
                    return Ok(*v);
                }
                let sum = a2(p)?;
                let v = self.scalar_sum(&sum, 2)?;
                self.a2_cache.insert(p.clone(), v);
                Ok(v)
            }
            other => Err(EngineError::Signature(format!(
                "weight-2 slot cannot realize {}",
                other.encode()
            ))),
        }
    }

    /// Realized value of a weight-3 symbol slot: P₃ on symbols, P₃∘a₃ on
    /// tetrahedron pairs.
    pub fn weight3_value(&mut self, term: &FormalTerm) -> Result<f64> {
        match term {
            FormalTerm::Li { weight: 3, arg } => Ok(self.p3(arg)),
            FormalTerm::Pair(p) if p.dim == 3 => {
                if let Some(v) = self.a3_cache.get(p) {
                    return Ok(*v);
                }
                let sum = a3(p, A3Variant::Combined, R3Mode::Generic)?;
                let v = self.scalar_sum(&sum, 3)?;
                self.a3_cache.insert(p.clone(), v);
                Ok(v)
            }
            other => Err(EngineError::Signature(format!(
                "weight-3 slot cannot realize {}",
                other.encode()
            ))),
        }
    }

    fn scalar_sum(&mut self, sum: &FormalSum, weight: u8) -> Result<f64> {
        let mut acc = 0.0;
        for (t, c) in sum.iter() {
            let v = match weight {
                2 => self.weight2_value(t)?,
                _ => self.weight3_value(t)?,
            };
            acc += ratf(c) * v;
        }
        Ok(acc)
    }

    /// Valuation vector of an F* slot: F* atoms directly, P¹ pairs через the
    /// cross-ratio a₁.
    pub fn fstar_value(&mut self, term: &FormalTerm) -> Result<ValuationVector> {
        match term {
            FormalTerm::FStar(x) => self.val(&x.clone()),
            FormalTerm::Pair(p) if p.dim == 1 => {
                let r = cross_ratio(&p.l[0], &p.l[1], &p.m[0], &p.m[1])?;
                self.val(&r)
            }
            other => Err(EngineError::Signature(format!(
                "F* slot cannot realize {}",
                other.encode()
            ))),
        }
    }

    /// The probe vector of a weight-2 symbol: channel a carries
    /// w(a,D)·D(x) + Σ w(a,(p,q))·[(1−x)∧x]_{(p,q)}.
    fn probe_vector(&mut self, term: &FormalTerm) -> Result<[f64; PROBE_CHANNELS as usize]> {
        let mut out = [0.0; PROBE_CHANNELS as usize];
        let d = self.weight2_value(term)?;
        let (vx, vomx) = match term {
            FormalTerm::Li { weight: 2, arg } => {
                (self.val(arg)?, self.val(&arg.one_minus())?)
            }
            other => {
                return Err(EngineError::Signature(format!(
                    "probe realization expects weight-2 symbols, found {}",
                    other.encode()
                )))
            }
        };
        for a in 0..PROBE_CHANNELS {
            let mut acc = probe_weight(a, "D") * d;
            for (p, ep) in &vomx.entries {
                for (q, eq) in &vx.entries {
                    let w = (*ep as f64) * (*eq as f64);
                    if p == q {
                        continue;
                    }
                    // Antisymmetrized pair channel with a canonical order.
                    let (lo, hi, sgn) = if p < q { (p, q, 1.0) } else { (q, p, -1.0) };
                    let label = format!("{lo}|{hi}");
                    acc += probe_weight(a, &label) * w * sgn;
                }
            }
            out[a as usize] = acc;
        }
        Ok(out)
    }
}

fn ratf(c: &BigRational) -> f64 {
    c.to_f64().unwrap_or_else(|| {
        let n = c.numer().to_f64().unwrap_or(f64::NAN);
        let d = c.denom().to_f64().unwrap_or(f64::NAN);
        n / d
    })
}

/// Deterministic pseudo-random weight in [−1, 1] from (channel, label),
/// FNV-1a based so reports stay byte-reproducible.
fn probe_weight(channel: u8, label: &str) -> f64 {
    let mut h: u64 = 0xcbf29ce484222325;
    h ^= channel as u64;
    h = h.wrapping_mul(0x100000001b3);
    for b in label.as_bytes() {
        h ^= *b as u64;
        h = h.wrapping_mul(0x100000001b3);
    }
    (h >> 11) as f64 / ((1u64 << 53) as f64) * 2.0 - 1.0
}

fn val_magnitude(v: &ValuationVector) -> f64 {
    v.entries.values().fold(0.0f64, |m, e| m.max(e.unsigned_abs() as f64))
}

/// Linear extension of the slot homomorphisms over the sum, accumulated in
/// canonical term order.
pub fn realize(
    s: &FormalSum,
    signature: RealizationSignature,
    ctx: &mut RealizeCtx,
) -> Result<RealizationResult> {
    let mut out = RealizationResult::default();
    for (term, coeff) in s.iter() {
        let c = ratf(coeff);
        match signature {
            RealizationSignature::ScalarWeight2 => {
                let v = ctx.weight2_value(term)?;
                out.bump(vec![], c * v);
                out.magnitude += c.abs() * v.abs();
            }
            RealizationSignature::ScalarWeight3 => {
                let v = ctx.weight3_value(term)?;
                out.bump(vec![], c * v);
                out.magnitude += c.abs() * v.abs();
            }
            RealizationSignature::Lambda2FStar => {
                let fs = expect_wedge(term, 2)?;
                let a = ctx.fstar_value(&fs[0])?;
                let b = ctx.fstar_value(&fs[1])?;
                wedge2_into(&mut out, c, &a, &b);
                out.magnitude += c.abs() * val_magnitude(&a) * val_magnitude(&b);
            }
            RealizationSignature::Lambda3FStar => {
                let fs = expect_wedge(term, 3)?;
                let a = ctx.fstar_value(&fs[0])?;
                let b = ctx.fstar_value(&fs[1])?;
                let d = ctx.fstar_value(&fs[2])?;
                wedge3_into(&mut out, c, [&a, &b, &d]);
                out.magnitude +=
                    c.abs() * val_magnitude(&a) * val_magnitude(&b) * val_magnitude(&d);
            }
            RealizationSignature::TensorScalarFStar { weight } => {
                let fs = expect_tensor(term, 2)?;
                let sv = match weight {
                    2 => ctx.weight2_value(&fs[0])?,
                    _ => ctx.weight3_value(&fs[0])?,
                };
                let vv = ctx.fstar_value(&fs[1])?;
                for (p, e) in &vv.entries {
                    out.bump(vec![RKey::P(p.clone())], c * sv * (*e as f64));
                }
                out.magnitude += c.abs() * sv.abs() * val_magnitude(&vv);
            }
            RealizationSignature::TensorFStarScalar { weight } => {
                let fs = expect_tensor(term, 2)?;
                let vv = ctx.fstar_value(&fs[0])?;
                let sv = match weight {
                    2 => ctx.weight2_value(&fs[1])?,
                    _ => ctx.weight3_value(&fs[1])?,
                };
                for (p, e) in &vv.entries {
                    out.bump(vec![RKey::P(p.clone())], c * sv * (*e as f64));
                }
                out.magnitude += c.abs() * sv.abs() * val_magnitude(&vv);
            }
            RealizationSignature::TensorScalarWedge2 { weight } => {
                let fs = expect_tensor(term, 2)?;
                let sv = match weight {
                    2 => ctx.weight2_value(&fs[0])?,
                    _ => ctx.weight3_value(&fs[0])?,
                };
                let ws = expect_wedge(&fs[1], 2)?;
                let a = ctx.fstar_value(&ws[0])?;
                let b = ctx.fstar_value(&ws[1])?;
                wedge2_into(&mut out, c * sv, &a, &b);
                out.magnitude +=
                    c.abs() * sv.abs() * val_magnitude(&a) * val_magnitude(&b);
            }
            RealizationSignature::FStarTriple => {
                let fs = expect_tensor(term, 3)?;
                let a = ctx.fstar_value(&fs[0])?;
                let b = ctx.fstar_value(&fs[1])?;
                let d = ctx.fstar_value(&fs[2])?;
                for (p, ep) in &a.entries {
                    for (q, eq) in &b.entries {
                        for (r, er) in &d.entries {
                            out.bump(
                                vec![RKey::P(p.clone()), RKey::P(q.clone()), RKey::P(r.clone())],
                                c * (*ep as f64) * (*eq as f64) * (*er as f64),
                            );
                        }
                    }
                }
                out.magnitude +=
                    c.abs() * val_magnitude(&a) * val_magnitude(&b) * val_magnitude(&d);
            }
            RealizationSignature::Lambda2Weight2Probe => {
                let fs = expect_wedge(term, 2)?;
                let va = ctx.probe_vector(&fs[0])?;
                let vb = ctx.probe_vector(&fs[1])?;
                let maga = va.iter().fold(0.0f64, |m, v| m.max(v.abs()));
                let magb = vb.iter().fold(0.0f64, |m, v| m.max(v.abs()));
                for i in 0..PROBE_CHANNELS {
                    for j in (i + 1)..PROBE_CHANNELS {
                        let v = va[i as usize] * vb[j as usize]
                            - va[j as usize] * vb[i as usize];
                        out.bump(vec![RKey::Probe(i), RKey::Probe(j)], c * v);
                    }
                }
                out.magnitude += c.abs() * maga * magb;
            }
        }
    }
    Ok(out)
}

fn expect_tensor(term: &FormalTerm, arity: usize) -> Result<&[FormalTerm]> {
    match term {
        FormalTerm::Tensor(fs) if fs.len() == arity => Ok(fs),
        other => Err(EngineError::Signature(format!(
            "expected {arity}-tensor, found {}",
            other.encode()
        ))),
    }
}

fn expect_wedge(term: &FormalTerm, arity: usize) -> Result<&[FormalTerm]> {
    match term {
        FormalTerm::Wedge(fs) if fs.len() == arity => Ok(fs),
        other => Err(EngineError::Signature(format!(
            "expected {arity}-wedge, found {}",
            other.encode()
        ))),
    }
}

fn wedge2_into(out: &mut RealizationResult, c: f64, a: &ValuationVector, b: &ValuationVector) {
    for (p, ep) in &a.entries {
        for (q, eq) in &b.entries {
            let v = c * (*ep as f64) * (*eq as f64);
            out.bump(vec![RKey::P(p.clone()), RKey::P(q.clone())], v);
            out.bump(vec![RKey::P(q.clone()), RKey::P(p.clone())], -v);
        }
    }
}

fn wedge3_into(out: &mut RealizationResult, c: f64, vs: [&ValuationVector; 3]) {
    for (perm, sign) in crate::formal::permutations_signed(3) {
        for (p, ep) in &vs[perm[0]].entries {
            for (q, eq) in &vs[perm[1]].entries {
                for (r, er) in &vs[perm[2]].entries {
                    out.bump(
                        vec![RKey::P(p.clone()), RKey::P(q.clone()), RKey::P(r.clone())],
                        c * sign as f64 * (*ep as f64) * (*eq as f64) * (*er as f64),
                    );
                }
            }
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::formal::{delta2, rint, sig};
    use crate::geom::random_config;
    use crate::maps::relations::five_term;

    #[test]
    fn empty_sum_has_zero_residual() {
        let s = FormalSum::zero(sig::LAMBDA2_FSTAR);
        let mut ctx = RealizeCtx::new(FieldTag::Rational);
        let r = realize(&s, RealizationSignature::Lambda2FStar, &mut ctx).unwrap();
        assert_eq!(r.residual(), 0.0);
        assert_eq!(r.magnitude, 0.0);
    }

    #[test]
    fn delta2_of_five_term_realizes_to_exact_zero() {
        for seed in [1u64, 2, 3, 4] {
            let g = random_config(seed, 1, 5, FieldTag::Gaussian, 19).unwrap();
            let ft = five_term(&g.config.points).unwrap();
            let d = delta2(&ft).unwrap();
            let mut ctx = RealizeCtx::new(FieldTag::Gaussian);
            let r = realize(&d, RealizationSignature::Lambda2FStar, &mut ctx).unwrap();
            assert!(
                r.entries.is_empty(),
                "Λ² realization must cancel exactly, got {} entries (seed {seed})",
                r.entries.len()
            );
            assert!(r.magnitude > 0.0);
        }
    }

    #[test]
    fn d_realization_kills_five_term() {
        let g = random_config(9, 1, 5, FieldTag::Gaussian, 19).unwrap();
        let ft = five_term(&g.config.points).unwrap();
        let mut ctx = RealizeCtx::new(FieldTag::Gaussian);
        let r = realize(&ft, RealizationSignature::ScalarWeight2, &mut ctx).unwrap();
        assert!(r.residual() < 1e-9, "residual {}", r.residual());
    }

    #[test]
    fn realize_is_additive() {
        let g = random_config(31, 1, 5, FieldTag::Gaussian, 9).unwrap();
        let a = five_term(&g.config.points).unwrap();
        let g2 = random_config(37, 1, 5, FieldTag::Gaussian, 9).unwrap();
        let b = five_term(&g2.config.points).unwrap();
        let mut ctx = RealizeCtx::new(FieldTag::Gaussian);
        let ra = realize(&delta2(&a).unwrap(), RealizationSignature::Lambda2FStar, &mut ctx)
            .unwrap();
        let rb = realize(&delta2(&b).unwrap(), RealizationSignature::Lambda2FStar, &mut ctx)
            .unwrap();
        let combined = delta2(&a.clone().added(&b)).unwrap();
        let rc = realize(&combined, RealizationSignature::Lambda2FStar, &mut ctx).unwrap();
        let mut sum = RealizationResult::default();
        sum.add(&ra);
        sum.add(&rb);
        for (k, v) in &rc.entries {
            let w = sum.entries.get(k).copied().unwrap_or(0.0);
            assert_eq!(*v, w, "entry {k:?}");
        }
        let _ = rint(0);
    }
}
