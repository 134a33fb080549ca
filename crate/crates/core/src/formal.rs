//! Sparse formal sums with exact rational coefficients over a canonical term
//! grammar, the alternation operator with orbit deduplication, and the
//! symbol-level differentials δ₂, δ₃, the weight-4 δ and δ̃.

use std::collections::BTreeMap;
use std::fmt;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use crate::error::{EngineError, Result};
use crate::geom::{Configuration, SimplexPair};
use crate::scalar::FieldScalar;

pub fn rat(n: i64, d: i64) -> BigRational {
    BigRational::new(BigInt::from(n), BigInt::from(d))
}

pub fn rint(n: i64) -> BigRational {
    BigRational::from_integer(BigInt::from(n))
}

/// Target-group descriptor carried by every formal sum.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Signature(pub String);

impl Signature {
    pub fn new(s: &str) -> Self {
        Signature(s.to_string())
    }
}

impl fmt::Display for Signature {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.0)
    }
}

pub mod sig {
    /// Shared signature names.
    pub const ZFSTAR_W1: &str = "Z[P1]";
    pub const ZFSTAR_W2: &str = "B2";
    pub const ZFSTAR_W3: &str = "B3";
    pub const LAMBDA2_FSTAR: &str = "Λ²F*";
    pub const LAMBDA3_FSTAR: &str = "Λ³F*";
    pub const B2_FSTAR: &str = "B2⊗F*";
    pub const B3_FSTAR: &str = "B3⊗F*";
    pub const LAMBDA2_B2: &str = "Λ²B2";
    pub const LAMBDA2_ZP1: &str = "Λ²Z[P1]";
    pub const B2_LAMBDA2_FSTAR: &str = "B2⊗Λ²F*";
    pub const B3_FSTAR_PLUS_LAMBDA2_B2: &str = "B3⊗F* ⊕ Λ²B2";
    pub const B3_FSTAR_PLUS_LAMBDA2_ZP1: &str = "B3⊗F* ⊕ Λ²Z[P1]";
    pub const PAIR_FSTAR: &str = "A⁰⊗F*";
    pub const FSTAR_PAIR: &str = "F*⊗A⁰";
    pub const PAIR_PAIR: &str = "A⊗A";
    pub const FSTAR3: &str = "(F*)⊗³";
    pub const CONFIGS: &str = "Z[configurations]";
    pub const CHAIN: &str = "C(V)";
}

/// Canonical term grammar; composites nest (for example B₂⊗Λ²F* terms are
/// Tensor[Li₂, Wedge[FStar, FStar]]).
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum FormalTerm {
    Li { weight: u8, arg: FieldScalar },
    FStar(FieldScalar),
    Config(Configuration),
    Pair(SimplexPair),
    Tensor(Vec<FormalTerm>),
    Wedge(Vec<FormalTerm>),
}

impl FormalTerm {
    /// Canonical encoding used in JSON and reports.
    pub fn encode(&self) -> String {
        match self {
            FormalTerm::Li { weight, arg } => format!("li{}({})", weight, arg.encode()),
            FormalTerm::FStar(x) => format!("f*({})", x.encode()),
            FormalTerm::Config(c) => {
                let pts: Vec<String> = c.points.iter().map(|p| p.to_string()).collect();
                format!("cfg(d{};{})", c.dim, pts.join(","))
            }
            FormalTerm::Pair(p) => {
                let l: Vec<String> = p.l.iter().map(|q| q.to_string()).collect();
                let m: Vec<String> = p.m.iter().map(|q| q.to_string()).collect();
                format!("pair(d{};{}|{})", p.dim, l.join(","), m.join(","))
            }
            FormalTerm::Tensor(fs) => {
                let parts: Vec<String> = fs.iter().map(|f| f.encode()).collect();
                format!("({})", parts.join("⊗"))
            }
            FormalTerm::Wedge(fs) => {
                let parts: Vec<String> = fs.iter().map(|f| f.encode()).collect();
                format!("({})", parts.join("∧"))
            }
        }
    }

    /// Canonical form with the sign it absorbs; `None` when the term is zero
    /// (limit rules, repeated wedge factors, torsion units).
    pub fn canonicalize(self) -> Option<(FormalTerm, i8)> {
        match self {
            FormalTerm::Li { weight, arg } => {
                if arg.is_zero() {
                    return None;
                }
                if arg.is_one() && weight != 3 {
                    return None;
                }
                Some((FormalTerm::Li { weight, arg }, 1))
            }
            FormalTerm::FStar(x) => {
                assert!(!x.is_zero(), "F* atom of zero");
                let n = x.unit_normalized();
                if n.is_one() {
                    return None;
                }
                Some((FormalTerm::FStar(n), 1))
            }
            FormalTerm::Config(c) => Some((FormalTerm::Config(c), 1)),
            FormalTerm::Pair(p) => {
                let (l, sl) = sort_signed(p.l);
                let (m, sm) = sort_signed(p.m);
                Some((
                    FormalTerm::Pair(SimplexPair { dim: p.dim, l, m }),
                    sl * sm,
                ))
            }
            FormalTerm::Tensor(fs) => {
                let mut sign = 1i8;
                let mut out = Vec::with_capacity(fs.len());
                for f in fs {
                    let (cf, s) = f.canonicalize()?;
                    sign *= s;
                    out.push(cf);
                }
                Some((FormalTerm::Tensor(out), sign))
            }
            FormalTerm::Wedge(fs) => {
                let mut sign = 1i8;
                let mut out = Vec::with_capacity(fs.len());
                for f in fs {
                    let (cf, s) = f.canonicalize()?;
                    sign *= s;
                    out.push(cf);
                }
                let (sorted, s) = sort_signed(out);
                for w in sorted.windows(2) {
                    if w[0] == w[1] {
                        return None;
                    }
                }
                Some((FormalTerm::Wedge(sorted), sign * s))
            }
        }
    }
}

/// Stable insertion sort returning the permutation parity; `0` never occurs
/// (equal elements keep their order and are handled by the caller).
fn sort_signed<T: Ord>(mut v: Vec<T>) -> (Vec<T>, i8) {
    let mut sign = 1i8;
    for i in 1..v.len() {
        let mut j = i;
        while j > 0 && v[j] < v[j - 1] {
            v.swap(j, j - 1);
            sign = -sign;
            j -= 1;
        }
    }
    (v, sign)
}

/// Ordered list of (coefficient, raw term) pairs in deterministic build
/// order; the unmerged counterpart of a `FormalSum`.
pub type TermStream = Vec<(BigRational, FormalTerm)>;

/// Sparse formal linear combination over canonical terms.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FormalSum {
    pub signature: Signature,
    terms: BTreeMap<FormalTerm, BigRational>,
}

impl FormalSum {
    pub fn zero(signature: &str) -> Self {
        FormalSum {
            signature: Signature::new(signature),
            terms: BTreeMap::new(),
        }
    }

    pub fn from_stream(signature: &str, stream: TermStream) -> Self {
        let mut s = FormalSum::zero(signature);
        for (c, t) in stream {
            s.add_term(c, t);
        }
        s
    }

    pub fn add_term(&mut self, coeff: BigRational, term: FormalTerm) {
        if coeff.is_zero() {
            return;
        }
        if let Some((canon, sign)) = term.canonicalize() {
            let signed = if sign < 0 { -coeff } else { coeff };
            use std::collections::btree_map::Entry;
            match self.terms.entry(canon) {
                Entry::Occupied(mut o) => {
                    *o.get_mut() += signed;
                    if o.get().is_zero() {
                        o.remove();
                    }
                }
                Entry::Vacant(v) => {
                    v.insert(signed);
                }
            }
        }
    }

    pub fn add(&mut self, other: &FormalSum) {
        assert_eq!(
            self.signature, other.signature,
            "formal sum signatures must match"
        );
        for (t, c) in &other.terms {
            self.add_term(c.clone(), t.clone());
        }
    }

    pub fn added(mut self, other: &FormalSum) -> Self {
        self.add(other);
        self
    }

    pub fn scaled(mut self, factor: &BigRational) -> Self {
        if factor.is_zero() {
            self.terms.clear();
            return self;
        }
        for v in self.terms.values_mut() {
            *v *= factor;
        }
        self
    }

    pub fn negated(self) -> Self {
        self.scaled(&-BigRational::one())
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn iter(&self) -> impl Iterator<Item = (&FormalTerm, &BigRational)> {
        self.terms.iter()
    }

    pub fn coeff(&self, term: &FormalTerm) -> BigRational {
        self.terms.get(term).cloned().unwrap_or_else(BigRational::zero)
    }

    /// Retarget the signature (for inclusions like Z[F*] ⊂ B₃).
    pub fn with_signature(mut self, signature: &str) -> Self {
        self.signature = Signature::new(signature);
        self
    }

    pub fn encode_json(&self) -> serde_json::Value {
        let terms: Vec<serde_json::Value> = self
            .terms
            .iter()
            .map(|(t, c)| {
                serde_json::json!({
                    "term": t.encode(),
                    "coeff": c.to_string(),
                })
            })
            .collect();
        serde_json::json!({
            "signature": self.signature.0,
            "terms": terms,
        })
    }
}

// ---------------------------------------------------------------------------
// Alternation.
// ---------------------------------------------------------------------------

/// What a builder produced for one permutation.
pub enum BuiltTerm {
    /// The permutation contributes nothing (limit rules already applied).
    Zero,
    Terms(TermStream),
}

impl BuiltTerm {
    pub fn single(coeff: BigRational, term: FormalTerm) -> Self {
        BuiltTerm::Terms(vec![(coeff, term)])
    }

    pub fn unit(term: FormalTerm) -> Self {
        BuiltTerm::single(BigRational::one(), term)
    }
}

/// Degeneracy handling inside an alternation.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum AltMode {
    /// A degeneracy error aborts with the permutation attached.
    Strict,
    /// A degeneracy error drops the offending term.
    Limit,
}

/// Signed permutations of 0..n in lexicographic order.
pub fn permutations_signed(n: usize) -> Vec<(Vec<usize>, i8)> {
    let mut out = Vec::new();
    let mut idx: Vec<usize> = (0..n).collect();
    loop {
        out.push((idx.clone(), perm_sign(&idx)));
        if !next_permutation(&mut idx) {
            break;
        }
    }
    out
}

pub fn perm_sign(p: &[usize]) -> i8 {
    let mut sign = 1i8;
    for i in 0..p.len() {
        for j in (i + 1)..p.len() {
            if p[i] > p[j] {
                sign = -sign;
            }
        }
    }
    sign
}

fn next_permutation(p: &mut [usize]) -> bool {
    if p.len() < 2 {
        return false;
    }
    let mut i = p.len() - 1;
    while i > 0 && p[i - 1] >= p[i] {
        i -= 1;
    }
    if i == 0 {
        return false;
    }
    let mut j = p.len() - 1;
    while p[j] <= p[i - 1] {
        j -= 1;
    }
    p.swap(i - 1, j);
    p[i..].reverse();
    true
}

/// Σ_σ sign(σ)·builder(σ), over the full symmetric group, scaled by
/// `normalization`.
pub fn alt<F>(
    n: usize,
    signature: &str,
    normalization: BigRational,
    mode: AltMode,
    mut builder: F,
) -> Result<FormalSum>
where
    F: FnMut(&[usize]) -> Result<BuiltTerm>,
{
    let mut sum = FormalSum::zero(signature);
    for (perm, sign) in permutations_signed(n) {
        match builder(&perm) {
            Ok(BuiltTerm::Zero) => {}
            Ok(BuiltTerm::Terms(stream)) => {
                for (c, t) in stream {
                    let signed = if sign < 0 { -c } else { c };
                    sum.add_term(signed * &normalization, t);
                }
            }
            Err(EngineError::Degenerate(msg)) => match mode {
                AltMode::Limit => {}
                AltMode::Strict => {
                    return Err(EngineError::Degenerate(format!(
                        "{msg} (permutation {perm:?})"
                    )))
                }
            },
            Err(e) => return Err(e),
        }
    }
    Ok(sum)
}

/// Alternation over a product of symmetric groups acting on labeled slot
/// blocks. `blocks` lists the slot indices of each block; slots outside every
/// block stay fixed. The builder receives the composed slot map.
pub fn alt_blocks<F>(
    slots: usize,
    blocks: &[Vec<usize>],
    signature: &str,
    normalization: BigRational,
    mode: AltMode,
    mut builder: F,
) -> Result<FormalSum>
where
    F: FnMut(&[usize]) -> Result<BuiltTerm>,
{
    let per_block: Vec<Vec<(Vec<usize>, i8)>> = blocks
        .iter()
        .map(|b| permutations_signed(b.len()))
        .collect();
    let mut sum = FormalSum::zero(signature);
    let mut choice = vec![0usize; blocks.len()];
    loop {
        let mut map: Vec<usize> = (0..slots).collect();
        let mut sign = 1i8;
        for (bi, block) in blocks.iter().enumerate() {
            let (perm, s) = &per_block[bi][choice[bi]];
            sign *= s;
            for (k, &slot) in block.iter().enumerate() {
                map[slot] = block[perm[k]];
            }
        }
        match builder(&map) {
            Ok(BuiltTerm::Zero) => {}
            Ok(BuiltTerm::Terms(stream)) => {
                for (c, t) in stream {
                    let signed = if sign < 0 { -c } else { c };
                    sum.add_term(signed * &normalization, t);
                }
            }
            Err(EngineError::Degenerate(msg)) => match mode {
                AltMode::Limit => {}
                AltMode::Strict => {
                    return Err(EngineError::Degenerate(format!(
                        "{msg} (slot map {map:?})"
                    )))
                }
            },
            Err(e) => return Err(e),
        }
        // Advance the mixed-radix counter.
        let mut bi = 0;
        loop {
            if bi == blocks.len() {
                return Ok(sum);
            }
            choice[bi] += 1;
            if choice[bi] < per_block[bi].len() {
                break;
            }
            choice[bi] = 0;
            bi += 1;
        }
    }
}

/// Orbit-deduplicated alternation: `key_fn` maps a permutation to a cheap
/// canonical key and the relative sign of the built value against the key's
/// representative; the expensive builder runs once per surviving key.
///
/// Soundness contract: builder(σ) = relsign(σ) · builder(rep) canonically for
/// every σ with key(σ) = key(rep).
pub fn alt_keyed<K, FK, FB>(
    n: usize,
    signature: &str,
    normalization: BigRational,
    mut key_fn: FK,
    mut builder: FB,
) -> Result<FormalSum>
where
    K: Ord,
    FK: FnMut(&[usize]) -> Option<(K, i8)>,
    FB: FnMut(&[usize]) -> Result<BuiltTerm>,
{
    struct Bucket {
        accum: i64,
        rep: Vec<usize>,
        rep_relsign: i8,
    }
    let mut buckets: BTreeMap<K, Bucket> = BTreeMap::new();
    for (perm, sign) in permutations_signed(n) {
        let Some((key, relsign)) = key_fn(&perm) else {
            continue;
        };
        let entry = buckets.entry(key).or_insert_with(|| Bucket {
            accum: 0,
            rep: perm.clone(),
            rep_relsign: relsign,
        });
        entry.accum += (sign * relsign) as i64;
    }
    let mut sum = FormalSum::zero(signature);
    for bucket in buckets.into_values() {
        if bucket.accum == 0 {
            continue;
        }
        let scale = &normalization
            * BigRational::from_integer(BigInt::from(bucket.accum * bucket.rep_relsign as i64));
        match builder(&bucket.rep)? {
            BuiltTerm::Zero => {}
            BuiltTerm::Terms(stream) => {
                for (c, t) in stream {
                    sum.add_term(c * &scale, t);
                }
            }
        }
    }
    Ok(sum)
}

// ---------------------------------------------------------------------------
// Symbol-level differentials.
// ---------------------------------------------------------------------------

pub fn li(weight: u8, arg: FieldScalar) -> FormalTerm {
    FormalTerm::Li { weight, arg }
}

pub fn fstar(x: FieldScalar) -> FormalTerm {
    FormalTerm::FStar(x)
}

fn expect_li(term: &FormalTerm, weight: u8, ctx: &str) -> Result<FieldScalar> {
    match term {
        FormalTerm::Li { weight: w, arg } if *w == weight => Ok(arg.clone()),
        other => Err(EngineError::Signature(format!(
            "{ctx}: expected weight-{weight} symbol, found {}",
            other.encode()
        ))),
    }
}

/// δ₂ : B₂ → Λ²F*, {x}₂ ↦ (1−x) ∧ x, extended linearly.
pub fn delta2(s: &FormalSum) -> Result<FormalSum> {
    let mut out = FormalSum::zero(sig::LAMBDA2_FSTAR);
    for (term, coeff) in s.iter() {
        let x = expect_li(term, 2, "delta2")?;
        out.add_term(
            coeff.clone(),
            FormalTerm::Wedge(vec![fstar(x.one_minus()), fstar(x)]),
        );
    }
    Ok(out)
}

/// δ₃ : B₃ → B₂⊗F*, {x}₃ ↦ {x}₂ ⊗ x, extended linearly.
pub fn delta3_symbol(s: &FormalSum) -> Result<FormalSum> {
    let mut out = FormalSum::zero(sig::B2_FSTAR);
    for (term, coeff) in s.iter() {
        let x = expect_li(term, 3, "delta3")?;
        out.add_term(
            coeff.clone(),
            FormalTerm::Tensor(vec![li(2, x.clone()), fstar(x)]),
        );
    }
    Ok(out)
}

/// Weight-4 δ : B₃⊗F* ⊕ Λ²B₂ → B₂⊗Λ²F*.
///
/// {x}₃ ⊗ y ↦ {x}₂ ⊗ x∧y and
/// {x}₂ ∧ {y}₂ ↦ {y}₂ ⊗ (1−x)∧x − {x}₂ ⊗ (1−y)∧y.
pub fn delta4_symbol(s: &FormalSum) -> Result<FormalSum> {
    let mut out = FormalSum::zero(sig::B2_LAMBDA2_FSTAR);
    for (term, coeff) in s.iter() {
        match term {
            FormalTerm::Tensor(fs) if fs.len() == 2 => {
                let x = expect_li(&fs[0], 3, "delta4 tensor factor")?;
                let y = match &fs[1] {
                    FormalTerm::FStar(y) => y.clone(),
                    other => {
                        return Err(EngineError::Signature(format!(
                            "delta4: expected F* factor, found {}",
                            other.encode()
                        )))
                    }
                };
                out.add_term(
                    coeff.clone(),
                    FormalTerm::Tensor(vec![
                        li(2, x.clone()),
                        FormalTerm::Wedge(vec![fstar(x), fstar(y)]),
                    ]),
                );
            }
            FormalTerm::Wedge(fs) if fs.len() == 2 => {
                let x = expect_li(&fs[0], 2, "delta4 wedge factor")?;
                let y = expect_li(&fs[1], 2, "delta4 wedge factor")?;
                out.add_term(
                    coeff.clone(),
                    FormalTerm::Tensor(vec![
                        li(2, y.clone()),
                        FormalTerm::Wedge(vec![fstar(x.one_minus()), fstar(x.clone())]),
                    ]),
                );
                out.add_term(
                    -coeff.clone(),
                    FormalTerm::Tensor(vec![
                        li(2, x),
                        FormalTerm::Wedge(vec![fstar(y.one_minus()), fstar(y)]),
                    ]),
                );
            }
            other => {
                return Err(EngineError::Signature(format!(
                    "delta4: unexpected term {}",
                    other.encode()
                )))
            }
        }
    }
    Ok(out)
}

/// δ̃ : Λ²Z[P¹] → B₂⊗Λ²F*, {x}∧{y} ↦ {y}₂⊗(1−x)∧x − {x}₂⊗(1−y)∧y.
pub fn tilde_delta(s: &FormalSum) -> Result<FormalSum> {
    let mut out = FormalSum::zero(sig::B2_LAMBDA2_FSTAR);
    for (term, coeff) in s.iter() {
        let FormalTerm::Wedge(fs) = term else {
            return Err(EngineError::Signature(format!(
                "tilde_delta: expected wedge, found {}",
                term.encode()
            )));
        };
        if fs.len() != 2 {
            return Err(EngineError::Signature("tilde_delta: wedge of two".into()));
        }
        let x = expect_li(&fs[0], 1, "tilde_delta")?;
        let y = expect_li(&fs[1], 1, "tilde_delta")?;
        if x.is_one() || y.is_one() {
            continue;
        }
        out.add_term(
            coeff.clone(),
            FormalTerm::Tensor(vec![
                li(2, y.clone()),
                FormalTerm::Wedge(vec![fstar(x.one_minus()), fstar(x.clone())]),
            ]),
        );
        out.add_term(
            -coeff.clone(),
            FormalTerm::Tensor(vec![
                li(2, x),
                FormalTerm::Wedge(vec![fstar(y.one_minus()), fstar(y)]),
            ]),
        );
    }
    Ok(out)
}

/// B₂⊗F* → Λ³F*, {x}₂⊗y ↦ (1−x)∧x∧y.
pub fn b2f_to_lambda3(s: &FormalSum) -> Result<FormalSum> {
    let mut out = FormalSum::zero(sig::LAMBDA3_FSTAR);
    for (term, coeff) in s.iter() {
        let FormalTerm::Tensor(fs) = term else {
            return Err(EngineError::Signature("expected tensor".into()));
        };
        let x = expect_li(&fs[0], 2, "b2f_to_lambda3")?;
        let FormalTerm::FStar(y) = &fs[1] else {
            return Err(EngineError::Signature("expected F* factor".into()));
        };
        out.add_term(
            coeff.clone(),
            FormalTerm::Wedge(vec![fstar(x.one_minus()), fstar(x), fstar(y.clone())]),
        );
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn fs(n: i64, d: i64) -> FieldScalar {
        FieldScalar::from_ratio(n, d)
    }

    #[test]
    fn wedge_canonicalization() {
        let t = FormalTerm::Wedge(vec![fstar(fs(3, 1)), fstar(fs(2, 1))]);
        let (canon, sign) = t.canonicalize().unwrap();
        assert_eq!(sign, -1);
        assert_eq!(
            canon,
            FormalTerm::Wedge(vec![fstar(fs(2, 1)), fstar(fs(3, 1))])
        );
        // Repeated factor dies.
        let t = FormalTerm::Wedge(vec![fstar(fs(2, 1)), fstar(fs(2, 1))]);
        assert!(t.canonicalize().is_none());
        // Torsion unit kills an F* slot.
        let t = FormalTerm::Wedge(vec![fstar(fs(-1, 1)), fstar(fs(2, 1))]);
        assert!(t.canonicalize().is_none());
    }

    #[test]
    fn canonicalize_is_idempotent() {
        let t = FormalTerm::Tensor(vec![
            li(2, fs(5, 7)),
            FormalTerm::Wedge(vec![fstar(fs(-9, 2)), fstar(fs(4, 3))]),
        ]);
        let (c1, s1) = t.canonicalize().unwrap();
        let (c2, s2) = c1.clone().canonicalize().unwrap();
        assert_eq!(c1, c2);
        assert_eq!(s2, 1);
        let _ = s1;
    }

    #[test]
    fn sum_linearity() {
        let mut a = FormalSum::zero(sig::ZFSTAR_W3);
        a.add_term(rat(2, 3), li(3, fs(5, 1)));
        a.add_term(rat(1, 3), li(3, fs(5, 1)));
        assert_eq!(a.coeff(&li(3, fs(5, 1))), rint(1));
        a.add_term(rint(-1), li(3, fs(5, 1)));
        assert!(a.is_zero());
    }

    #[test]
    fn alt2_of_symmetric_builder_is_zero() {
        let s = alt(2, sig::ZFSTAR_W2, rint(1), AltMode::Strict, |p| {
            // Symmetric in the two slots.
            let x = fs((p[0] + p[1]) as i64 + 2, 1);
            Ok(BuiltTerm::unit(li(2, x)))
        })
        .unwrap();
        assert!(s.is_zero());
    }

    #[test]
    fn alt6_enumerates_720() {
        let mut count = 0usize;
        let _ = alt(6, sig::ZFSTAR_W3, rint(1), AltMode::Strict, |_| {
            count += 1;
            Ok(BuiltTerm::Zero)
        })
        .unwrap();
        assert_eq!(count, 720);
    }

    #[test]
    fn delta2_examples() {
        let mut s = FormalSum::zero(sig::ZFSTAR_W2);
        s.add_term(rint(1), li(2, fs(1, 2)));
        // (1/2) ∧ (1/2) = 0.
        assert!(delta2(&s).unwrap().is_zero());
    }

    #[test]
    fn delta3_kills_argument_one() {
        let mut s = FormalSum::zero(sig::ZFSTAR_W3);
        s.add_term(rint(1), li(3, fs(1, 1)));
        assert_eq!(s.len(), 1, "weight-3 keeps {{1}}");
        assert!(delta3_symbol(&s).unwrap().is_zero());
    }

    #[test]
    fn delta3_then_lambda3_is_zero() {
        let mut s = FormalSum::zero(sig::ZFSTAR_W3);
        s.add_term(rint(1), li(3, fs(7, 3)));
        let d = delta3_symbol(&s).unwrap();
        let l3 = b2f_to_lambda3(&d).unwrap();
        assert!(l3.is_zero(), "(1-x)∧x∧x has a repeated factor");
    }

    #[test]
    fn delta4_examples() {
        // {x}₃⊗x → {x}₂⊗x∧x = 0.
        let mut s = FormalSum::zero(sig::B3_FSTAR);
        s.add_term(rint(1), FormalTerm::Tensor(vec![li(3, fs(5, 2)), fstar(fs(5, 2))]));
        assert!(delta4_symbol(&s).unwrap().is_zero());

        // {2}₂∧{3}₂ → {3}₂⊗(−1)∧2 − {2}₂⊗(−2)∧3; the first term dies on the
        // torsion unit −1, the second keeps (2)∧3 with a sign from −2 ↦ 2.
        let mut s = FormalSum::zero(sig::LAMBDA2_B2);
        s.add_term(
            rint(1),
            FormalTerm::Wedge(vec![li(2, fs(2, 1)), li(2, fs(3, 1))]),
        );
        let d = delta4_symbol(&s).unwrap();
        let expected_term = FormalTerm::Tensor(vec![
            li(2, fs(2, 1)),
            FormalTerm::Wedge(vec![fstar(fs(2, 1)), fstar(fs(3, 1))]),
        ]);
        assert_eq!(d.coeff(&expected_term), rint(-1));
        assert_eq!(d.len(), 1);
    }

    #[test]
    fn tilde_delta_agrees_with_delta4_on_wedges() {
        let x = fs(2, 1);
        let y = fs(3, 1);
        let mut w1 = FormalSum::zero(sig::LAMBDA2_ZP1);
        w1.add_term(rint(1), FormalTerm::Wedge(vec![li(1, x.clone()), li(1, y.clone())]));
        let mut w2 = FormalSum::zero(sig::LAMBDA2_B2);
        w2.add_term(rint(1), FormalTerm::Wedge(vec![li(2, x), li(2, y)]));
        assert_eq!(tilde_delta(&w1).unwrap(), delta4_symbol(&w2).unwrap());
    }

    #[test]
    fn tilde_delta_kills_equal_wedge() {
        let mut w = FormalSum::zero(sig::LAMBDA2_ZP1);
        w.add_term(
            rint(1),
            FormalTerm::Wedge(vec![li(1, fs(2, 1)), li(1, fs(2, 1))]),
        );
        assert!(w.is_zero());
    }
}
