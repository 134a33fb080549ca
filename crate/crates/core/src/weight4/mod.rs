//! The degree-4 cobracket δ = (δ₃,₁, δ₁,₃, δ₂,₂) on eight points of P³, the
//! comparison maps f₇(4) = f₂,₂ + f′₃,₁ + f″₃,₁ on seven vectors of V₄, the
//! g-map trading Λ²Z[P¹] for B₃⊗F*, and the composite δ̄.
//!
//! Alternations run over coset representatives of each builder's symmetry
//! group: block sorting for the two 4-blocks of δ₃,₁/δ₁,₃ and the
//! center-swap × Klein moves of the projected cross-ratios, which shrinks
//! the 8!-term loops to a few hundred builder calls.

use std::collections::HashMap;

use num_rational::BigRational;

use crate::error::{EngineError, Result};
use crate::formal::{
    alt_keyed, fstar, li, rat, rint, sig, BuiltTerm, FormalSum, FormalTerm,
};
use crate::geom::{determinant, Configuration, SimplexPair};
use crate::maps::{a3, r3_of_points, A3Variant, R3Mode};
use crate::scalar::FieldScalar;

/// The three components of the degree-4 cobracket.
#[derive(Debug, Clone)]
pub struct DeltaG4 {
    /// Alt₈((l₁,…,l₄; l₅,…,l₈) ⊗ Δ(l₅,l₆,l₇,l₈)) ∈ A⁰₃ ⊗ F*.
    pub d31: FormalSum,
    /// −Alt₈(Δ(l₁,…,l₄) ⊗ (l₁,…,l₄; l₅,…,l₈)) ∈ F* ⊗ A⁰₃.
    pub d13: FormalSum,
    /// (288/7)·Alt₈((l₁,l₂|l₃,l₄,l₅,l₆)₂ ∧ (l₃,l₄|l₁,l₂,l₅,l₇)₂) ∈ Λ²B₂.
    pub d22: FormalSum,
}

/// Determinant table over the 4-subsets of a lifted configuration.
pub struct DetTable {
    dets: HashMap<[usize; 4], FieldScalar>,
}

impl DetTable {
    pub fn new(config: &Configuration) -> Result<Self> {
        let n = config.len();
        let mut dets = HashMap::new();
        let lifts: Vec<Vec<FieldScalar>> = (0..n).map(|k| config.lift(k)).collect();
        for a in 0..n {
            for b in (a + 1)..n {
                for c in (b + 1)..n {
                    for d in (c + 1)..n {
                        let rows = vec![
                            lifts[a].clone(),
                            lifts[b].clone(),
                            lifts[c].clone(),
                            lifts[d].clone(),
                        ];
                        dets.insert([a, b, c, d], determinant(&rows)?);
                    }
                }
            }
        }
        Ok(DetTable { dets })
    }

    /// Δ of four indices in any order, with the sorting sign.
    pub fn det(&self, idx: [usize; 4]) -> FieldScalar {
        let (sorted, sign) = sort4(idx);
        let v = self.dets.get(&sorted).expect("index in table").clone();
        if sign < 0 {
            -v
        } else {
            v
        }
    }

    /// Cross-ratio of the projection from the line (p,q) of (c,d,e,f):
    /// Δ(pqce)Δ(pqdf) / (Δ(pqcf)Δ(pqde)).
    pub fn proj_cross_ratio(&self, p: usize, q: usize, s: [usize; 4]) -> Result<FieldScalar> {
        let num = self.det([p, q, s[0], s[2]]) * self.det([p, q, s[1], s[3]]);
        let den = self.det([p, q, s[0], s[3]]) * self.det([p, q, s[1], s[2]]);
        if den.is_zero() {
            return Err(EngineError::Degenerate(
                "projected cross-ratio denominator vanishes".into(),
            ));
        }
        Ok(num.checked_div(&den)?)
    }
}

fn sort4(mut v: [usize; 4]) -> ([usize; 4], i8) {
    let mut sign = 1i8;
    for i in 1..4 {
        let mut j = i;
        while j > 0 && v[j] < v[j - 1] {
            v.swap(j, j - 1);
            sign = -sign;
            j -= 1;
        }
    }
    (v, sign)
}

/// Lexicographic representative of the Klein orbit of cross-ratio slots.
fn klein_min(t: [usize; 4]) -> [usize; 4] {
    let orbit = [
        t,
        [t[1], t[0], t[3], t[2]],
        [t[2], t[3], t[0], t[1]],
        [t[3], t[2], t[1], t[0]],
    ];
    *orbit.iter().min().unwrap()
}

/// Symbol key of (p,q | s₀,s₁,s₂,s₃)₂ under its exact symmetries.
pub fn wedge_symbol_key(p: usize, q: usize, s: [usize; 4]) -> (usize, usize, [usize; 4]) {
    let (cp, cq) = if p <= q { (p, q) } else { (q, p) };
    (cp, cq, klein_min(s))
}

use wedge_symbol_key as symbol_key;

/// Alt₈((l₁,l₂|l₃,l₄,l₅,l₆)₂ ∧ (l₃,l₄|l₁,l₂,l₅,l₇)₂) without the 288/7
/// normalization; the δ₂,₂ coboundary computations quote it bare.
pub fn bare_alt8_wedge(config: &Configuration) -> Result<FormalSum> {
    let table = DetTable::new(config)?;
    alt_keyed(
        8,
        sig::LAMBDA2_B2,
        rint(1),
        |p| wedge22_key(p, 8),
        |p| wedge22_build(&table, p),
    )
}

fn pair_of(config: &Configuration, a: &[usize], b: &[usize]) -> Result<SimplexPair> {
    SimplexPair::new(
        config.dim,
        a.iter().map(|&i| config.points[i].clone()).collect(),
        b.iter().map(|&i| config.points[i].clone()).collect(),
    )
}

/// The degree-4 cobracket on a generic lifted 8-tuple in P³.
pub fn delta_g4(config: &Configuration) -> Result<DeltaG4> {
    if config.dim != 3 || config.len() != 8 {
        return Err(EngineError::Shape("delta needs 8 lifted points of P³".into()));
    }
    let table = DetTable::new(config)?;

    let block_key = |p: &[usize]| -> Option<(([usize; 4], [usize; 4]), i8)> {
        let (a, sa) = sort4([p[0], p[1], p[2], p[3]]);
        let (b, sb) = sort4([p[4], p[5], p[6], p[7]]);
        Some(((a, b), sa * sb))
    };

    let d31 = alt_keyed(8, sig::PAIR_FSTAR, rint(1), block_key, |p| {
        let pair = pair_of(config, &p[..4], &p[4..])?;
        let delta = table.det([p[4], p[5], p[6], p[7]]);
        degeneracy_guard(&delta)?;
        Ok(BuiltTerm::unit(FormalTerm::Tensor(vec![
            FormalTerm::Pair(pair),
            fstar(delta),
        ])))
    })?;

    let d13 = alt_keyed(8, sig::FSTAR_PAIR, rint(-1), block_key, |p| {
        let pair = pair_of(config, &p[..4], &p[4..])?;
        let delta = table.det([p[0], p[1], p[2], p[3]]);
        degeneracy_guard(&delta)?;
        Ok(BuiltTerm::unit(FormalTerm::Tensor(vec![
            fstar(delta),
            FormalTerm::Pair(pair),
        ])))
    })?;

    let d22 = alt_keyed(
        8,
        sig::LAMBDA2_B2,
        rat(288, 7),
        |p| wedge22_key(p, 8),
        |p| wedge22_build(&table, p),
    )?;

    Ok(DeltaG4 { d31, d13, d22 })
}

fn degeneracy_guard(delta: &FieldScalar) -> Result<()> {
    if delta.is_zero() {
        return Err(EngineError::Degenerate("Δ vanishes on a 4-subset".into()));
    }
    Ok(())
}

type WedgeKey = ((usize, usize, [usize; 4]), (usize, usize, [usize; 4]));

/// Key for (p₀p₁|p₂p₃p₄p₅)₂ ∧ (p₂p₃|p₀p₁p₄p₆)₂; slot 7 (or beyond) unused.
fn wedge22_key(p: &[usize], _n: usize) -> Option<(WedgeKey, i8)> {
    let ka = symbol_key(p[0], p[1], [p[2], p[3], p[4], p[5]]);
    let kb = symbol_key(p[2], p[3], [p[0], p[1], p[4], p[6]]);
    match ka.cmp(&kb) {
        std::cmp::Ordering::Less => Some(((ka, kb), 1)),
        std::cmp::Ordering::Greater => Some(((kb, ka), -1)),
        std::cmp::Ordering::Equal => None,
    }
}

fn wedge22_build(table: &DetTable, p: &[usize]) -> Result<BuiltTerm> {
    let ra = table.proj_cross_ratio(p[0], p[1], [p[2], p[3], p[4], p[5]])?;
    let rb = table.proj_cross_ratio(p[2], p[3], [p[0], p[1], p[4], p[6]])?;
    Ok(BuiltTerm::unit(FormalTerm::Wedge(vec![
        li(2, ra),
        li(2, rb),
    ])))
}

// ---------------------------------------------------------------------------
// f₇(4) on seven vectors of V₄.
// ---------------------------------------------------------------------------

#[derive(Debug, Clone)]
pub struct F74 {
    /// f′₃,₁ + f″₃,₁ ∈ B₃ ⊗ F*.
    pub b3_fstar: FormalSum,
    /// f₂,₂, a wedge of weight-2 symbols (the Λ²Z[P¹] route of δ̄ retags
    /// it).
    pub lambda2: FormalSum,
}

/// f₇(4) = f₂,₂ + f′₃,₁ + f″₃,₁ with coefficients 288/7, −32/6, 96.
pub fn f7_4(config: &Configuration) -> Result<F74> {
    if config.dim != 3 || config.len() != 7 {
        return Err(EngineError::Shape("f7(4) needs 7 lifted vectors of V₄".into()));
    }
    let table = DetTable::new(config)?;

    let lambda2 = alt_keyed(
        7,
        sig::LAMBDA2_B2,
        rat(288, 7),
        |p| wedge22_key(p, 7),
        |p| wedge22_build(&table, p),
    )?;

    // f′₃,₁: r₃ of the projection from p₀, tensored with Δ(p₀,p₁,p₂,p₃).
    // r₃ is alternating, so the sorted remainder is the orbit
    // representative;
    // the Δ-set contributes modulo torsion.
    let f31p = alt_keyed(
        7,
        sig::B3_FSTAR,
        rat(-32, 6),
        |p| {
            let center = p[0];
            let (rest, rest_sign) = {
                let mut v: Vec<usize> = p[1..].to_vec();
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
            };
            let (dset, _) = sort4([p[0], p[1], p[2], p[3]]);
            Some(((center, rest, dset), rest_sign))
        },
        |p| {
            let center = &config.points[p[0]];
            let targets: Vec<_> = p[1..].iter().map(|&i| config.points[i].clone()).collect();
            let imgs = crate::geom::project(std::slice::from_ref(center), &targets)?;
            let r3sum = r3_of_points(&imgs, R3Mode::Generic)?;
            let delta = table.det([p[0], p[1], p[2], p[3]]);
            degeneracy_guard(&delta)?;
            let mut stream = Vec::new();
            for (term, coeff) in r3sum.iter() {
                stream.push((
                    coeff.clone(),
                    FormalTerm::Tensor(vec![term.clone(), fstar(delta.clone())]),
                ));
            }
            Ok(BuiltTerm::Terms(stream))
        },
    )?;

    // f″₃,₁: {r(p₀,p₄ | p₁,p₅,p₂,p₆)}₃ ⊗ Δ(p₀,p₁,p₂,p₃).
    let f31pp = alt_keyed(
        7,
        sig::B3_FSTAR,
        rint(96),
        |p| {
            let k = symbol_key(p[0], p[4], [p[1], p[5], p[2], p[6]]);
            let (dset, _) = sort4([p[0], p[1], p[2], p[3]]);
            Some(((k, dset), 1))
        },
        |p| {
            let r = table.proj_cross_ratio(p[0], p[4], [p[1], p[5], p[2], p[6]])?;
            let delta = table.det([p[0], p[1], p[2], p[3]]);
            degeneracy_guard(&delta)?;
            Ok(BuiltTerm::unit(FormalTerm::Tensor(vec![
                li(3, r),
                fstar(delta),
            ])))
        },
    )?;

    Ok(F74 {
        b3_fstar: f31p.added(&f31pp),
        lambda2,
    })
}

// ---------------------------------------------------------------------------
// The g-map and δ̄.
// ---------------------------------------------------------------------------

/// The parity-graded six-element orbit of x under the cross-ratio moves:
/// even {x, 1/(1−x), (x−1)/x}, odd {1/x, 1−x, x/(x−1)}.
fn s3_orbit(x: &FieldScalar) -> Result<Vec<(FieldScalar, i8)>> {
    if x.is_zero() || x.is_one() {
        return Err(EngineError::Degenerate(
            "g-map argument must avoid 0 and 1".into(),
        ));
    }
    let omx = x.one_minus();
    Ok(vec![
        (x.clone(), 1),
        (omx.inv()?, 1),
        (x.inv()?.one_minus(), 1),
        (x.inv()?, -1),
        (omx.clone(), -1),
        (x.clone().checked_div(&(-omx.clone()))?, -1),
    ])
}

/// g: {x} ∧ {y} ↦ −(1/12)·Σ_{σ₁,σ₂∈S₃} (−1)^{|σ₁|+|σ₂|}
/// {σ₁(x)/σ₂(y)}₃ ⊗ (1−σ₁(x))/(1−σ₂(y)).
pub fn g_map(s: &FormalSum) -> Result<FormalSum> {
    let mut out = FormalSum::zero(sig::B3_FSTAR);
    for (term, coeff) in s.iter() {
        let FormalTerm::Wedge(fs) = term else {
            return Err(EngineError::Signature("g-map expects wedge terms".into()));
        };
        let (x, y) = match (&fs[0], &fs[1]) {
            (FormalTerm::Li { weight: 1, arg: x }, FormalTerm::Li { weight: 1, arg: y }) => {
                (x.clone(), y.clone())
            }
            _ => {
                return Err(EngineError::Signature(
                    "g-map expects wedges of weight-1 symbols".into(),
                ))
            }
        };
        let norm = coeff.clone() * rat(-1, 12);
        for (sx, px) in s3_orbit(&x)? {
            for (sy, py) in s3_orbit(&y)? {
                let arg = sx.clone().checked_div(&sy)?;
                let fs_val = sx.one_minus().checked_div(&sy.one_minus())?;
                let sign: BigRational = rint((px * py) as i64);
                out.add_term(
                    norm.clone() * sign,
                    FormalTerm::Tensor(vec![li(3, arg), fstar(fs_val)]),
                );
            }
        }
    }
    Ok(out)
}

/// Retag a Λ²B₂-shaped wedge of weight-2 symbols as Λ²Z[P¹].
pub fn lambda2_b2_to_zp1(s: &FormalSum) -> Result<FormalSum> {
    let mut out = FormalSum::zero(sig::LAMBDA2_ZP1);
    for (term, coeff) in s.iter() {
        let FormalTerm::Wedge(fs) = term else {
            return Err(EngineError::Signature("wedge expected".into()));
        };
        let retag = |t: &FormalTerm| -> Result<FormalTerm> {
            match t {
                FormalTerm::Li { weight: 2, arg } => Ok(li(1, arg.clone())),
                other => Err(EngineError::Signature(format!(
                    "weight-2 symbol expected, found {}",
                    other.encode()
                ))),
            }
        };
        out.add_term(
            coeff.clone(),
            FormalTerm::Wedge(vec![retag(&fs[0])?, retag(&fs[1])?]),
        );
    }
    Ok(out)
}

/// δ̄ of 8 points of P³: lift, take the omit boundary, apply
/// f̄₇(4) = (id ⊕ g)∘(f₃,₁ ⊕ f₂,₂) into B₃ ⊗ F*.
pub fn bar_delta(config: &Configuration) -> Result<FormalSum> {
    if config.dim != 3 || config.len() != 8 {
        return Err(EngineError::Shape("δ̄ needs 8 points of P³".into()));
    }
    let mut out = FormalSum::zero(sig::B3_FSTAR);
    for i in 0..8 {
        let pts: Vec<_> = config
            .points
            .iter()
            .enumerate()
            .filter(|(k, _)| *k != i)
            .map(|(_, p)| p.clone())
            .collect();
        let lifts: Vec<_> = (0..8).filter(|&k| k != i).map(|k| config.lift(k)).collect();
        let sub = Configuration::new(3, config.field, pts)?.with_lifts(lifts)?;
        let f = f7_4(&sub)?;
        let sign = rint(if i % 2 == 0 { 1 } else { -1 });
        out.add(&f.b3_fstar.scaled(&sign));
        out.add(&g_map(&lambda2_b2_to_zp1(&f.lambda2)?)?.scaled(&sign));
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::formal::permutations_signed;
    use crate::geom::random_config;
    use crate::scalar::FieldTag;
    use num_traits::Signed;

    fn config8(seed: u64) -> Configuration {
        random_config(seed, 3, 8, FieldTag::Rational, 9).unwrap().config
    }

    #[test]
    fn d31_orbit_count_and_coefficients() {
        let c = config8(111);
        let d = delta_g4(&c).unwrap();
        assert_eq!(d.d31.len(), 70, "C(8,4) canonical pairs");
        for (_, coeff) in d.d31.iter() {
            assert_eq!(coeff.abs(), rint(576), "blockwise S₄×S₄ multiplicity");
        }
        assert_eq!(d.d13.len(), 70);
    }

    #[test]
    fn d31_matches_brute_force() {
        // The full 8!-term alternation must agree with the keyed version.
        let c = config8(117);
        let fast = delta_g4(&c).unwrap().d31;
        let table = DetTable::new(&c).unwrap();
        let mut slow = FormalSum::zero(sig::PAIR_FSTAR);
        for (p, sign) in permutations_signed(8) {
            let pair = pair_of(&c, &p[..4], &p[4..]).unwrap();
            let delta = table.det([p[4], p[5], p[6], p[7]]);
            slow.add_term(
                rint(sign as i64),
                FormalTerm::Tensor(vec![FormalTerm::Pair(pair), fstar(delta)]),
            );
        }
        assert_eq!(fast, slow);
    }

    #[test]
    fn d22_matches_brute_force() {
        let c = config8(119);
        let fast = delta_g4(&c).unwrap().d22;
        let table = DetTable::new(&c).unwrap();
        let mut slow = FormalSum::zero(sig::LAMBDA2_B2);
        for (p, sign) in permutations_signed(8) {
            let ra = table
                .proj_cross_ratio(p[0], p[1], [p[2], p[3], p[4], p[5]])
                .unwrap();
            let rb = table
                .proj_cross_ratio(p[2], p[3], [p[0], p[1], p[4], p[6]])
                .unwrap();
            slow.add_term(
                rat(sign as i64 * 288, 7),
                FormalTerm::Wedge(vec![li(2, ra), li(2, rb)]),
            );
        }
        assert_eq!(fast, slow);
    }

    #[test]
    fn skew_symmetry_termwise() {
        let c = config8(123);
        let mut swapped_points = c.points.clone();
        swapped_points.swap(0, 1);
        let mut swapped_lifts = c.lifts_all();
        swapped_lifts.swap(0, 1);
        let cs = Configuration::new(3, c.field, swapped_points)
            .unwrap()
            .with_lifts(swapped_lifts)
            .unwrap();
        let a = delta_g4(&c).unwrap();
        let b = delta_g4(&cs).unwrap();
        assert_eq!(a.d31, b.d31.negated());
        assert_eq!(a.d13, b.d13.negated());
        assert_eq!(a.d22, b.d22.negated());
    }

    #[test]
    fn d31_d13_exchange() {
        // Reversing tensor factors and the two 4-blocks exchanges the
        // components up to the displayed sign.
        let c = config8(131);
        let d = delta_g4(&c).unwrap();
        let mut transposed = FormalSum::zero(sig::FSTAR_PAIR);
        for (term, coeff) in d.d31.iter() {
            let FormalTerm::Tensor(fs) = term else { panic!() };
            let FormalTerm::Pair(p) = &fs[0] else { panic!() };
            // Swap the two 4-blocks of the pair and the tensor order.
            let swapped = FormalTerm::Pair(SimplexPair {
                dim: p.dim,
                l: p.m.clone(),
                m: p.l.clone(),
            });
            transposed.add_term(
                coeff.clone(),
                FormalTerm::Tensor(vec![fs[1].clone(), swapped]),
            );
        }
        // Alt₈ composed with the block swap (an even permutation of 8
        // slots composed with 4 transpositions… compare directly):
        assert_eq!(transposed, d.d13.clone().negated());
    }

    #[test]
    fn proj_cross_ratio_matches_projection() {
        let c = config8(137);
        let table = DetTable::new(&c).unwrap();
        let centers = [c.points[0].clone(), c.points[1].clone()];
        let targets: Vec<_> = (2..6).map(|i| c.points[i].clone()).collect();
        let imgs = crate::geom::project(&centers, &targets).unwrap();
        let direct = crate::geom::cross_ratio(&imgs[0], &imgs[1], &imgs[2], &imgs[3]).unwrap();
        let fast = table.proj_cross_ratio(0, 1, [2, 3, 4, 5]).unwrap();
        assert_eq!(direct, fast);
    }

    #[test]
    fn g_map_raw_term_count() {
        let mut s = FormalSum::zero(sig::LAMBDA2_ZP1);
        s.add_term(
            rint(1),
            FormalTerm::Wedge(vec![
                li(1, FieldScalar::from_ratio(2, 7)),
                li(1, FieldScalar::from_ratio(-3, 5)),
            ]),
        );
        let g = g_map(&s).unwrap();
        // 36 raw products merge only by accidental coincidences.
        assert!(g.len() <= 36 && g.len() >= 30, "got {}", g.len());
    }
}
