//! The generalized cross-ratio of six points on the plane:
//!
//! r₃(x₁,…,x₆) = (1/15)·Alt₆ { Δ(x₁x₂x₄)Δ(x₂x₃x₅)Δ(x₃x₁x₆) /
//!                              Δ(x₁x₂x₅)Δ(x₂x₃x₆)Δ(x₃x₁x₄) } ∈ Z[F*∖{1}]
//!
//! with the limit extension that drops arguments 0 and ∞ and sends any
//! configuration with a coincidence or four points on a line to zero.

use num_rational::BigRational;

use crate::error::{EngineError, Result};
use crate::formal::{li, rat, sig, FormalSum, FormalTerm, TermStream};
use crate::geom::ProjectivePoint;
use crate::scalar::FieldScalar;

use super::configs::PlaneConfig6;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum R3Mode {
    Generic,
    Limit,
}

/// Numerator/denominator triple slots of the alternated ratio.
const NUM_SLOTS: [[usize; 3]; 3] = [[0, 1, 3], [1, 2, 4], [2, 0, 5]];
const DEN_SLOTS: [[usize; 3]; 3] = [[0, 1, 4], [1, 2, 5], [2, 0, 3]];

type Triple = ([usize; 3], i8);

fn signed_sorted(mut t: [usize; 3]) -> Triple {
    let mut sign = 1i8;
    if t[0] > t[1] {
        t.swap(0, 1);
        sign = -sign;
    }
    if t[1] > t[2] {
        t.swap(1, 2);
        sign = -sign;
    }
    if t[0] > t[1] {
        t.swap(0, 1);
        sign = -sign;
    }
    (t, sign)
}

pub fn r3(config: &PlaneConfig6, mode: R3Mode) -> Result<FormalSum> {
    let stream = r3_stream(config, mode)?;
    Ok(FormalSum::from_stream(sig::ZFSTAR_W3, stream))
}

pub fn r3_of_points(points: &[ProjectivePoint], mode: R3Mode) -> Result<FormalSum> {
    r3(&PlaneConfig6::new(points.to_vec())?, mode)
}

/// The unmerged term stream of r₃ in deterministic orbit order.
pub fn r3_stream(config: &PlaneConfig6, mode: R3Mode) -> Result<TermStream> {
    let profile = config.profile();
    if !profile.coincidences.is_empty() || profile.four_on_line {
        return Ok(Vec::new());
    }
    if mode == R3Mode::Generic && !profile.is_generic() {
        return Err(EngineError::Degenerate(format!(
            "generic-mode r3 on a degenerate configuration (collinear {:?})",
            profile.collinear_triples
        )));
    }

    // All twenty 3-subset determinants of the six points.
    let mut dets: Vec<Vec<Vec<FieldScalar>>> =
        vec![vec![vec![FieldScalar::zero(); 6]; 6]; 6];
    for i in 0..6 {
        for j in (i + 1)..6 {
            for k in (j + 1)..6 {
                dets[i][j][k] = config.det3(i, j, k);
            }
        }
    }
    let det = |t: &Triple| -> FieldScalar {
        let v = dets[t.0[0]][t.0[1]][t.0[2]].clone();
        if t.1 < 0 {
            -v
        } else {
            v
        }
    };

    // Orbit key: the two signed-triple multisets and the net sign determine
    // the ratio value; group the 720 permutations by key before building.
    use std::collections::BTreeMap;
    type Key = ([[usize; 3]; 3], [[usize; 3]; 3], i8);
    struct Bucket {
        accum: i64,
    }
    let mut buckets: BTreeMap<Key, Bucket> = BTreeMap::new();
    for (perm, sign) in crate::formal::permutations_signed(6) {
        let mut num: Vec<Triple> = NUM_SLOTS
            .iter()
            .map(|s| signed_sorted([perm[s[0]], perm[s[1]], perm[s[2]]]))
            .collect();
        let mut den: Vec<Triple> = DEN_SLOTS
            .iter()
            .map(|s| signed_sorted([perm[s[0]], perm[s[1]], perm[s[2]]]))
            .collect();
        let mut net = 1i8;
        for t in num.iter().chain(den.iter()) {
            net *= t.1;
        }
        num.sort_by_key(|t| t.0);
        den.sort_by_key(|t| t.0);
        let key: Key = (
            [num[0].0, num[1].0, num[2].0],
            [den[0].0, den[1].0, den[2].0],
            net,
        );
        buckets.entry(key).or_insert(Bucket { accum: 0 }).accum += sign as i64;
    }

    let norm = rat(1, 15);
    let mut out: TermStream = Vec::new();
    for (key, bucket) in buckets {
        if bucket.accum == 0 {
            continue;
        }
        let (numk, denk, net) = key;
        let num_val = numk.iter().fold(FieldScalar::one(), |acc, t| {
            acc * dets[t[0]][t[1]][t[2]].clone()
        });
        let den_val = denk.iter().fold(FieldScalar::one(), |acc, t| {
            acc * dets[t[0]][t[1]][t[2]].clone()
        });
        let num_zero = num_val.is_zero();
        let den_zero = den_val.is_zero();
        if num_zero || den_zero {
            match mode {
                // {0}₃ = {∞}₃ = 0; a 0/0 term dies by either rule. For a
                // configuration with a single collinear triple 0/0 cannot
                // occur: the numerator and denominator triples of one
                // permutation are disjoint index sets.
                R3Mode::Limit => continue,
                R3Mode::Generic => {
                    return Err(EngineError::Degenerate(
                        "vanishing determinant in generic-mode r3".into(),
                    ))
                }
            }
        }
        let mut value = num_val.checked_div(&den_val)?;
        if net < 0 {
            value = -value;
        }
        let coeff: BigRational = rat(bucket.accum, 1) * &norm;
        out.push((coeff, li(3, value)));
        let _ = &det;
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::formal::rint;
    use crate::geom::random_config;
    use crate::scalar::FieldTag;
    use num_traits::{Signed, Zero};

    fn random_plane6(seed: u64) -> PlaneConfig6 {
        let g = random_config(seed, 2, 6, FieldTag::Rational, 19).unwrap();
        PlaneConfig6::new(g.config.points.clone()).unwrap()
    }

    #[test]
    fn coincident_points_give_zero() {
        let g = random_config(3, 2, 5, FieldTag::Rational, 9).unwrap();
        let mut pts = g.config.points.clone();
        pts.push(pts[3].clone());
        let c = PlaneConfig6::new(pts).unwrap();
        assert!(r3(&c, R3Mode::Limit).unwrap().is_zero());
        assert!(r3(&c, R3Mode::Generic).unwrap().is_zero());
    }

    #[test]
    fn generic_r3_orbit_structure() {
        // The multiset stabilizer of the triple ratio is the 3-cycle
        // (x₁x₂x₃)(x₄x₅x₆): 240 distinct symbols of coefficient ±1/5.
        let c = random_plane6(17);
        let s = r3(&c, R3Mode::Generic).unwrap();
        assert_eq!(s.len(), 240);
        for (_, coeff) in s.iter() {
            assert_eq!(coeff.abs(), rat(1, 5), "coefficient {coeff}");
        }
    }

    #[test]
    fn r3_is_projectively_invariant() {
        use crate::geom::ProjectivePoint;
        let c = random_plane6(23);
        // A fixed invertible matrix with small integer entries.
        let m = [[2i64, 1, 0], [1, 1, 3], [0, 2, 1]];
        let transform = |p: &ProjectivePoint| {
            let co = p.coords();
            let mut out = Vec::with_capacity(3);
            for row in &m {
                let mut acc = FieldScalar::zero();
                for (j, &e) in row.iter().enumerate() {
                    acc = acc + FieldScalar::from_integer(e) * &co[j];
                }
                out.push(acc);
            }
            ProjectivePoint::new(out).unwrap()
        };
        let moved: Vec<ProjectivePoint> = c.points().iter().map(transform).collect();
        let cm = PlaneConfig6::new(moved).unwrap();
        assert_eq!(
            r3(&c, R3Mode::Generic).unwrap(),
            r3(&cm, R3Mode::Generic).unwrap()
        );
    }

    #[test]
    fn r3_is_alternating_in_its_points() {
        let c = random_plane6(29);
        let mut swapped = c.points().to_vec();
        swapped.swap(0, 1);
        let cs = PlaneConfig6::new(swapped).unwrap();
        assert_eq!(
            r3(&c, R3Mode::Generic).unwrap(),
            r3(&cs, R3Mode::Generic).unwrap().negated()
        );
    }

    #[test]
    fn brute_force_alt6_oracle() {
        // Frozen oracle: the plain 720-term alternation merged by hand must
        // match the orbit-deduplicated fast path.
        let c = random_plane6(31);
        let fast = r3(&c, R3Mode::Generic).unwrap();
        let mut slow = FormalSum::zero(sig::ZFSTAR_W3);
        for (perm, sign) in crate::formal::permutations_signed(6) {
            let tri = |s: &[usize; 3]| {
                let rows = vec![
                    c.points()[perm[s[0]]].coords().to_vec(),
                    c.points()[perm[s[1]]].coords().to_vec(),
                    c.points()[perm[s[2]]].coords().to_vec(),
                ];
                crate::geom::determinant(&rows).unwrap()
            };
            let num = tri(&NUM_SLOTS[0]) * tri(&NUM_SLOTS[1]) * tri(&NUM_SLOTS[2]);
            let den = tri(&DEN_SLOTS[0]) * tri(&DEN_SLOTS[1]) * tri(&DEN_SLOTS[2]);
            let v = num.checked_div(&den).unwrap();
            slow.add_term(rat(sign as i64, 15), li(3, v));
        }
        assert_eq!(fast, slow);
    }

    #[test]
    fn one_collinear_triple_never_hits_zero_over_zero() {
        // Configurations with exactly one collinear triple stay limit-safe.
        for seed in [5u64, 11, 19] {
            let g = random_config(seed, 2, 5, FieldTag::Rational, 9).unwrap();
            let p = &g.config.points;
            // Force slots 0,1,2 collinear: replace slot 2 by a point on the
            // line through 0 and 1.
            let sum_point = {
                let a = p[0].coords();
                let b = p[1].coords();
                let coords: Vec<FieldScalar> = (0..3)
                    .map(|k| a[k].clone() + b[k].clone() * FieldScalar::from_integer(2))
                    .collect();
                crate::geom::ProjectivePoint::new(coords).unwrap()
            };
            let pts = vec![
                p[0].clone(),
                p[1].clone(),
                sum_point,
                p[2].clone(),
                p[3].clone(),
                p[4].clone(),
            ];
            let c = PlaneConfig6::new(pts).unwrap();
            assert_eq!(c.profile().collinear_triples.len(), 1);
            let s = r3(&c, R3Mode::Limit).unwrap();
            assert!(!s.is_zero());
            for (_, coeff) in s.iter() {
                assert!(!coeff.is_zero());
            }
            let _ = rint(0);
        }
    }
}
