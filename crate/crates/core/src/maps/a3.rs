//! The tetrahedron-pair comparison maps:
//!
//! a₃′ = Σ (−1)^{i+j} r₃(lᵢ | l-rest; m-rest), a₃″ = Σ (−1)^{i+j} μ₃ on the
//! projection from the line lᵢmⱼ, and a₃ = ⅙ a₃′ − ⅓ a₃″; the p₃ = d/d̂
//! decompositions of the same data; and f₅(3) on five vectors of V₃.

use num_rational::BigRational;

use crate::error::{EngineError, Result};
use crate::formal::{fstar, li, rat, rint, sig, FormalSum, FormalTerm, TermStream};
use crate::geom::{
    cross_ratio, determinant, line_through, project, Configuration, ProjectivePoint, SimplexPair,
};
use crate::scalar::FieldScalar;

use super::configs::{LineConfig33, PlaneConfig6};
use super::mu3::mu3_stream;
use super::r3::{r3_stream, R3Mode};

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum A3Variant {
    Prime,
    DoublePrime,
    Combined,
}

pub fn a3(pair: &SimplexPair, variant: A3Variant, mode: R3Mode) -> Result<FormalSum> {
    Ok(FormalSum::from_stream(
        sig::ZFSTAR_W3,
        a3_stream(pair, variant, mode)?,
    ))
}

/// Unmerged a₃ terms in deterministic (i, j) and orbit order.
pub fn a3_stream(pair: &SimplexPair, variant: A3Variant, mode: R3Mode) -> Result<TermStream> {
    if pair.dim != 3 {
        return Err(EngineError::Shape("a3 needs tetrahedra in P³".into()));
    }
    match variant {
        A3Variant::Prime => a3_prime_stream(pair, mode, &rint(1)),
        A3Variant::DoublePrime => a3_doubleprime_stream(pair, &rint(1)),
        A3Variant::Combined => {
            let mut out = a3_prime_stream(pair, mode, &rat(1, 6))?;
            out.extend(a3_doubleprime_stream(pair, &rat(-1, 3))?);
            Ok(out)
        }
    }
}

fn omit<T: Clone>(xs: &[T], skip: usize) -> Vec<T> {
    xs.iter()
        .enumerate()
        .filter(|(k, _)| *k != skip)
        .map(|(_, x)| x.clone())
        .collect()
}

fn a3_prime_stream(pair: &SimplexPair, mode: R3Mode, scale: &BigRational) -> Result<TermStream> {
    let mut out = TermStream::new();
    for i in 0..4 {
        let l_rest = omit(&pair.l, i);
        for j in 0..4 {
            let m_rest = omit(&pair.m, j);
            let mut targets = l_rest.clone();
            targets.extend(m_rest);
            let imgs = project(std::slice::from_ref(&pair.l[i]), &targets).map_err(|e| {
                EngineError::Degenerate(format!("a3' projection failed at ({i},{j}): {e}"))
            })?;
            let plane = PlaneConfig6::new(imgs)?;
            let sign = if (i + j) % 2 == 0 { 1 } else { -1 };
            let coeff = rint(sign) * scale;
            for (c, t) in r3_stream(&plane, mode)? {
                out.push((c * &coeff, t));
            }
        }
    }
    Ok(out)
}

fn a3_doubleprime_stream(pair: &SimplexPair, scale: &BigRational) -> Result<TermStream> {
    let mut out = TermStream::new();
    for i in 0..4 {
        let l_rest = omit(&pair.l, i);
        for j in 0..4 {
            let m_rest = omit(&pair.m, j);
            let centers = [pair.l[i].clone(), pair.m[j].clone()];
            let x_imgs = project(&centers, &l_rest).map_err(|e| {
                EngineError::Degenerate(format!("a3'' projection failed at ({i},{j}): {e}"))
            })?;
            let y_imgs = project(&centers, &m_rest).map_err(|e| {
                EngineError::Degenerate(format!("a3'' projection failed at ({i},{j}): {e}"))
            })?;
            let line = LineConfig33::new(
                [x_imgs[0].clone(), x_imgs[1].clone(), x_imgs[2].clone()],
                [y_imgs[0].clone(), y_imgs[1].clone(), y_imgs[2].clone()],
            )?;
            let sign = if (i + j) % 2 == 0 { 1 } else { -1 };
            let coeff = rint(sign) * scale;
            for (c, t) in mu3_stream(&line)? {
                out.push((c * &coeff, t));
            }
        }
    }
    Ok(out)
}

// ---------------------------------------------------------------------------
// p₃ decomposition: the d and d̂ views of the same homomorphism.
// ---------------------------------------------------------------------------

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum P3Variant {
    D,
    DHat,
}

/// The configuration-level decomposition of a₃.
///
/// D-variant terms are 6-point P² configurations: the 16 signed projections
/// (lᵢ | …) plus twice the 16 signed duals of the degenerate line-six
/// configurations d(lᵢ,mⱼ‖…) (whose duals carry one collinear triple).
///
/// DHat-variant terms are the 3+3 cuts on the line Lᵢ ∩ Mⱼ, stored as
/// six collinear P³ points grouped first-three/last-three.
pub fn p3_decomposition(pair: &SimplexPair, variant: P3Variant) -> Result<FormalSum> {
    if pair.dim != 3 {
        return Err(EngineError::Shape("p3 needs tetrahedra in P³".into()));
    }
    let field = pair.l[0].coords()[0].field_tag().max(pair.m[0].coords()[0].field_tag());
    let mut out = FormalSum::zero(sig::CONFIGS);
    for i in 0..4 {
        let l_rest = omit(&pair.l, i);
        for j in 0..4 {
            let m_rest = omit(&pair.m, j);
            let sign = rint(if (i + j) % 2 == 0 { 1 } else { -1 });
            match variant {
                P3Variant::D => {
                    // Projected plane configuration.
                    let mut targets = l_rest.clone();
                    targets.extend(m_rest.clone());
                    let imgs = project(std::slice::from_ref(&pair.l[i]), &targets)?;
                    out.add_term(
                        sign.clone(),
                        FormalTerm::Config(Configuration::new(2, field, imgs)?),
                    );

                    // The degenerate six-line configuration, dualized.
                    let all_m: Vec<ProjectivePoint> = pair.m.clone();
                    let mut seven = l_rest.clone();
                    seven.extend(all_m);
                    let imgs7 = project(std::slice::from_ref(&pair.l[i]), &seven)?;
                    let (l_img, m_img) = imgs7.split_at(3);
                    let mut lines = Vec::with_capacity(6);
                    for t in 0..3 {
                        let others: Vec<usize> = (0..3).filter(|&u| u != t).collect();
                        lines.push(line_through(&l_img[others[0]], &l_img[others[1]])?);
                    }
                    for k in 0..4 {
                        if k != j {
                            lines.push(line_through(&m_img[j], &m_img[k])?);
                        }
                    }
                    out.add_term(
                        sign * rint(2),
                        FormalTerm::Config(Configuration::new(2, field, lines)?),
                    );
                }
                P3Variant::DHat => {
                    let cuts = dhat_cuts(&l_rest, &m_rest)?;
                    out.add_term(
                        sign,
                        FormalTerm::Config(Configuration::new(3, field, cuts)?),
                    );
                }
            }
        }
    }
    Ok(out)
}

/// The 3+3 points cut on the line Lᵢ ∩ Mⱼ by the sides of the two opposite
/// triangles; each side meets the opposite face plane in one point.
fn dhat_cuts(
    l_rest: &[ProjectivePoint],
    m_rest: &[ProjectivePoint],
) -> Result<Vec<ProjectivePoint>> {
    let side_cut = |u: &ProjectivePoint,
                    v: &ProjectivePoint,
                    plane: &[ProjectivePoint]|
     -> Result<ProjectivePoint> {
        // span{u,v} ∩ span(plane): αu + βv with det(x, plane) = 0.
        let det_with = |x: &ProjectivePoint| -> Result<FieldScalar> {
            let mut rows = vec![x.coords().to_vec()];
            rows.extend(plane.iter().map(|p| p.coords().to_vec()));
            determinant(&rows)
        };
        let du = det_with(u)?;
        let dv = det_with(v)?;
        if du.is_zero() && dv.is_zero() {
            return Err(EngineError::Degenerate(
                "triangle side lies in the opposite face plane".into(),
            ));
        }
        let coords: Vec<FieldScalar> = u
            .coords()
            .iter()
            .zip(v.coords())
            .map(|(uc, vc)| uc.clone() * &dv - vc.clone() * &du)
            .collect();
        ProjectivePoint::new(coords)
    };
    let mut cuts = Vec::with_capacity(6);
    for t in 0..3 {
        let o: Vec<usize> = (0..3).filter(|&u| u != t).collect();
        cuts.push(side_cut(&l_rest[o[0]], &l_rest[o[1]], m_rest)?);
    }
    for t in 0..3 {
        let o: Vec<usize> = (0..3).filter(|&u| u != t).collect();
        cuts.push(side_cut(&m_rest[o[0]], &m_rest[o[1]], l_rest)?);
    }
    Ok(cuts)
}

// ---------------------------------------------------------------------------
// f₅(3): C₅(V₃) → B₂ ⊗ F*.
// ---------------------------------------------------------------------------

/// f₅(3)(l₁,…,l₅) = ½·Alt₅({r(l₁|l₂,…,l₅)}₂ ⊗ Δ(l₁,l₂,l₃)) on five lifted
/// vectors of V₃.
pub fn f5_3(config: &Configuration) -> Result<FormalSum> {
    if config.dim != 2 || config.len() != 5 {
        return Err(EngineError::Shape("f5(3) needs 5 vectors of V₃".into()));
    }
    // Cache the projections from each center.
    let mut images: Vec<Vec<ProjectivePoint>> = Vec::with_capacity(5);
    for c in 0..5 {
        let targets = omit(&config.points, c);
        images.push(project(std::slice::from_ref(&config.points[c]), &targets)?);
    }
    let img = |center: usize, point: usize| -> &ProjectivePoint {
        let slot = if point < center { point } else { point - 1 };
        &images[center][slot]
    };

    crate::formal::alt(
        5,
        sig::B2_FSTAR,
        rat(1, 2),
        crate::formal::AltMode::Strict,
        |p| {
            let r = cross_ratio(
                img(p[0], p[1]),
                img(p[0], p[2]),
                img(p[0], p[3]),
                img(p[0], p[4]),
            )?;
            let rows = vec![config.lift(p[0]), config.lift(p[1]), config.lift(p[2])];
            let delta = determinant(&rows)?;
            if delta.is_zero() {
                return Err(EngineError::Degenerate("Δ vanishes in f5(3)".into()));
            }
            Ok(crate::formal::BuiltTerm::unit(FormalTerm::Tensor(vec![
                li(2, r),
                fstar(delta),
            ])))
        },
    )
}

// ---------------------------------------------------------------------------
// The coplanar ansatz configuration.
// ---------------------------------------------------------------------------

/// A pair (l₀,…,l₃; m₀,…,m₃) with l₀ and all four m's on a common plane,
/// together with the six-point plane configuration
/// (l₁₂, l₁₃, l₂₃, m₁, m₂, m₃) cut on that plane by the edges of the upper
/// face, in plane coordinates.
pub fn a3_ansatz_config(seed: u64, field: crate::scalar::FieldTag) -> Result<(SimplexPair, PlaneConfig6)> {
    use crate::geom::random_config;
    'attempt: for attempt in 0..64 {
        let g = random_config(seed.wrapping_add(attempt * 7919), 3, 8, field, 7)?;
        let p = &g.config.points;
        // Plane spanned by p0, p1, p2; put l0 and m0..m3 on it.
        let basis = [p[0].clone(), p[1].clone(), p[2].clone()];
        let in_plane = |a: i64, b: i64, c: i64| -> Result<ProjectivePoint> {
            let coords: Vec<FieldScalar> = (0..4)
                .map(|k| {
                    basis[0].coords()[k].clone() * FieldScalar::from_integer(a)
                        + basis[1].coords()[k].clone() * FieldScalar::from_integer(b)
                        + basis[2].coords()[k].clone() * FieldScalar::from_integer(c)
                })
                .collect();
            ProjectivePoint::new(coords)
        };
        use rand::{Rng, SeedableRng};
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(seed.wrapping_add(attempt));
        let mut sample = || -> Result<ProjectivePoint> {
            loop {
                let (a, b, c) = (
                    rng.gen_range(-9i64..=9),
                    rng.gen_range(-9i64..=9),
                    rng.gen_range(-9i64..=9),
                );
                if a != 0 || b != 0 || c != 0 {
                    return in_plane(a, b, c);
                }
            }
        };
        let l0 = sample()?;
        let m: Vec<ProjectivePoint> = (0..4).map(|_| sample()).collect::<Result<_>>()?;
        let l = vec![l0.clone(), p[5].clone(), p[6].clone(), p[7].clone()];
        let Ok(pair) = SimplexPair::new(3, l, m.clone()) else {
            continue;
        };
        // The five coplanar points must be in general position inside the
        // plane and the upper face generic.
        for i in 0..4 {
            for j in (i + 1)..4 {
                if pair.m[i] == pair.m[j] {
                    continue 'attempt;
                }
            }
            if pair.m[i] == l0 {
                continue 'attempt;
            }
        }
        // Edge-plane cuts of the upper face (l1,l2,l3).
        let edge_cut = |u: &ProjectivePoint, v: &ProjectivePoint| -> Result<ProjectivePoint> {
            let det_with = |x: &ProjectivePoint| -> Result<FieldScalar> {
                let mut rows = vec![x.coords().to_vec()];
                rows.extend(basis.iter().map(|q| q.coords().to_vec()));
                determinant(&rows)
            };
            let du = det_with(u)?;
            let dv = det_with(v)?;
            let coords: Vec<FieldScalar> = u
                .coords()
                .iter()
                .zip(v.coords())
                .map(|(uc, vc)| uc.clone() * &dv - vc.clone() * &du)
                .collect();
            ProjectivePoint::new(coords)
        };
        let l12 = edge_cut(&pair.l[1], &pair.l[2])?;
        let l13 = edge_cut(&pair.l[1], &pair.l[3])?;
        let l23 = edge_cut(&pair.l[2], &pair.l[3])?;
        // Express the six plane points in the plane's own coordinates.
        let plane_pts = [
            l12,
            l13,
            l23,
            pair.m[1].clone(),
            pair.m[2].clone(),
            pair.m[3].clone(),
        ];
        let mut six = Vec::with_capacity(6);
        for q in &plane_pts {
            six.push(plane_coordinates(&basis, q)?);
        }
        let Ok(plane) = PlaneConfig6::new(six) else {
            continue;
        };
        if !plane.profile().coincidences.is_empty() || plane.profile().four_on_line {
            continue;
        }
        return Ok((pair, plane));
    }
    Err(EngineError::Resource(
        "ansatz configuration retry budget exhausted".into(),
    ))
}

/// Coordinates of a point of the plane spanned by three P³ points.
fn plane_coordinates(
    basis: &[ProjectivePoint; 3],
    point: &ProjectivePoint,
) -> Result<ProjectivePoint> {
    // Solve point = a·b0 + b·b1 + c·b2 on three independent coordinate rows.
    let rows: Vec<Vec<FieldScalar>> = basis.iter().map(|p| p.coords().to_vec()).collect();
    // Find three columns where the basis matrix is invertible.
    for c0 in 0..4 {
        for c1 in (c0 + 1)..4 {
            for c2 in (c1 + 1)..4 {
                let m = vec![
                    vec![rows[0][c0].clone(), rows[1][c0].clone(), rows[2][c0].clone()],
                    vec![rows[0][c1].clone(), rows[1][c1].clone(), rows[2][c1].clone()],
                    vec![rows[0][c2].clone(), rows[1][c2].clone(), rows[2][c2].clone()],
                ];
                let det = determinant(&m)?;
                if det.is_zero() {
                    continue;
                }
                // Cramer solve for (a, b, c).
                let rhs = [
                    point.coords()[c0].clone(),
                    point.coords()[c1].clone(),
                    point.coords()[c2].clone(),
                ];
                let mut sol = Vec::with_capacity(3);
                for var in 0..3 {
                    let mut mm = m.clone();
                    for r in 0..3 {
                        mm[r][var] = rhs[r].clone();
                    }
                    sol.push(determinant(&mm)?.checked_div(&det)?);
                }
                // Verify the remaining coordinate.
                let sol_pt = ProjectivePoint::new(sol.clone())?;
                for k in 0..4 {
                    let expect = sol[0].clone() * &rows[0][k]
                        + sol[1].clone() * &rows[1][k]
                        + sol[2].clone() * &rows[2][k];
                    if expect != point.coords()[k] {
                        return Err(EngineError::Degenerate(
                            "point is not on the spanned plane".into(),
                        ));
                    }
                }
                return Ok(sol_pt);
            }
        }
    }
    Err(EngineError::Degenerate("basis does not span a plane".into()))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::geom::random_config;
    use crate::scalar::FieldTag;

    fn random_pair(seed: u64) -> SimplexPair {
        let g = random_config(seed, 3, 8, FieldTag::Rational, 19).unwrap();
        let p = g.config.points;
        SimplexPair::new(3, p[..4].to_vec(), p[4..].to_vec()).unwrap()
    }

    #[test]
    fn a3_prime_is_nonzero_on_generic_pairs() {
        let pair = random_pair(81);
        let s = a3(&pair, A3Variant::Prime, R3Mode::Generic).unwrap();
        assert!(!s.is_zero());
    }

    #[test]
    fn a3_doubleprime_runs() {
        let pair = random_pair(83);
        let s = a3(&pair, A3Variant::DoublePrime, R3Mode::Generic).unwrap();
        assert!(!s.is_zero());
    }

    #[test]
    fn d_example_structure() {
        // d(l0,m0‖l1,l2,l3;m1,m2,m3) = (L23, L13, L12, M01, M02, M03): the
        // dual has exactly one collinear triple, the duals of the three
        // concurrent M-lines.
        let pair = random_pair(87);
        let s = p3_decomposition(&pair, P3Variant::D).unwrap();
        let mut checked = 0;
        for (term, coeff) in s.iter() {
            let FormalTerm::Config(c) = term else { panic!() };
            if coeff.abs() == rint(2) {
                let plane = PlaneConfig6::new(c.points.clone()).unwrap();
                assert_eq!(
                    plane.profile().collinear_triples,
                    vec![[3usize, 4, 5]],
                    "dual d-configuration must have exactly the M-line triple collinear"
                );
                checked += 1;
            }
        }
        assert_eq!(checked, 16);
        use num_traits::Signed;
        let _ = ();
    }

    #[test]
    fn dhat_cuts_are_collinear() {
        let pair = random_pair(91);
        let s = p3_decomposition(&pair, P3Variant::DHat).unwrap();
        assert_eq!(s.len(), 16);
        for (term, _) in s.iter() {
            let FormalTerm::Config(c) = term else { panic!() };
            let rows: Vec<Vec<FieldScalar>> =
                c.points.iter().map(|p| p.coords().to_vec()).collect();
            assert_eq!(crate::geom::rank(&rows), 2, "d-hat cuts lie on a line");
        }
    }

    #[test]
    fn f5_3_raw_size() {
        let g = random_config(95, 2, 5, FieldTag::Rational, 19).unwrap();
        let s = f5_3(&g.config).unwrap();
        assert!(!s.is_zero());
        assert!(s.len() <= 120);
    }
}
