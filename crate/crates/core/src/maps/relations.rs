//! Builders for the relation elements: five-term, seven-term and its dual,
//! Kummer, inversion, the simplex-pair relations, the special line
//! configurations C(b,c) and their M₃ expansion, and the 2n-point relations.

use crate::error::{EngineError, Result};
use crate::formal::{li, rint, sig, FormalSum};
use crate::geom::{cross_ratio, project, ProjectivePoint, SimplexPair};
use crate::scalar::{FieldScalar, FieldTag};

use super::configs::{line_correspondence_raw, PlaneConfig6};
use super::r3::{r3, R3Mode};

/// Σ (−1)^i {r(x₁,…,x̂ᵢ,…,x₅)}₂ over five distinct points of P¹ (1-based i).
pub fn five_term(points: &[ProjectivePoint]) -> Result<FormalSum> {
    if points.len() != 5 {
        return Err(EngineError::Shape("five points of P¹ expected".into()));
    }
    let mut out = FormalSum::zero(sig::ZFSTAR_W2);
    for i in 0..5 {
        let rest: Vec<&ProjectivePoint> = points
            .iter()
            .enumerate()
            .filter(|(k, _)| *k != i)
            .map(|(_, p)| p)
            .collect();
        let r = cross_ratio(rest[0], rest[1], rest[2], rest[3])?;
        let sign = if (i + 1) % 2 == 0 { 1 } else { -1 };
        out.add_term(rint(sign), li(2, r));
    }
    Ok(out)
}

/// Σ (−1)^i r₃(x₁,…,x̂ᵢ,…,x₇) over seven points of P² (1-based i).
pub fn seven_term(points: &[ProjectivePoint], mode: R3Mode) -> Result<FormalSum> {
    if points.len() != 7 {
        return Err(EngineError::Shape("seven points of P² expected".into()));
    }
    let mut out = FormalSum::zero(sig::ZFSTAR_W3);
    for i in 0..7 {
        let rest: Vec<ProjectivePoint> = points
            .iter()
            .enumerate()
            .filter(|(k, _)| *k != i)
            .map(|(_, p)| p.clone())
            .collect();
        let sign = if (i + 1) % 2 == 0 { 1 } else { -1 };
        out.add(&r3(&PlaneConfig6::new(rest)?, mode)?.scaled(&rint(sign)));
    }
    Ok(out)
}

/// The dual relation: Σ (−1)^i r₃(xᵢ | x₁,…,x̂ᵢ,…,x₇) over seven points of
/// P³.
pub fn dual_seven_term(points: &[ProjectivePoint], mode: R3Mode) -> Result<FormalSum> {
    if points.len() != 7 {
        return Err(EngineError::Shape("seven points of P³ expected".into()));
    }
    let mut out = FormalSum::zero(sig::ZFSTAR_W3);
    for i in 0..7 {
        let rest: Vec<ProjectivePoint> = points
            .iter()
            .enumerate()
            .filter(|(k, _)| *k != i)
            .map(|(_, p)| p.clone())
            .collect();
        let imgs = project(std::slice::from_ref(&points[i]), &rest)?;
        let sign = if (i + 1) % 2 == 0 { 1 } else { -1 };
        out.add(&r3(&PlaneConfig6::new(imgs)?, mode)?.scaled(&rint(sign)));
    }
    Ok(out)
}

/// Kummer's trilogarithm functional equation K(x, y).
pub fn kummer(x: &FieldScalar, y: &FieldScalar) -> Result<FormalSum> {
    for (name, v) in [("x", x), ("y", y)] {
        if v.is_zero() || v.is_one() {
            return Err(EngineError::Degenerate(format!(
                "Kummer argument {name} must avoid 0 and 1"
            )));
        }
    }
    if x == y {
        return Err(EngineError::Degenerate("Kummer needs x ≠ y".into()));
    }
    let one = FieldScalar::one;
    let omx = x.one_minus();
    let omy = y.one_minus();
    let mut out = FormalSum::zero(sig::ZFSTAR_W3);
    let mut push = |c: i64, v: FieldScalar| out.add_term(rint(c), li(3, v));
    push(
        -1,
        (x.clone() * &omy * &omy).checked_div(&(y.clone() * &omx * &omx))?,
    );
    push(-1, x.clone() * y);
    push(-1, x.clone().checked_div(y)?);
    push(-2, one());
    push(2, (-(x.clone() * &omy)).checked_div(&omx)?);
    push(2, (x.clone() * &omy).checked_div(&(y.clone() * &omx))?);
    push(2, (-(y.clone() * &omx)).checked_div(&omy)?);
    push(2, omx.clone().checked_div(&omy)?);
    push(2, y.clone());
    push(2, x.clone());
    Ok(out)
}

/// {x}₃ − {x⁻¹}₃.
pub fn inversion(x: &FieldScalar) -> Result<FormalSum> {
    if x.is_zero() {
        return Err(EngineError::Degenerate("inversion needs x ≠ 0".into()));
    }
    let mut out = FormalSum::zero(sig::ZFSTAR_W3);
    out.add_term(rint(1), li(3, x.clone()));
    out.add_term(rint(-1), li(3, x.inv()?));
    Ok(out)
}

// ---------------------------------------------------------------------------
// Simplex-pair relations (signed lists of generators).
// ---------------------------------------------------------------------------

/// Additivity in L: Σ (−1)^i (l₀,…,l̂ᵢ,…,l_{n+1}; m₀,…,m_n), for n+2
/// l-points and n+1 m-points in Pⁿ.
pub fn additivity_l(
    l_points: &[ProjectivePoint],
    m_points: &[ProjectivePoint],
) -> Result<Vec<(i64, SimplexPair)>> {
    let n = m_points.len() - 1;
    if l_points.len() != n + 2 {
        return Err(EngineError::Shape("additivity needs n+2 l-points".into()));
    }
    let mut out = Vec::new();
    for i in 0..l_points.len() {
        let rest: Vec<ProjectivePoint> = l_points
            .iter()
            .enumerate()
            .filter(|(k, _)| *k != i)
            .map(|(_, p)| p.clone())
            .collect();
        let sign = if i % 2 == 0 { 1 } else { -1 };
        out.push((sign, SimplexPair::new(n, rest, m_points.to_vec())?));
    }
    Ok(out)
}

/// Dual additivity in L: Σ (−1)^i (lᵢ | l₀,…,l̂ᵢ,…,l_{n+1}; m₀,…,m_n), for
/// n+2 l-points and n+1 m-points in P^{n+1}; each term lives in Pⁿ.
pub fn dual_additivity_l(
    l_points: &[ProjectivePoint],
    m_points: &[ProjectivePoint],
) -> Result<Vec<(i64, SimplexPair)>> {
    let n = m_points.len() - 1;
    if l_points.len() != n + 2 {
        return Err(EngineError::Shape("dual additivity needs n+2 l-points".into()));
    }
    let mut out = Vec::new();
    for i in 0..l_points.len() {
        let rest: Vec<ProjectivePoint> = l_points
            .iter()
            .enumerate()
            .filter(|(k, _)| *k != i)
            .map(|(_, p)| p.clone())
            .collect();
        let center = std::slice::from_ref(&l_points[i]);
        let l_imgs = project(center, &rest)?;
        let m_imgs = project(center, m_points)?;
        let sign = if i % 2 == 0 { 1 } else { -1 };
        out.push((sign, SimplexPair::new(n, l_imgs, m_imgs)?));
    }
    Ok(out)
}

// ---------------------------------------------------------------------------
// 2n-point relations for the free groups on point tuples.
// ---------------------------------------------------------------------------

/// (2n+1)-term relation: Σ (−1)^i (l₀,…,l̂ᵢ,…,l_{2n}) for 2n+1 generic
/// points in P^{n−1} (0-based i).
pub fn g2n_additivity(points: &[ProjectivePoint]) -> Vec<(i64, Vec<ProjectivePoint>)> {
    (0..points.len())
        .map(|i| {
            let rest: Vec<ProjectivePoint> = points
                .iter()
                .enumerate()
                .filter(|(k, _)| *k != i)
                .map(|(_, p)| p.clone())
                .collect();
            (if i % 2 == 0 { 1 } else { -1 }, rest)
        })
        .collect()
}

/// Dual (2n+1)-term relation: Σ (−1)^i (lᵢ | l₀,…,l̂ᵢ,…,l_{2n}) for 2n+1
/// generic points in Pⁿ, each term projected into P^{n−1}.
pub fn g2n_dual_additivity(
    points: &[ProjectivePoint],
) -> Result<Vec<(i64, Vec<ProjectivePoint>)>> {
    let mut out = Vec::new();
    for i in 0..points.len() {
        let rest: Vec<ProjectivePoint> = points
            .iter()
            .enumerate()
            .filter(|(k, _)| *k != i)
            .map(|(_, p)| p.clone())
            .collect();
        let imgs = project(std::slice::from_ref(&points[i]), &rest)?;
        out.push((if i % 2 == 0 { 1 } else { -1 }, imgs));
    }
    Ok(out)
}

// ---------------------------------------------------------------------------
// The special configurations C(b,c) with three collinear points.
// ---------------------------------------------------------------------------

/// C(b,c): the six plane points given by the columns of
/// [0 0 0 1 1 1; 1 1 0 1 1 0; 0 c 1 b 1 0]; the first three lie on x = 0.
pub fn cbc_config(b: &FieldScalar, c: &FieldScalar) -> Result<PlaneConfig6> {
    check_bc(b, c)?;
    let z = FieldScalar::zero;
    let o = FieldScalar::one;
    let cols: Vec<Vec<FieldScalar>> = vec![
        vec![z(), o(), z()],
        vec![z(), o(), c.clone()],
        vec![z(), z(), o()],
        vec![o(), o(), b.clone()],
        vec![o(), o(), o()],
        vec![o(), z(), z()],
    ];
    let points: Result<Vec<ProjectivePoint>> =
        cols.into_iter().map(ProjectivePoint::new).collect();
    PlaneConfig6::new(points?)
}

/// The 3+3 grouped points corresponding to C(b,c) under the collinear
/// correspondence; the cut n₃ coincides with x₃ for every (b,c), so the
/// result feeds the limit form of μ₃.
pub fn cbc_tilde(
    b: &FieldScalar,
    c: &FieldScalar,
) -> Result<([ProjectivePoint; 3], [ProjectivePoint; 3])> {
    let plane = cbc_config(b, c)?;
    line_correspondence_raw(plane.points())
}

fn check_bc(b: &FieldScalar, c: &FieldScalar) -> Result<()> {
    for (name, v) in [("b", b), ("c", c)] {
        if v.is_zero() || v.is_one() {
            return Err(EngineError::Degenerate(format!(
                "C(b,c) parameter {name} must avoid 0 and 1"
            )));
        }
    }
    if b == c {
        return Err(EngineError::Degenerate("C(b,c) needs b ≠ c".into()));
    }
    Ok(())
}

/// M₃(C(b,c)) = l̃₃({(b−c)/(1−c)} − {b} + {b(1−c)/(b−c)} − {1−c} + {(b−c)/b})
/// with l̃₃{x} = {1−x⁻¹}₃ − {1−x}₃.
pub fn m3_element(b: &FieldScalar, c: &FieldScalar) -> Result<FormalSum> {
    check_bc(b, c)?;
    let bc = b.clone() - c.clone();
    let omc = c.one_minus();
    let args: Vec<(i64, FieldScalar)> = vec![
        (1, bc.clone().checked_div(&omc)?),
        (-1, b.clone()),
        (1, (b.clone() * &omc).checked_div(&bc)?),
        (-1, omc.clone()),
        (1, bc.clone().checked_div(b)?),
    ];
    let mut out = FormalSum::zero(sig::ZFSTAR_W3);
    for (sign, x) in args {
        // l̃₃{x} = {1 − 1/x}₃ − {1 − x}₃.
        out.add_term(rint(sign), li(3, x.inv()?.one_minus()));
        out.add_term(rint(-sign), li(3, x.one_minus()));
    }
    Ok(out)
}

/// The frozen 18-term expansion of 15·r₃(C(b,c)); symbol-level source for
/// the numeric comparison against limit-mode r₃.
pub fn cbc_expansion(b: &FieldScalar, c: &FieldScalar) -> Result<FormalSum> {
    check_bc(b, c)?;
    let omb = b.one_minus();
    let omc = c.one_minus();
    let bc = b.clone() - c.clone();
    let cb = c.clone() - b.clone();
    let bm1 = -omb.clone();
    let cm1 = -omc.clone();
    let mut out = FormalSum::zero(sig::ZFSTAR_W3);
    let mut push = |k: i64, v: Result<FieldScalar>| -> Result<()> {
        out.add_term(rint(k), li(3, v?));
        Ok(())
    };
    push(-18, Ok(omb.clone()))?;
    push(-12, b.clone().checked_div(&omc))?;
    push(-18, bc.clone().checked_div(&bm1))?;
    push(-18, Ok(c.clone()))?;
    push(-12, omb.clone().checked_div(c))?;
    push(-24, (b.clone() * &cm1).checked_div(&(c.clone() * &bm1)))?;
    push(-6, c.clone().checked_div(&(cb.clone() * &omb)))?;
    push(-6, (c.clone() * &bc).checked_div(&bm1))?;
    push(-18, cb.clone().checked_div(c))?;
    push(18, Ok(b.inv()?.one_minus()))?;
    push(12, Ok(bc.clone()))?;
    push(18, bm1.clone().checked_div(&cm1))?;
    push(12, bm1.clone().checked_div(c))?;
    push(18, b.clone().checked_div(c))?;
    push(24, bc.clone().checked_div(&(c.clone() * &bm1)))?;
    push(6, (b.clone() * &bm1).checked_div(&(c.clone() * &cm1)))?;
    push(18, Ok(c.inv()?.one_minus()))?;
    push(6, (omb.clone() * &omc).checked_div(&(b.clone() * c)))?;
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::geom::random_config;
    use num_traits::Signed;

    #[test]
    fn five_term_has_five_signed_generators() {
        let g = random_config(101, 1, 5, FieldTag::Rational, 19).unwrap();
        let s = five_term(&g.config.points).unwrap();
        assert_eq!(s.len(), 5);
        for (_, c) in s.iter() {
            assert_eq!(c.abs(), rint(1));
        }
    }

    #[test]
    fn kummer_has_ten_arguments_with_the_stated_coefficients() {
        let x = FieldScalar::from_ratio(3, 7);
        let y = FieldScalar::from_ratio(-5, 2);
        let s = kummer(&x, &y).unwrap();
        assert_eq!(s.len(), 10);
        let mut counts = std::collections::BTreeMap::new();
        for (_, c) in s.iter() {
            *counts.entry(c.to_string()).or_insert(0usize) += 1;
        }
        assert_eq!(counts.get("-1"), Some(&3));
        assert_eq!(counts.get("-2"), Some(&1));
        assert_eq!(counts.get("2"), Some(&6));
    }

    #[test]
    fn cbc_collinearity() {
        let b = FieldScalar::from_integer(3);
        let c = FieldScalar::from_integer(5);
        let plane = cbc_config(&b, &c).unwrap();
        // The displayed matrix has a second collinear triple {x₃, l₁, l₂}.
        assert_eq!(
            plane.profile().collinear_triples,
            vec![[0usize, 1, 2], [2, 3, 4]]
        );
        assert!(!plane.profile().four_on_line);
        let (x, n) = cbc_tilde(&b, &c).unwrap();
        // The cut n₃ lands exactly on x₃.
        assert_eq!(n[2], x[2]);
    }

    #[test]
    fn degenerate_parameters_error() {
        let one = FieldScalar::one();
        let five = FieldScalar::from_integer(5);
        assert!(cbc_config(&one, &five).is_err());
        assert!(kummer(&five, &five).is_err());
    }
}
