//! μ₃ on six points of a line:
//!
//! μ₃(x₁,x₂,x₃;y₁,y₂,y₃) = ¼·Alt_{(x₁,x₂,x₃)(y₁,y₂,y₃)}
//!   ({r(x₁,y₂,x₂,y₁)}₃ − {r(x₁,y₁,x₂,y₂)}₃),
//!
//! skew-symmetric in each triple, 18 symbols in its merged expansion.

use crate::error::{EngineError, Result};
use crate::formal::{li, rat, sig, AltMode, BuiltTerm, FormalSum, TermStream};
use crate::geom::{cross_ratio, cross_ratio_projective, rank, ProjectivePoint};
use crate::scalar::FieldScalar;

use super::configs::LineConfig33;

pub fn mu3(config: &LineConfig33) -> Result<FormalSum> {
    let stream = mu3_stream(config)?;
    Ok(FormalSum::from_stream(sig::ZFSTAR_W3, stream))
}

/// Unmerged μ₃ terms in deterministic block-alternation order.
pub fn mu3_stream(config: &LineConfig33) -> Result<TermStream> {
    let mut out: TermStream = Vec::new();
    let sum = crate::formal::alt_blocks(
        6,
        &[vec![0, 1, 2], vec![3, 4, 5]],
        sig::ZFSTAR_W3,
        rat(1, 4),
        AltMode::Strict,
        |map| {
            let x1 = config.point(map[0]);
            let x2 = config.point(map[1]);
            let y1 = config.point(map[3]);
            let y2 = config.point(map[4]);
            let plus = cross_ratio(x1, y2, x2, y1)?;
            let minus = cross_ratio(x1, y1, x2, y2)?;
            Ok(BuiltTerm::Terms(vec![
                (rat(1, 1), li(3, plus)),
                (rat(-1, 1), li(3, minus)),
            ]))
        },
    )?;
    for (term, coeff) in sum.iter() {
        out.push((coeff.clone(), term.clone()));
    }
    Ok(out)
}

/// μ₃ extended to collinear sixtuples with coincidences across the two
/// groups: cross-ratio symbols whose projective value degenerates to 0 or ∞
/// (or 0/0) are dropped, value 1 stays as {1}₃.
pub fn mu3_limit(x: &[ProjectivePoint; 3], y: &[ProjectivePoint; 3]) -> Result<FormalSum> {
    let rows: Vec<Vec<FieldScalar>> = x
        .iter()
        .chain(y.iter())
        .map(|p| p.coords().to_vec())
        .collect();
    if rank(&rows) > 2 {
        return Err(EngineError::Degenerate(
            "limit μ₃ needs collinear points".into(),
        ));
    }
    let point = |slot: usize| if slot < 3 { &x[slot] } else { &y[slot - 3] };
    crate::formal::alt_blocks(
        6,
        &[vec![0, 1, 2], vec![3, 4, 5]],
        sig::ZFSTAR_W3,
        rat(1, 4),
        AltMode::Strict,
        |map| {
            let mut terms = TermStream::new();
            for (sgn, slots) in [(1i64, [0usize, 4, 1, 3]), (-1, [0, 3, 1, 4])] {
                let (num, den) =
                    cross_ratio_projective([point(map[slots[0]]), point(map[slots[1]]), point(map[slots[2]]), point(map[slots[3]])])?;
                if num.is_zero() || den.is_zero() {
                    continue;
                }
                terms.push((rat(sgn, 1), li(3, num.checked_div(&den)?)));
            }
            Ok(BuiltTerm::Terms(terms))
        },
    )
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::geom::random_config;
    use crate::scalar::FieldTag;
    use num_traits::Signed;

    /// Six distinct points on P¹ grouped 3+3.
    fn random_line33(seed: u64) -> LineConfig33 {
        let g = random_config(seed, 1, 6, FieldTag::Rational, 19).unwrap();
        let p = g.config.points;
        LineConfig33::new(
            [p[0].clone(), p[1].clone(), p[2].clone()],
            [p[3].clone(), p[4].clone(), p[5].clone()],
        )
        .unwrap()
    }

    #[test]
    fn merged_expansion_has_eighteen_terms() {
        let c = random_line33(41);
        let s = mu3(&c).unwrap();
        assert_eq!(s.len(), 18);
        for (_, coeff) in s.iter() {
            assert!(coeff.is_integer());
            assert_eq!(coeff.abs(), crate::formal::rint(1));
        }
    }

    #[test]
    fn skew_symmetric_in_x() {
        let c = random_line33(43);
        let swapped = LineConfig33::new(
            [c.x[1].clone(), c.x[0].clone(), c.x[2].clone()],
            c.y.clone(),
        )
        .unwrap();
        assert_eq!(mu3(&c).unwrap(), mu3(&swapped).unwrap().negated());
    }

    #[test]
    fn symmetric_under_group_swap() {
        let c = random_line33(47);
        let swapped = LineConfig33::new(c.y.clone(), c.x.clone()).unwrap();
        assert_eq!(mu3(&c).unwrap(), mu3(&swapped).unwrap());
    }

    #[test]
    fn coincident_points_error() {
        let e1 = ProjectivePoint::from_ints(&[1, 0]);
        let e2 = ProjectivePoint::from_ints(&[0, 1]);
        let p = |a: i64, b: i64| {
            ProjectivePoint::new(vec![
                FieldScalar::from_integer(a),
                FieldScalar::from_integer(b),
            ])
            .unwrap()
        };
        assert!(LineConfig33::new(
            [e1.clone(), e2.clone(), e1.clone()],
            [p(1, 1), p(1, 2), p(1, 3)]
        )
        .is_err());
    }
}
