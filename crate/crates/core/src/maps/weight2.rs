//! The weight-2 triangle map a₂ and the chain boundaries shared by the
//! commuting-square checks.
//!
//! a₂(l₀,l₁,l₂;m₀,m₁,m₂) = Σ_{i,j} (−1)^{i+j} {r(lᵢ | l_a,l_b, m_c,m_d)}₂
//! over the omitted indices, nine symbols before merging.

use num_rational::BigRational;

use crate::error::{EngineError, Result};
use crate::formal::{li, rint, sig, FormalSum, FormalTerm, TermStream};
use crate::geom::{cross_ratio, project, Configuration};
use crate::scalar::FieldScalar;
use crate::SimplexPair;

pub fn a2(pair: &SimplexPair) -> Result<FormalSum> {
    Ok(FormalSum::from_stream(sig::ZFSTAR_W2, a2_stream(pair)?))
}

pub fn a2_stream(pair: &SimplexPair) -> Result<TermStream> {
    if pair.dim != 2 {
        return Err(EngineError::Shape("a2 needs triangles in P²".into()));
    }
    let mut out: TermStream = Vec::new();
    for i in 0..3 {
        let l_rest: Vec<usize> = (0..3).filter(|&t| t != i).collect();
        for j in 0..3 {
            let m_rest: Vec<usize> = (0..3).filter(|&t| t != j).collect();
            let targets = vec![
                pair.l[l_rest[0]].clone(),
                pair.l[l_rest[1]].clone(),
                pair.m[m_rest[0]].clone(),
                pair.m[m_rest[1]].clone(),
            ];
            let imgs = project(std::slice::from_ref(&pair.l[i]), &targets).map_err(|e| {
                EngineError::Degenerate(format!("a2 projection failed at (i,j)=({i},{j}): {e}"))
            })?;
            let r = cross_ratio(&imgs[0], &imgs[1], &imgs[2], &imgs[3]).map_err(|e| {
                EngineError::Degenerate(format!("a2 cross-ratio failed at (i,j)=({i},{j}): {e}"))
            })?;
            let sign = if (i + j) % 2 == 0 { 1 } else { -1 };
            out.push((rint(sign), li(2, r)));
        }
    }
    Ok(out)
}

/// A formal chain: a sum of lifted configurations of vectors.
pub fn chain_config(config: &Configuration) -> FormalSum {
    let mut s = FormalSum::zero(sig::CHAIN);
    s.add_term(rint(1), FormalTerm::Config(config.clone()));
    s
}

/// d(l₁,…,l_m) = Σ (−1)^{i−1}(l₁,…,l̂ᵢ,…,l_m), the omit boundary.
pub fn boundary_omit(chain: &FormalSum) -> Result<FormalSum> {
    let mut out = FormalSum::zero(sig::CHAIN);
    for (term, coeff) in chain.iter() {
        let FormalTerm::Config(c) = term else {
            return Err(EngineError::Signature("chain of configurations".into()));
        };
        for i in 0..c.len() {
            let pts: Vec<_> = c
                .points
                .iter()
                .enumerate()
                .filter(|(k, _)| *k != i)
                .map(|(_, p)| p.clone())
                .collect();
            let lifts: Vec<_> = (0..c.len()).filter(|&k| k != i).map(|k| c.lift(k)).collect();
            let sub = Configuration::new(c.dim, c.field, pts)?.with_lifts(lifts)?;
            let sign: BigRational = rint(if i % 2 == 0 { 1 } else { -1 });
            out.add_term(coeff.clone() * sign, FormalTerm::Config(sub));
        }
    }
    Ok(out)
}

/// (l₁,…,l_m) ↦ Σ (−1)^i (lᵢ | l₁,…,l̂ᵢ,…,l_m), the projecting boundary
/// dropping the ambient dimension by one; i is 1-based in the sign.
pub fn boundary_project(chain: &FormalSum) -> Result<FormalSum> {
    let mut out = FormalSum::zero(sig::CHAIN);
    for (term, coeff) in chain.iter() {
        let FormalTerm::Config(c) = term else {
            return Err(EngineError::Signature("chain of configurations".into()));
        };
        for i in 0..c.len() {
            let targets: Vec<_> = c
                .points
                .iter()
                .enumerate()
                .filter(|(k, _)| *k != i)
                .map(|(_, p)| p.clone())
                .collect();
            let imgs = project(std::slice::from_ref(&c.points[i]), &targets)?;
            let lifts: Vec<Vec<FieldScalar>> =
                imgs.iter().map(|p| p.coords().to_vec()).collect();
            let sub = Configuration::new(c.dim - 1, c.field, imgs)?.with_lifts(lifts)?;
            let sign: BigRational = rint(if (i + 1) % 2 == 0 { 1 } else { -1 });
            out.add_term(coeff.clone() * sign, FormalTerm::Config(sub));
        }
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::geom::random_config;
    use crate::scalar::FieldTag;

    #[test]
    fn a2_has_nine_signed_symbols_before_merging() {
        let g = random_config(51, 2, 6, FieldTag::Rational, 19).unwrap();
        let p = g.config.points;
        let pair = SimplexPair::new(2, p[..3].to_vec(), p[3..].to_vec()).unwrap();
        let stream = a2_stream(&pair).unwrap();
        assert_eq!(stream.len(), 9);
        let s = a2(&pair).unwrap();
        assert!(!s.is_zero());
    }

    #[test]
    fn boundary_squares_to_zero() {
        let g = random_config(53, 2, 6, FieldTag::Rational, 9).unwrap();
        let chain = chain_config(&g.config);
        let d1 = boundary_omit(&chain).unwrap();
        let d2 = boundary_omit(&d1).unwrap();
        assert!(d2.is_zero());
        assert_eq!(d1.len(), 6);
    }

    #[test]
    fn omit_boundary_of_eight_has_eight_terms() {
        let g = random_config(57, 3, 8, FieldTag::Rational, 9).unwrap();
        let d = boundary_omit(&chain_config(&g.config)).unwrap();
        assert_eq!(d.len(), 8);
    }
}
