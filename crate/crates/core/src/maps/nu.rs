//! The coproduct ν on generic simplex pairs.
//!
//! General formula: ν_{n−k,k}(L;M) sums over center sets I ⊂ {1..n} (size k,
//! projected on the first factor) and J ⊂ {1..n} (size n−k, projected on the
//! second), with the shuffle sign σ(I,J). The skew variant is the
//! Δ-weighted double sum with a leading minus sign, symmetric from the
//! start.

use crate::error::{EngineError, Result};
use crate::formal::{fstar, rint, sig, FormalSum, FormalTerm};
use crate::geom::{determinant, project, ProjectivePoint, SimplexPair};
use crate::scalar::FieldScalar;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum NuFormula {
    General,
    Skew,
}

/// ν component with factor weights `split` = (n−k, k) applied to a generic
/// pair in Pⁿ.
pub fn nu(pair: &SimplexPair, split: (usize, usize), formula: NuFormula) -> Result<FormalSum> {
    let n = pair.dim;
    if split.0 + split.1 != n || split.0 == 0 || split.1 == 0 {
        return Err(EngineError::Shape(format!(
            "split {split:?} does not decompose weight {n}"
        )));
    }
    match formula {
        NuFormula::General => nu_general(pair, split.1),
        NuFormula::Skew => match split {
            (1, _) => nu_skew_first_linear(pair),
            (_, 1) => nu_skew_second_linear(pair),
            _ => Err(EngineError::Shape(
                "skew formula exists for the (1, n−1) and (n−1, 1) components".into(),
            )),
        },
    }
}

fn subsets(universe: &[usize], size: usize) -> Vec<Vec<usize>> {
    let mut out = Vec::new();
    let mut cur = Vec::new();
    fn rec(
        u: &[usize],
        start: usize,
        size: usize,
        cur: &mut Vec<usize>,
        out: &mut Vec<Vec<usize>>,
    ) {
        if cur.len() == size {
            out.push(cur.clone());
            return;
        }
        for i in start..u.len() {
            cur.push(u[i]);
            rec(u, i + 1, size, cur, out);
            cur.pop();
        }
    }
    rec(universe, 0, size, &mut cur, &mut out);
    out
}

/// Sign of the shuffle (1..n) -> (I, complement), both ascending.
fn shuffle_sign(chosen: &[usize], n: usize) -> i64 {
    let mut arranged: Vec<usize> = chosen.to_vec();
    arranged.extend((1..=n).filter(|i| !chosen.contains(i)));
    let mut sign = 1i64;
    for i in 0..arranged.len() {
        for j in (i + 1)..arranged.len() {
            if arranged[i] > arranged[j] {
                sign = -sign;
            }
        }
    }
    sign
}

fn nu_general(pair: &SimplexPair, k: usize) -> Result<FormalSum> {
    let n = pair.dim;
    let universe: Vec<usize> = (1..=n).collect();
    let mut out = FormalSum::zero(sig::PAIR_PAIR);
    for i_set in subsets(&universe, k) {
        let i_comp: Vec<usize> = universe.iter().copied().filter(|i| !i_set.contains(i)).collect();
        for j_set in subsets(&universe, n - k) {
            let j_comp: Vec<usize> =
                universe.iter().copied().filter(|j| !j_set.contains(j)).collect();
            let sign = shuffle_sign(&i_set, n) * shuffle_sign(&j_set, n);

            // First factor: project from the l-centers indexed by I.
            let centers1: Vec<ProjectivePoint> =
                i_set.iter().map(|&i| pair.l[i].clone()).collect();
            let mut l_targets1 = vec![pair.l[0].clone()];
            l_targets1.extend(i_comp.iter().map(|&i| pair.l[i].clone()));
            let mut m_targets1 = vec![pair.m[0].clone()];
            m_targets1.extend(j_set.iter().map(|&j| pair.m[j].clone()));
            let first = project_pair(&centers1, &l_targets1, &m_targets1, n - k)?;

            // Second factor: project from the m-centers indexed by J.
            let centers2: Vec<ProjectivePoint> =
                j_set.iter().map(|&j| pair.m[j].clone()).collect();
            let mut l_targets2 = vec![pair.l[0].clone()];
            l_targets2.extend(i_set.iter().map(|&i| pair.l[i].clone()));
            let mut m_targets2 = vec![pair.m[0].clone()];
            m_targets2.extend(j_comp.iter().map(|&j| pair.m[j].clone()));
            let second = project_pair(&centers2, &l_targets2, &m_targets2, k)?;

            out.add_term(
                rint(sign),
                FormalTerm::Tensor(vec![FormalTerm::Pair(first), FormalTerm::Pair(second)]),
            );
        }
    }
    Ok(out)
}

fn project_pair(
    centers: &[ProjectivePoint],
    l_targets: &[ProjectivePoint],
    m_targets: &[ProjectivePoint],
    dim: usize,
) -> Result<SimplexPair> {
    let l_imgs = project(centers, l_targets)?;
    let m_imgs = project(centers, m_targets)?;
    SimplexPair::new(dim, l_imgs, m_imgs)
}

/// ν_{n−1,1} skew form: −Σ (−1)^{i+j} (lᵢ | …) ⊗ Δ(lᵢ, m₀,…,m̂ⱼ,…,m_n).
fn nu_skew_second_linear(pair: &SimplexPair) -> Result<FormalSum> {
    let n = pair.dim;
    let mut out = FormalSum::zero(sig::PAIR_FSTAR);
    for i in 0..=n {
        let l_rest: Vec<ProjectivePoint> = pair
            .l
            .iter()
            .enumerate()
            .filter(|(t, _)| *t != i)
            .map(|(_, p)| p.clone())
            .collect();
        for j in 0..=n {
            let m_rest: Vec<ProjectivePoint> = pair
                .m
                .iter()
                .enumerate()
                .filter(|(t, _)| *t != j)
                .map(|(_, p)| p.clone())
                .collect();
            let first = project_pair(
                std::slice::from_ref(&pair.l[i]),
                &l_rest,
                &m_rest,
                n - 1,
            )?;
            let mut rows: Vec<Vec<FieldScalar>> = vec![pair.l[i].coords().to_vec()];
            rows.extend(m_rest.iter().map(|p| p.coords().to_vec()));
            let delta = determinant(&rows)?;
            if delta.is_zero() {
                return Err(EngineError::Degenerate(format!(
                    "Δ(l{i}, m-hat-{j}) vanishes in skew ν"
                )));
            }
            let sign = if (i + j) % 2 == 0 { -1 } else { 1 };
            out.add_term(
                rint(sign),
                FormalTerm::Tensor(vec![FormalTerm::Pair(first), fstar(delta)]),
            );
        }
    }
    Ok(out)
}

/// ν_{1,n−1} skew form: −Σ (−1)^{i+j} Δ(mⱼ, l₀,…,l̂ᵢ,…,l_n) ⊗ (mⱼ | …).
fn nu_skew_first_linear(pair: &SimplexPair) -> Result<FormalSum> {
    let n = pair.dim;
    let mut out = FormalSum::zero(sig::FSTAR_PAIR);
    for i in 0..=n {
        let l_rest: Vec<ProjectivePoint> = pair
            .l
            .iter()
            .enumerate()
            .filter(|(t, _)| *t != i)
            .map(|(_, p)| p.clone())
            .collect();
        for j in 0..=n {
            let m_rest: Vec<ProjectivePoint> = pair
                .m
                .iter()
                .enumerate()
                .filter(|(t, _)| *t != j)
                .map(|(_, p)| p.clone())
                .collect();
            let second = project_pair(
                std::slice::from_ref(&pair.m[j]),
                &l_rest,
                &m_rest,
                n - 1,
            )?;
            let mut rows: Vec<Vec<FieldScalar>> = vec![pair.m[j].coords().to_vec()];
            rows.extend(l_rest.iter().map(|p| p.coords().to_vec()));
            let delta = determinant(&rows)?;
            if delta.is_zero() {
                return Err(EngineError::Degenerate(format!(
                    "Δ(m{j}, l-hat-{i}) vanishes in skew ν"
                )));
            }
            let sign = if (i + j) % 2 == 0 { -1 } else { 1 };
            out.add_term(
                rint(sign),
                FormalTerm::Tensor(vec![fstar(delta), FormalTerm::Pair(second)]),
            );
        }
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::geom::random_config;
    use crate::scalar::FieldTag;

    fn random_pair(seed: u64, dim: usize) -> SimplexPair {
        let g = random_config(seed, dim, 2 * (dim + 1), FieldTag::Rational, 19).unwrap();
        let p = g.config.points;
        SimplexPair::new(dim, p[..dim + 1].to_vec(), p[dim + 1..].to_vec()).unwrap()
    }

    #[test]
    fn general_nu21_term_count() {
        let pair = random_pair(61, 3);
        let s = nu(&pair, (2, 1), NuFormula::General).unwrap();
        // 3 choices of I times 3 choices of J.
        assert_eq!(s.len(), 9);
    }

    #[test]
    fn skew_nu_has_leading_minus() {
        let pair = random_pair(67, 3);
        let s = nu(&pair, (2, 1), NuFormula::Skew).unwrap();
        assert_eq!(s.len(), 16);
        // The (i,j) = (0,0) term carries coefficient −1 in the displayed
        // formula; find it by its Δ factor.
        let m_rest: Vec<_> = pair.m[1..].to_vec();
        let first = project_pair(std::slice::from_ref(&pair.l[0]), &pair.l[1..], &m_rest, 2)
            .unwrap();
        let mut rows = vec![pair.l[0].coords().to_vec()];
        rows.extend(m_rest.iter().map(|p| p.coords().to_vec()));
        let delta = determinant(&rows).unwrap();
        let term = FormalTerm::Tensor(vec![FormalTerm::Pair(first), fstar(delta)]);
        let (canon, sign) = term.canonicalize().unwrap();
        let coeff = s.coeff(&canon);
        assert_eq!(coeff * rint(sign as i64), rint(-1));
    }

    #[test]
    fn nu11_on_triangle_pairs() {
        let pair = random_pair(71, 2);
        let s = nu(&pair, (1, 1), NuFormula::General).unwrap();
        assert_eq!(s.len(), 4);
    }
}
