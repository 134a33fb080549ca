//! Scan label conventions for Lemma 3.7' and the weight-2 square.

use motivic_core::formal::{fstar, rint, sig, FormalSum, FormalTerm};
use motivic_core::geom::{cross_ratio, random_config, SimplexPair};
use motivic_core::maps::{mu3, nu, r3, LineConfig33, NuFormula, PlaneConfig6, R3Mode};
use motivic_core::numeric::{realize, RealizationSignature, RealizeCtx};
use motivic_core::scalar::{FieldScalar, FieldTag};

fn main() {
    let field = FieldTag::Gaussian;

    // Lemma 3.7': try every permutation of the n-triple and both signs.
    {
        let g = random_config(41, 2, 5, field, 9).unwrap();
        let p = &g.config.points;
        let l3 = {
            let a = p[0].coords();
            let b = p[1].coords();
            let coords: Vec<FieldScalar> = (0..3)
                .map(|k| a[k].clone() + b[k].clone() * FieldScalar::from_integer(3))
                .collect();
            motivic_core::geom::ProjectivePoint::new(coords).unwrap()
        };
        let pts = vec![
            p[0].clone(),
            p[1].clone(),
            l3,
            p[2].clone(),
            p[3].clone(),
            p[4].clone(),
        ];
        let plane = PlaneConfig6::new(pts.clone()).unwrap();
        let lhs = r3(&plane, R3Mode::Limit).unwrap();
        let (x, n) = motivic_core::maps::line_correspondence_raw(&pts).unwrap();
        let mut ctx = RealizeCtx::new(field);
        for perm in [[0, 1, 2], [0, 2, 1], [1, 0, 2], [1, 2, 0], [2, 0, 1], [2, 1, 0]] {
            let y = [n[perm[0]].clone(), n[perm[1]].clone(), n[perm[2]].clone()];
            let line = LineConfig33::new(x.clone(), y).unwrap();
            let mu = mu3(&line).unwrap();
            for s in [2i64, -2] {
                let total = lhs.clone().added(&mu.clone().scaled(&rint(s)));
                let r = realize(&total, RealizationSignature::ScalarWeight3, &mut ctx).unwrap();
                println!(
                    "lemma 3.7' n-perm {perm:?} sign {s}: residual {:.3e}",
                    r.residual()
                );
            }
        }
    }

    // Weight-2 square: scan sign and slot order.
    {
        let g = random_config(61, 2, 6, field, 9).unwrap();
        let p = &g.config.points;
        let pair = SimplexPair::new(2, p[..3].to_vec(), p[3..].to_vec()).unwrap();
        let lhs = motivic_core::formal::delta2(&motivic_core::maps::a2(&pair).unwrap()).unwrap();
        let nu11 = nu(&pair, (1, 1), NuFormula::General).unwrap();
        let mut ctx = RealizeCtx::new(field);
        for swap in [false, true] {
            for s in [1i64, -1] {
                let mut rhs = FormalSum::zero(sig::LAMBDA2_FSTAR);
                for (term, coeff) in nu11.iter() {
                    let FormalTerm::Tensor(fs) = term else { panic!() };
                    let a1 = |t: &FormalTerm| -> FieldScalar {
                        let FormalTerm::Pair(q) = t else { panic!() };
                        cross_ratio(&q.l[0], &q.l[1], &q.m[0], &q.m[1]).unwrap()
                    };
                    let (u, v) = if swap {
                        (a1(&fs[1]), a1(&fs[0]))
                    } else {
                        (a1(&fs[0]), a1(&fs[1]))
                    };
                    rhs.add_term(
                        coeff.clone() * rint(s),
                        FormalTerm::Wedge(vec![fstar(u), fstar(v)]),
                    );
                }
                let diff = lhs.clone().added(&rhs.negated());
                let r = realize(&diff, RealizationSignature::Lambda2FStar, &mut ctx).unwrap();
                println!(
                    "weight-2 square swap={swap} sign={s}: residual {:.3e} (exact-empty: {})",
                    r.residual(),
                    r.entries.is_empty()
                );
            }
        }
    }
}
