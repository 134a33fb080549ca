//! Development scratch: runs the paper-identity residuals end to end.

use motivic_core::formal::{delta3_symbol, fstar, li, rat, rint, sig, FormalSum, FormalTerm};
use motivic_core::geom::{determinant, random_config, SimplexPair};
use motivic_core::maps::relations::{
    cbc_expansion, cbc_tilde, dual_seven_term, kummer, m3_element, seven_term,
};
use motivic_core::maps::{
    a2, a3, f5_3, mu3, mu3_limit, nu, r3, A3Variant, LineConfig33, NuFormula, PlaneConfig6,
    R3Mode,
};
use motivic_core::numeric::{realize, RealizationSignature, RealizeCtx};
use motivic_core::scalar::{FieldScalar, FieldTag};
use motivic_core::maps::{boundary_omit, chain_config};

fn main() {
    let field = FieldTag::Gaussian;

    // ----- seven-term relation under P3 -----
    {
        let g = random_config(2024, 2, 7, field, 9).unwrap();
        let st = seven_term(&g.config.points, R3Mode::Generic).unwrap();
        let mut ctx = RealizeCtx::new(field);
        let r = realize(&st, RealizationSignature::ScalarWeight3, &mut ctx).unwrap();
        println!("seven-term residual: {:.3e}", r.residual());
    }

    // ----- Kummer + inversion under P3 -----
    {
        let x = FieldScalar::gaussian_int(3, 2) * FieldScalar::from_ratio(1, 4);
        let y = FieldScalar::gaussian_int(-2, 5) * FieldScalar::from_ratio(1, 7);
        let k = kummer(&x, &y).unwrap();
        let mut ctx = RealizeCtx::new(field);
        let r = realize(&k, RealizationSignature::ScalarWeight3, &mut ctx).unwrap();
        println!("kummer residual: {:.3e}", r.residual());
    }

    // ----- C(b,c): 15 r3 limit vs frozen expansion; M3 = -mu3(C~) -----
    {
        let b = FieldScalar::from_integer(3);
        let c = FieldScalar::from_integer(5);
        let plane = motivic_core::maps::relations::cbc_config(&b, &c).unwrap();
        let lhs = r3(&plane, R3Mode::Limit).unwrap().scaled(&rint(15));
        let rhs = cbc_expansion(&b, &c).unwrap();
        let mut ctx = RealizeCtx::new(field);
        let diff = lhs.added(&rhs.negated());
        let r = realize(&diff, RealizationSignature::ScalarWeight3, &mut ctx).unwrap();
        println!("15·r3(C(b,c)) vs expansion residual: {:.3e}", r.residual());

        let (x, y) = cbc_tilde(&b, &c).unwrap();
        let mu = mu3_limit(&x, &y).unwrap();
        let m3 = m3_element(&b, &c).unwrap();
        let diff = mu.added(&m3); // mu3(C~) + M3 should die (M3 = -mu3)
        let r = realize(&diff, RealizationSignature::ScalarWeight3, &mut ctx).unwrap();
        println!("mu3(C~)+M3 residual: {:.3e}", r.residual());
    }

    // ----- Lemma 3.3: delta3∘r3 + (1/18)Alt6(a2⊗Δ) -----
    {
        let g = random_config(77, 2, 6, field, 9).unwrap();
        let cfg = &g.config;
        let plane = PlaneConfig6::new(cfg.points.clone()).unwrap();
        let lhs = delta3_symbol(&r3(&plane, R3Mode::Generic).unwrap()).unwrap();
        let rhs = motivic_core::formal::alt_keyed(
            6,
            sig::B2_FSTAR,
            rat(1, 18),
            |p| {
                let mut l: Vec<usize> = vec![p[0], p[1], p[2]];
                let mut m: Vec<usize> = vec![p[3], p[4], p[5]];
                let sl = sort_sign(&mut l);
                let sm = sort_sign(&mut m);
                Some(((l, m), sl * sm))
            },
            |p| {
                let pair = SimplexPair::new(
                    2,
                    vec![
                        cfg.points[p[0]].clone(),
                        cfg.points[p[1]].clone(),
                        cfg.points[p[2]].clone(),
                    ],
                    vec![
                        cfg.points[p[3]].clone(),
                        cfg.points[p[4]].clone(),
                        cfg.points[p[5]].clone(),
                    ],
                )
                .unwrap();
                let delta =
                    determinant(&[cfg.lift(p[0]), cfg.lift(p[1]), cfg.lift(p[2])]).unwrap();
                Ok(motivic_core::formal::BuiltTerm::unit(FormalTerm::Tensor(
                    vec![FormalTerm::Pair(pair), fstar(delta)],
                )))
            },
        )
        .unwrap();
        let mut ctx = RealizeCtx::new(field);
        let total = lhs.added(&rhs);
        let r = realize(
            &total,
            RealizationSignature::TensorScalarFStar { weight: 2 },
            &mut ctx,
        )
        .unwrap();
        println!("Lemma 3.3 residual: {:.3e}", r.residual());

        // f5(3) commuting square: delta3∘r3 = f5(3)∘d.
        let d = boundary_omit(&chain_config(cfg)).unwrap();
        let mut f5d = FormalSum::zero(sig::B2_FSTAR);
        for (term, coeff) in d.iter() {
            let FormalTerm::Config(sub) = term else { panic!() };
            f5d.add(&f5_3(sub).unwrap().scaled(coeff));
        }
        let sq = lhs2(&plane).added(&f5d.negated());
        let r = realize(
            &sq,
            RealizationSignature::TensorScalarFStar { weight: 2 },
            &mut ctx,
        )
        .unwrap();
        println!("f5(3) square residual: {:.3e}", r.residual());
    }

    // ----- Theorem 3.2: delta3∘a3 vs (a2∧a1)∘nu -----
    {
        let g = random_config(31, 3, 8, field, 7).unwrap();
        let p = &g.config.points;
        let pair = SimplexPair::new(3, p[..4].to_vec(), p[4..].to_vec()).unwrap();
        let lhs = delta3_symbol(&a3(&pair, A3Variant::Combined, R3Mode::Generic).unwrap()).unwrap();

        // (a2∧a1)(x₂⊗x₁ + y₁⊗y₂) = a2(x₂)⊗a1(x₁) − a2(y₂)⊗a1(y₁), via the
        // skew ν with F* factors already evaluated.
        let nu21 = nu(&pair, (2, 1), NuFormula::Skew).unwrap();
        let nu12 = nu(&pair, (1, 2), NuFormula::Skew).unwrap();
        let mut rhs_terms = FormalSum::zero(sig::B2_FSTAR);
        for (term, coeff) in nu21.iter() {
            let FormalTerm::Tensor(fs) = term else { panic!() };
            rhs_terms.add_term(coeff.clone(), FormalTerm::Tensor(vec![fs[0].clone(), fs[1].clone()]));
        }
        for (term, coeff) in nu12.iter() {
            let FormalTerm::Tensor(fs) = term else { panic!() };
            // y₁ ⊗ y₂ contributes −a₂(y₂)⊗a₁(y₁): swap and negate.
            rhs_terms.add_term(-coeff.clone(), FormalTerm::Tensor(vec![fs[1].clone(), fs[0].clone()]));
        }
        let mut ctx = RealizeCtx::new(field);
        let diff = lhs.added(&rhs_terms.negated());
        let r = realize(
            &diff,
            RealizationSignature::TensorScalarFStar { weight: 2 },
            &mut ctx,
        )
        .unwrap();
        println!("Theorem 3.2 residual: {:.3e}", r.residual());
    }

    // ----- Lemma 3.7': r3(limit) + 2 mu3 on collinear l-triple -----
    {
        let g = random_config(41, 2, 5, field, 9).unwrap();
        let p = &g.config.points;
        // l1, l2 random; l3 on their line.
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
        let (x, y) = motivic_core::maps::line_correspondence_raw(&pts).unwrap();
        let line = LineConfig33::new(x, y).unwrap();
        let mu = mu3(&line).unwrap();
        let mut ctx = RealizeCtx::new(field);
        let total = lhs.added(&mu.scaled(&rint(2)));
        let r = realize(&total, RealizationSignature::ScalarWeight3, &mut ctx).unwrap();
        println!("Lemma 3.7' residual: {:.3e}", r.residual());
    }

    // ----- dual seven-term -----
    {
        let g = random_config(51, 3, 7, field, 7).unwrap();
        let st = dual_seven_term(&g.config.points, R3Mode::Generic).unwrap();
        let mut ctx = RealizeCtx::new(field);
        let r = realize(&st, RealizationSignature::ScalarWeight3, &mut ctx).unwrap();
        println!("dual seven-term residual: {:.3e}", r.residual());
    }

    // ----- a2 antisymmetry + delta2∘a2 = (a1∧a1)∘nu11 -----
    {
        let g = random_config(61, 2, 6, field, 9).unwrap();
        let p = &g.config.points;
        let pair = SimplexPair::new(2, p[..3].to_vec(), p[3..].to_vec()).unwrap();
        let mut ctx = RealizeCtx::new(field);
        let anti = a2(&pair).unwrap().added(&a2(&pair.transpose()).unwrap());
        let r = realize(&anti, RealizationSignature::ScalarWeight2, &mut ctx).unwrap();
        println!("a2 antisymmetry residual: {:.3e}", r.residual());

        let lhs = motivic_core::formal::delta2(&a2(&pair).unwrap()).unwrap();
        let nu11 = nu(&pair, (1, 1), NuFormula::General).unwrap();
        let mut rhs = FormalSum::zero(sig::LAMBDA2_FSTAR);
        for (term, coeff) in nu11.iter() {
            let FormalTerm::Tensor(fs) = term else { panic!() };
            let a1 = |t: &FormalTerm| -> FieldScalar {
                let FormalTerm::Pair(q) = t else { panic!() };
                motivic_core::geom::cross_ratio(&q.l[0], &q.l[1], &q.m[0], &q.m[1]).unwrap()
            };
            rhs.add_term(
                coeff.clone(),
                FormalTerm::Wedge(vec![fstar(a1(&fs[0])), fstar(a1(&fs[1]))]),
            );
        }
        let diff = lhs.added(&rhs.negated());
        let r = realize(&diff, RealizationSignature::Lambda2FStar, &mut ctx).unwrap();
        println!(
            "delta2∘a2 vs (a1∧a1)∘nu11: residual {:.3e} (entries {})",
            r.residual(),
            r.entries.len()
        );
    }

    let _ = li(3, FieldScalar::one());
}

fn lhs2(plane: &PlaneConfig6) -> FormalSum {
    delta3_symbol(&r3(plane, R3Mode::Generic).unwrap()).unwrap()
}

fn sort_sign(v: &mut Vec<usize>) -> i8 {
    let mut s = 1i8;
    for i in 1..v.len() {
        let mut j = i;
        while j > 0 && v[j] < v[j - 1] {
            v.swap(j, j - 1);
            s = -s;
            j -= 1;
        }
    }
    s
}
