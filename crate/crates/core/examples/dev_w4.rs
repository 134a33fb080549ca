//! Development scratch for the weight-4 residuals.

use std::collections::HashMap;
use std::time::Instant;

use motivic_core::formal::{
    delta4_symbol, fstar, li, rint, sig, tilde_delta, FormalSum, FormalTerm,
};
use motivic_core::geom::{random_config, Configuration, SimplexPair};
use motivic_core::maps::{a2, a3, boundary_omit, chain_config, nu, A3Variant, NuFormula, R3Mode};
use motivic_core::numeric::{realize, RealizationSignature, RealizeCtx};
use motivic_core::scalar::{FieldScalar, FieldTag};
use motivic_core::weight4::{bar_delta, delta_g4, f7_4, g_map, lambda2_b2_to_zp1, DetTable};

/// (a₃⊗id − id⊗a₃, Id) into B₃⊗F* ⊕ Λ²B₂, then δ into B₂⊗Λ²F*.
fn a_projected_delta_squared(config: &Configuration) -> FormalSum {
    let d = delta_g4(config).unwrap();
    let mut a3_cache: HashMap<SimplexPair, FormalSum> = HashMap::new();
    let mut a3_of = |p: &SimplexPair| -> FormalSum {
        a3_cache
            .entry(p.clone())
            .or_insert_with(|| a3(p, A3Variant::Combined, R3Mode::Generic).unwrap())
            .clone()
    };
    let mut b3f = FormalSum::zero(sig::B3_FSTAR);
    for (term, coeff) in d.d31.iter() {
        let FormalTerm::Tensor(fs) = term else { panic!() };
        let FormalTerm::Pair(p) = &fs[0] else { panic!() };
        let a = a3_of(p);
        for (t, c) in a.iter() {
            b3f.add_term(
                coeff.clone() * c,
                FormalTerm::Tensor(vec![t.clone(), fs[1].clone()]),
            );
        }
    }
    for (term, coeff) in d.d13.iter() {
        let FormalTerm::Tensor(fs) = term else { panic!() };
        let FormalTerm::Pair(p) = &fs[1] else { panic!() };
        let a = a3_of(p);
        for (t, c) in a.iter() {
            // −(id⊗a₃): transpose to B₃⊗F* with the displayed minus sign.
            b3f.add_term(
                -(coeff.clone() * c),
                FormalTerm::Tensor(vec![t.clone(), fs[0].clone()]),
            );
        }
    }
    let mut total = delta4_symbol(&b3f).unwrap();
    total.add(&delta4_symbol(&d.d22).unwrap());
    total
}

fn main() {
    let field = FieldTag::Gaussian;

    // ----- Prop 5.4: δ∘g = δ̃ -----
    {
        let x = FieldScalar::from_ratio(2, 7) * FieldScalar::gaussian_int(1, 1);
        let y = FieldScalar::from_ratio(-3, 5) * FieldScalar::gaussian_int(2, -1);
        let mut w = FormalSum::zero(sig::LAMBDA2_ZP1);
        w.add_term(
            rint(1),
            FormalTerm::Wedge(vec![li(1, x.clone()), li(1, y.clone())]),
        );
        let lhs = delta4_symbol(&g_map(&w).unwrap()).unwrap();
        let rhs = tilde_delta(&w).unwrap();
        let mut ctx = RealizeCtx::new(field);
        let diff = lhs.added(&rhs.negated());
        let r = realize(
            &diff,
            RealizationSignature::TensorScalarWedge2 { weight: 2 },
            &mut ctx,
        )
        .unwrap();
        println!("Prop 5.4 residual: {:.3e}", r.residual());

        // g antisymmetry under x<->y after realization.
        let mut wt = FormalSum::zero(sig::LAMBDA2_ZP1);
        wt.add_term(rint(1), FormalTerm::Wedge(vec![li(1, y), li(1, x)]));
        let anti = g_map(&w).unwrap().added(&g_map(&wt).unwrap());
        let r = realize(
            &anti,
            RealizationSignature::TensorScalarFStar { weight: 3 },
            &mut ctx,
        )
        .unwrap();
        println!("g antisymmetry residual: {:.3e}", r.residual());
    }

    // ----- Theorem 5.1 b: δ² = 0 -----
    {
        let t0 = Instant::now();
        let g = random_config(211, 3, 8, field, 7).unwrap();
        let total = a_projected_delta_squared(&g.config);
        let mut ctx = RealizeCtx::new(field);
        let r = realize(
            &total,
            RealizationSignature::TensorScalarWedge2 { weight: 2 },
            &mut ctx,
        )
        .unwrap();
        println!(
            "δ² residual: {:.3e}  ({} terms, {:?})",
            r.residual(),
            total.len(),
            t0.elapsed()
        );
    }

    // ----- §5.3: f₇(4)∘∂ matches the a-projected δ -----
    {
        let t0 = Instant::now();
        let g = random_config(223, 3, 8, field, 7).unwrap();
        let config = &g.config;
        let boundary = boundary_omit(&chain_config(config)).unwrap();
        let mut via_f7_b3 = FormalSum::zero(sig::B3_FSTAR);
        let mut via_f7_l2 = FormalSum::zero(sig::LAMBDA2_B2);
        for (term, coeff) in boundary.iter() {
            let FormalTerm::Config(sub) = term else { panic!() };
            let f = f7_4(sub).unwrap();
            via_f7_b3.add(&f.b3_fstar.scaled(coeff));
            via_f7_l2.add(&f.lambda2.scaled(coeff));
        }

        let d = delta_g4(config).unwrap();
        let mut a3_cache: HashMap<SimplexPair, FormalSum> = HashMap::new();
        let mut a3_of = |p: &SimplexPair| -> FormalSum {
            a3_cache
                .entry(p.clone())
                .or_insert_with(|| a3(p, A3Variant::Combined, R3Mode::Generic).unwrap())
                .clone()
        };
        let mut delta_b3 = FormalSum::zero(sig::B3_FSTAR);
        for (term, coeff) in d.d31.iter() {
            let FormalTerm::Tensor(fs) = term else { panic!() };
            let FormalTerm::Pair(p) = &fs[0] else { panic!() };
            for (t, c) in a3_of(p).iter() {
                delta_b3.add_term(
                    coeff.clone() * c,
                    FormalTerm::Tensor(vec![t.clone(), fs[1].clone()]),
                );
            }
        }
        for (term, coeff) in d.d13.iter() {
            let FormalTerm::Tensor(fs) = term else { panic!() };
            let FormalTerm::Pair(p) = &fs[1] else { panic!() };
            for (t, c) in a3_of(p).iter() {
                delta_b3.add_term(
                    -(coeff.clone() * c),
                    FormalTerm::Tensor(vec![t.clone(), fs[0].clone()]),
                );
            }
        }
        let mut ctx = RealizeCtx::new(field);
        let diff_b3 = via_f7_b3.added(&delta_b3.negated());
        let r_b3 = realize(
            &diff_b3,
            RealizationSignature::TensorScalarFStar { weight: 3 },
            &mut ctx,
        )
        .unwrap();
        let diff_l2 = via_f7_l2.added(&d.d22.clone().negated());
        let r_l2 = realize(&diff_l2, RealizationSignature::Lambda2Weight2Probe, &mut ctx)
            .unwrap();
        println!(
            "f7(4)∘∂ vs δ: B₃⊗F* {:.3e}, Λ²B₂ {:.3e}  ({:?})",
            r_b3.residual(),
            r_l2.residual(),
            t0.elapsed()
        );
    }

    // ----- Lemmas 5.9, 5.10, 5.11 -----
    {
        let g = random_config(227, 3, 8, field, 7).unwrap();
        let config = &g.config;
        let d = delta_g4(config).unwrap();
        let mut ctx = RealizeCtx::new(field);

        // 5.9: p∘(ν₁,₂ ⊗ id)∘δ₃,₁ with p: x₁⊗y₂⊗z₁ ↦ −a₂(y₂) ⊗ x₁∧z₁.
        let mut l59 = FormalSum::zero(sig::B2_LAMBDA2_FSTAR);
        for (term, coeff) in d.d31.iter() {
            let FormalTerm::Tensor(fs) = term else { panic!() };
            let FormalTerm::Pair(p) = &fs[0] else { panic!() };
            let nu12 = nu(p, (1, 2), NuFormula::Skew).unwrap();
            for (t, c) in nu12.iter() {
                let FormalTerm::Tensor(nf) = t else { panic!() };
                // nf[0] = Δ (F*), nf[1] = pair of P².
                l59.add_term(
                    -(coeff.clone() * c),
                    FormalTerm::Tensor(vec![
                        nf[1].clone(),
                        FormalTerm::Wedge(vec![nf[0].clone(), fs[1].clone()]),
                    ]),
                );
            }
        }
        let r = realize(
            &l59,
            RealizationSignature::TensorScalarWedge2 { weight: 2 },
            &mut ctx,
        )
        .unwrap();
        println!("Lemma 5.9 residual: {:.3e}", r.residual());

        // 5.10: (ν₂,₁ ⊗ id)∘δ₃,₁ into B₂⊗Λ²F* equals
        // −144·Alt₈((3,4|1,2,6,7)₂ ⊗ (1,2,3,4)∧(1,2,3,5)).
        let mut l510 = FormalSum::zero(sig::B2_LAMBDA2_FSTAR);
        for (term, coeff) in d.d31.iter() {
            let FormalTerm::Tensor(fs) = term else { panic!() };
            let FormalTerm::Pair(p) = &fs[0] else { panic!() };
            let nu21 = nu(p, (2, 1), NuFormula::Skew).unwrap();
            for (t, c) in nu21.iter() {
                let FormalTerm::Tensor(nf) = t else { panic!() };
                // nf[0] = pair of P², nf[1] = Δ.
                l510.add_term(
                    coeff.clone() * c,
                    FormalTerm::Tensor(vec![
                        nf[0].clone(),
                        FormalTerm::Wedge(vec![nf[1].clone(), fs[1].clone()]),
                    ]),
                );
            }
        }
        let table = DetTable::new(config).unwrap();
        let rhs510 = motivic_core::formal::alt_keyed(
            8,
            sig::B2_LAMBDA2_FSTAR,
            rint(-144),
            |p| {
                let k = motivic_core::weight4::wedge_symbol_key(p[2], p[3], [p[0], p[1], p[5], p[6]]);
                let mut s1 = [p[0], p[1], p[2], p[3]];
                let mut s2 = [p[0], p[1], p[2], p[4]];
                s1.sort();
                s2.sort();
                if s1 == s2 {
                    return None;
                }
                let (w1, w2, ws) = if s1 <= s2 { (s1, s2, 1i8) } else { (s2, s1, -1) };
                Some(((k, w1, w2), ws))
            },
            |p| {
                let sym = table.proj_cross_ratio(p[2], p[3], [p[0], p[1], p[5], p[6]])?;
                let d1 = table.det([p[0], p[1], p[2], p[3]]);
                let d2 = table.det([p[0], p[1], p[2], p[4]]);
                Ok(motivic_core::formal::BuiltTerm::unit(FormalTerm::Tensor(
                    vec![
                        li(2, sym),
                        FormalTerm::Wedge(vec![fstar(d1), fstar(d2)]),
                    ],
                )))
            },
        )
        .unwrap();
        let diff = l510.clone().added(&rhs510.negated());
        let r = realize(
            &diff,
            RealizationSignature::TensorScalarWedge2 { weight: 2 },
            &mut ctx,
        )
        .unwrap();
        println!("Lemma 5.10 residual: {:.3e}", r.residual());

        // 5.11: δ of the bare Alt₈ wedge equals 7·Alt₈(same tensor shape).
        let bare = motivic_core::weight4::bare_alt8_wedge(config).unwrap();
        let lhs = delta4_symbol(&bare).unwrap();
        let rhs = rhs510.scaled(&motivic_core::formal::rat(-7, 144));
        let diff = lhs.added(&rhs.negated());
        let r = realize(
            &diff,
            RealizationSignature::TensorScalarWedge2 { weight: 2 },
            &mut ctx,
        )
        .unwrap();
        println!("Lemma 5.11 residual: {:.3e}", r.residual());
    }

    // ----- δ̄ lift independence + composition to B₂⊗Λ²F* -----
    {
        let g = random_config(229, 3, 8, field, 5).unwrap();
        let config = &g.config;
        let bd = bar_delta(config).unwrap();

        // Rescale two lifts.
        let mut lifts = config.lifts_all();
        for (k, f) in [(0usize, 3i64), (5usize, -2i64)] {
            for c in lifts[k].iter_mut() {
                *c = c.clone() * FieldScalar::from_integer(f);
            }
        }
        let other = Configuration::new(3, config.field, config.points.clone())
            .unwrap()
            .with_lifts(lifts)
            .unwrap();
        let bd2 = bar_delta(&other).unwrap();
        println!(
            "bar_delta lift-independence: {} (terms {} vs {})",
            bd == bd2,
            bd.len(),
            bd2.len()
        );

        let comp = delta4_symbol(&bd).unwrap();
        let mut ctx = RealizeCtx::new(field);
        let r = realize(
            &comp,
            RealizationSignature::TensorScalarWedge2 { weight: 2 },
            &mut ctx,
        )
        .unwrap();
        println!("δ̄ composition residual: {:.3e}", r.residual());
    }

    let _ = a2;
}
