use motivic_core::formal::rint;
use motivic_core::maps::relations::{cbc_config, cbc_tilde};
use motivic_core::maps::{mu3_limit, r3, R3Mode};
use motivic_core::numeric::{realize, RealizationSignature, RealizeCtx};
use motivic_core::scalar::{FieldScalar, FieldTag};

fn main() {
    let b = FieldScalar::from_integer(3);
    let c = FieldScalar::from_integer(5);
    let plane = cbc_config(&b, &c).unwrap();
    let r = r3(&plane, R3Mode::Limit).unwrap();
    let (x, y) = cbc_tilde(&b, &c).unwrap();
    let mu = mu3_limit(&x, &y).unwrap();
    let mut ctx = RealizeCtx::new(FieldTag::Rational);
    for s in [2i64, -2] {
        let total = r.clone().added(&mu.clone().scaled(&rint(s)));
        let res = realize(&total, RealizationSignature::ScalarWeight3, &mut ctx).unwrap();
        println!("r3(C) + {s} mu3(C~): residual {:.3e}", res.residual());
    }
    // Magnitudes for orientation.
    let rr = realize(&r, RealizationSignature::ScalarWeight3, &mut ctx).unwrap();
    let mm = realize(&mu, RealizationSignature::ScalarWeight3, &mut ctx).unwrap();
    println!("P3(r3) = {:.6}, P3(mu3) = {:.6}", rr.max_entry(), mm.max_entry());
    for (k, v) in rr.entries.iter() { println!("r3 value {:?} {v:.8}", k); }
    for (k, v) in mm.entries.iter() { println!("mu value {:?} {v:.8}", k); }
}
