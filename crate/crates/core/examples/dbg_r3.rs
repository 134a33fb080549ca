use motivic_core::maps::{r3, PlaneConfig6, R3Mode};
use motivic_core::geom::random_config;
use motivic_core::scalar::FieldTag;

fn main() {
    let g = random_config(17, 2, 6, FieldTag::Rational, 19).unwrap();
    let c = PlaneConfig6::new(g.config.points.clone()).unwrap();
    let s = r3(&c, R3Mode::Generic).unwrap();
    println!("terms: {}", s.len());
    let mut counts = std::collections::BTreeMap::new();
    for (_, coeff) in s.iter() {
        *counts.entry(coeff.to_string()).or_insert(0) += 1;
    }
    println!("{:?}", counts);
}
