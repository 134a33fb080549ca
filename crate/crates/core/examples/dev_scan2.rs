use motivic_core::geom::random_config;
use motivic_core::maps::{mu3, LineConfig33};
use motivic_core::scalar::FieldTag;

fn main() {
    let g = random_config(101, 1, 6, FieldTag::Rational, 9).unwrap();
    let p = g.config.points;
    let x = [p[0].clone(), p[1].clone(), p[2].clone()];
    let y = [p[3].clone(), p[4].clone(), p[5].clone()];
    let base = mu3(&LineConfig33::new(x.clone(), y.clone()).unwrap()).unwrap();
    let rot = mu3(
        &LineConfig33::new(x.clone(), [y[1].clone(), y[2].clone(), y[0].clone()]).unwrap(),
    )
    .unwrap();
    println!("even y-rotation equal: {}", base == rot);
    let odd = mu3(
        &LineConfig33::new(x, [y[1].clone(), y[0].clone(), y[2].clone()]).unwrap(),
    )
    .unwrap();
    println!("odd y-swap negates: {}", base == odd.clone().negated());
}
