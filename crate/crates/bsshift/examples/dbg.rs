use bsshift::engine::*;
use bsshift::ratio::rat;
use bsshift::singularity::*;
use std::time::Instant;

fn main() {
    for (name, s) in [
        ("bp:9,7", SingularityClass::bp(&[9, 7], Normalization::Reciprocal).unwrap()),
        ("bp:7,5,3", SingularityClass::bp(&[7, 5, 3], Normalization::Reciprocal).unwrap()),
    ] {
        let t0 = Instant::now();
        let prep = prepare(&s, &shift_config(&s)).unwrap();
        let t_prep = t0.elapsed();
        let u: Vec<_> = (0..s.deformation_monomials().len())
            .map(|i| rat(i as i64 % 5 - 2, 3))
            .collect();
        let t0 = Instant::now();
        for _ in 0..10 {
            prep.shift_vector_at(&u).unwrap();
        }
        let t_pt = t0.elapsed() / 10;
        println!("{name}: prep {:?}, point {:?}", t_prep, t_pt);
    }
}
