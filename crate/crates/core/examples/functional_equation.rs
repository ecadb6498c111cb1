use gzlab::complex::{ComplexHP, PrecisionConfig};
use gzlab::specfun::functional_eq_residual;

fn main() {
    for bits in [128, 256] {
        let cfg = PrecisionConfig::new(bits);
        let worst = (0..20)
            .map(|i| 1.0 + 39.0 * i as f64 / 19.0)
            .map(|y| functional_eq_residual(&ComplexHP::from_f64(0.75, y, bits), &cfg).unwrap())
            .map(|r| r.to_f64())
            .fold(0.0, f64::max);
        println!("{bits} bits: max residual on 3/4 + iy, y in [1, 40]: {worst:.3e}");
    }
}
