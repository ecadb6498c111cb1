use gzlab::asym::h_limits;
use gzlab::complex::{ComplexHP, PrecisionConfig};

fn main() {
    let cfg = PrecisionConfig::new(256);
    for x in [1e2, 1e4, 1e6, 1e8, 1e12] {
        let (h, g) = h_limits(&ComplexHP::from_f64(x, 0.0, 256), &cfg).unwrap();
        println!("z = {x:e}: H z log^2 z = {:.10}  f''/(f f') z log z = {:.10}", h.to_f64().0, g.to_f64().0);
    }
    // off the real axis
    let z = ComplexHP::from_f64(0.75, 1e6, 256);
    let (h, g) = h_limits(&z, &cfg).unwrap();
    println!("z = 3/4 + 1e6 i: {:?} {:?}", h.to_f64(), g.to_f64());
}
