use gzlab::asym::stirling_modulus_ratio;
use gzlab::complex::PrecisionConfig;

/// |Γ(3/4 + iy)| against e^{-πy/2} y^{1/4} √(2π); the ratio behaves like 1 + O(1/y²).
fn main() {
    let cfg = PrecisionConfig::new(128);
    for y in [1.0, 10.0, 20.0, 40.0, 80.0, 100.0, 1e3, 1e6] {
        let r = stirling_modulus_ratio(y, &cfg).unwrap().to_f64();
        println!("y = {y:>9}: ratio = {r:.12}  (ratio - 1) y^2 = {:.6}", (r - 1.0) * y * y);
    }
}
