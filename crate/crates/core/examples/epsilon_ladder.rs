use gzlab::asym::verify_epsilon;
use gzlab::complex::{ComplexHP, PrecisionConfig};

fn main() {
    let cfg = PrecisionConfig::new(256);
    let zs: Vec<_> = [1e4, 1e6, 1e8]
        .iter()
        .map(|&x| ComplexHP::from_f64(x, 0.0, 256))
        .collect();
    for n in 1..=8 {
        let report = verify_epsilon(n, &zs, &cfg).expect("admissible points");
        let ratios: Vec<String> = report
            .ratios
            .iter()
            .map(|r| format!("{:.6}", r.to_f64().0))
            .collect();
        println!("n = {n}: ratios {} converging = {}", ratios.join(", "), report.converging);
    }
}
