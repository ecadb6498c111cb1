use gzlab::cli::polyspec::parse_polyspec;
use gzlab::complex::PrecisionConfig;
use gzlab::decomp::{falsify, VarSpec};

fn main() {
    let cfg = PrecisionConfig::new(128);
    let spec = VarSpec::new(1, 1, 2).unwrap();
    let ys: Vec<f64> = (1..=10).map(|k| 10.0 * k as f64).collect();
    for text in ["vn", "u0*v0*vl - u0*vn^2", "u1*vn^2 + (2-i)*u0^2*v0*vl"] {
        let p = parse_polyspec(text, &spec, 128).unwrap();
        let report = falsify(&p, &ys, &cfg, 0).unwrap();
        println!("P = {text}");
        println!("    (p0, q0, t0) = ({}, {}, {}), verdict {:?}", report.p0, report.q0, report.t0, report.verdict);
        for s in report.samples.iter().step_by(3) {
            println!("    y = {:>5}: ratio {:.6}", s.y, s.ratio.to_f64());
        }
    }
}
