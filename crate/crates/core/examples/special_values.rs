use gzlab::complex::{ComplexHP, PrecisionConfig};
use gzlab::specfun::{digamma_jet, gamma, log_gamma, zeta, zeta_jet};

fn main() {
    let cfg = PrecisionConfig::new(192);
    let at = |re: f64, im: f64| ComplexHP::from_f64(re, im, 192);

    println!("ζ(2)      = {}", zeta(&at(2.0, 0.0), &cfg).unwrap());
    println!("ζ(-1)     = {}", zeta(&at(-1.0, 0.0), &cfg).unwrap());
    println!("Γ(1/2)    = {}", gamma(&at(0.5, 0.0), &cfg).unwrap());
    println!("ψ(1)      = {}", digamma_jet(&at(1.0, 0.0), 0, &cfg).unwrap()[0]);

    let s = at(0.75, 14.0);
    for (k, v) in zeta_jet(&s, 3, &cfg).unwrap().iter().enumerate() {
        println!("ζ^({k})({s}) = {v}");
    }
    println!("log Γ({s}) = {}", log_gamma(&s, &cfg).unwrap());

    match zeta(&at(1.0, 0.0), &cfg) {
        Ok(v) => println!("ζ(1) = {v}?"),
        Err(e) => println!("ζ(1): {e}"),
    }
}
