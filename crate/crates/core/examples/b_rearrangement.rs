use gzlab::cli::polyspec::parse_polyspec;
use gzlab::complex::ComplexHP;
use gzlab::decomp::{b_hat, first_nonzero_b_at, homogeneous_parts, max_j, max_q, VarSpec};

fn main() {
    let spec = VarSpec::new(1, 1, 2).unwrap();
    // the t = 0 row cancels in the degree-2 part
    let p = parse_polyspec("u0*v0*vl - u0*vn^2 + 3*u1*vn", &spec, 128).unwrap();
    let u = [ComplexHP::from_f64(0.5, -1.0, 128), ComplexHP::from_f64(2.0, 0.25, 128)];
    for (deg, part) in homogeneous_parts(&p) {
        println!("|λ| = {deg}: {part}");
        for t in 0..=max_j(&part) {
            for q in (0..=max_q(&part)).rev() {
                let b = b_hat(&part, q, t, &u);
                if !b.is_zero() {
                    println!("    b_({q},{t}) = {b}");
                }
            }
        }
        println!("    first nonzero: {:?}", first_nonzero_b_at(&part, &u));
    }
}
